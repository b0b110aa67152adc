#pragma once

// Instance files and JSON reports for the command-line tool. Everything the
// reports contain is computed deterministically from the instance and the
// parameters; timings only go to the human summary.

#include <recip/genfun.hpp>

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace recip::cli {

using json = nlohmann::json;

enum ExitCode : int { kAllVerified = 0, kRefuted = 1, kInputError = 2 };

struct Parameters {
  std::int64_t n_max = 4;
  int trials = 16;
  std::uint64_t seed = 0;
  std::int64_t box = 3;
};

struct Overrides {
  std::optional<std::int64_t> n_max;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> box;
};

struct Instance {
  std::string name;
  std::size_t ambient_dim = 0;
  std::optional<Polytope> polytope;
  std::optional<Cone> cone;
  // Subcomplex Δ: for a polytope a subcomplex of B(P) over face_universe(P);
  // for a cone a subcomplex of B(C) in the cross-section encoding.
  PolyhedralComplex delta;
  std::optional<RatVector> light_source;
  std::vector<std::string> checks;
  Parameters params;
};

// ---------------------------------------------------------------------------
// Parsing

inline void reject_floats(const json& j, const std::string& where = "$") {
  if (j.is_number_float()) throw InputError("non-integer number at " + where + "; write rationals as \"p/q\" strings");
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) reject_floats(j[i], where + "[" + std::to_string(i) + "]");
  if (j.is_object())
    for (const auto& [k, v] : j.items()) reject_floats(v, where + "." + k);
}

namespace detail {

inline std::int64_t as_int(const json& j, const std::string& what) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    Rational q = parse_rational(j.get<std::string>());
    if (q.get_den() != 1) throw InputError(what + " must be an integer");
    return to_int64(q.get_num());
  }
  throw InputError(what + " must be an integer");
}

inline Rational as_rational(const json& j, const std::string& what) {
  if (j.is_number_integer()) return to_rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw InputError(what + " must be an integer or a \"p/q\" string");
}

inline IntVector as_int_vector(const json& j, std::size_t dim, const std::string& what) {
  if (!j.is_array() || j.size() != dim) throw InputError(what + " must be an array of length " + std::to_string(dim));
  IntVector v;
  for (const auto& x : j) v.push_back(as_int(x, what));
  return v;
}

inline std::vector<IntVector> as_points(const json& j, std::size_t dim, const std::string& what) {
  if (!j.is_array() || j.empty()) throw InputError(what + " must be a nonempty array");
  std::vector<IntVector> out;
  for (const auto& p : j) out.push_back(as_int_vector(p, dim, what));
  return out;
}

inline const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

/// Facet given by index, or by {"normal": [...], "offset": b} matched against
/// the canonical primitive inequality.
inline std::size_t resolve_facet(const json& f, const std::vector<Halfspace>& facets, std::size_t dim,
                                 bool with_offset) {
  if (f.is_number_integer()) {
    auto i = f.get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= facets.size())
      throw InputError("facet index " + std::to_string(i) + " out of range");
    return static_cast<std::size_t>(i);
  }
  if (!f.is_object()) throw InputError("facet must be an index or a {normal, offset} object");
  IntVector n = as_int_vector(require(f, "normal"), dim, "facet normal");
  std::int64_t b = with_offset ? as_int(require(f, "offset"), "facet offset") : 0;
  Integer g = gcd_of(n);
  if (g == 0) throw InputError("facet normal is zero");
  if (with_offset && b % to_int64(g) != 0) throw InputError("facet inequality is not a facet of the polytope");
  IntVector p = primitive(n);
  std::int64_t pb = with_offset ? b / to_int64(g) : 0;
  for (std::size_t i = 0; i < facets.size(); ++i)
    if (facets[i].normal == p && (!with_offset || facets[i].offset == pb)) return i;
  throw InputError("facet inequality is not a facet of the polytope");
}

inline IndexSet resolve_facets(const json& spec, const std::vector<Halfspace>& facets, std::size_t dim,
                               bool with_offset) {
  IndexSet out = 0;
  const json& list = spec.at("facets");
  if (!list.is_array()) throw InputError("\"facets\" must be an array");
  for (const auto& f : list) out |= bit(resolve_facet(f, facets, dim, with_offset));
  if (spec.contains("complement")) {
    if (!spec.at("complement").is_boolean()) throw InputError("\"complement\" must be true or false");
    if (spec.at("complement").get<bool>()) out = all_bits(facets.size()) & ~out;
  }
  return out;
}

inline void parse_polytope_subcomplex(const json& spec, Instance& in) {
  const Polytope& P = *in.polytope;
  auto u = face_universe(P);
  in.delta = PolyhedralComplex::void_complex(u);
  if (spec.is_null()) return;
  if (!spec.is_object()) throw InputError("\"subcomplex\" must be an object");
  int kinds = spec.contains("facets") + spec.contains("light_source") + spec.contains("faces");
  if (kinds != 1) throw InputError("subcomplex needs exactly one of \"facets\", \"light_source\", \"faces\"");
  if (spec.contains("facets")) {
    in.delta = facet_subcomplex(P, resolve_facets(spec, P.facets(), in.ambient_dim, true), u);
  } else if (spec.contains("light_source")) {
    const json& q = spec.at("light_source");
    if (!q.is_array() || q.size() != in.ambient_dim) throw InputError("light_source has the wrong dimension");
    RatVector p;
    for (const auto& x : q) p.push_back(as_rational(x, "light_source coordinate"));
    in.light_source = p;
    in.delta = facet_subcomplex(P, bright_side(P, p), u);
  } else {
    std::vector<IndexSet> gens;
    for (const auto& face : spec.at("faces")) {
      IndexSet mask = 0;
      for (const auto& v : as_points(face, in.ambient_dim, "face vertex")) {
        auto it = std::find(P.vertices().begin(), P.vertices().end(), v);
        if (it == P.vertices().end()) throw InputError("face vertex is not a vertex of the polytope");
        mask |= bit(static_cast<std::size_t>(it - P.vertices().begin()));
      }
      if (!u->find(mask)) throw InputError("listed vertices do not span a face of the polytope");
      if (mask == all_bits(P.vertices().size())) throw InputError("subcomplex faces must be proper faces");
      gens.push_back(mask);
    }
    if (!gens.empty()) in.delta = PolyhedralComplex::closure(u, gens);
  }
}

inline void parse_cone_subcomplex(const json& spec, const std::vector<IntVector>& input_gens, Instance& in) {
  const Cone& C = *in.cone;
  auto u = cone_face_universe(C);
  in.delta = PolyhedralComplex::void_complex(u);
  if (spec.is_null()) return;
  if (!spec.is_object()) throw InputError("\"subcomplex\" must be an object");
  int kinds = spec.contains("facets") + spec.contains("faces");
  if (kinds != 1) throw InputError("cone subcomplex needs exactly one of \"facets\", \"faces\"");
  if (spec.contains("facets")) {
    in.delta = cone_facet_subcomplex(C, resolve_facets(spec, C.facets(), in.ambient_dim, false));
    return;
  }
  // faces: lists of generator indices (input order); [] is the apex
  std::vector<IndexSet> gens;
  bool apex_only = false;
  for (const auto& face : spec.at("faces")) {
    if (!face.is_array()) throw InputError("cone face must be an array of generator indices");
    IndexSet mask = 0;
    for (const auto& g : face) {
      auto i = as_int(g, "generator index");
      if (i < 0 || static_cast<std::size_t>(i) >= input_gens.size()) throw InputError("generator index out of range");
      auto p = primitive(input_gens[static_cast<std::size_t>(i)]);
      auto it = std::find(C.generators().begin(), C.generators().end(), p);
      if (it == C.generators().end()) throw InputError("generator is not an extreme ray");
      mask |= bit(static_cast<std::size_t>(it - C.generators().begin()));
    }
    if (mask == 0) {
      apex_only = true;
      continue;
    }
    const CellFace* cell = u->find(mask);
    if (!cell) throw InputError("listed generators do not span a face of the cone");
    if (cell->dim + 1 >= C.dim()) throw InputError("subcomplex faces must be proper faces of the cone");
    gens.push_back(mask);
  }
  if (!gens.empty()) in.delta = PolyhedralComplex::closure(u, gens);
  else if (apex_only) in.delta = PolyhedralComplex(u, {}, true);
}

}  // namespace detail

inline Instance parse_instance(const json& j, const Overrides& over = {}) {
  reject_floats(j);
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  Instance in;
  in.name = j.contains("name") && j.at("name").is_string() ? j.at("name").get<std::string>() : "unnamed";
  auto dim = detail::as_int(detail::require(j, "ambient_dim"), "ambient_dim");
  if (dim < 1 || dim > 8) throw InputError("ambient_dim must be between 1 and 8");
  in.ambient_dim = static_cast<std::size_t>(dim);

  if (j.contains("polytope") == j.contains("cone")) throw InputError("instance needs exactly one of \"polytope\", \"cone\"");
  const json subspec = j.contains("subcomplex") ? j.at("subcomplex") : json();
  if (j.contains("polytope")) {
    auto pts = detail::as_points(detail::require(j.at("polytope"), "vertices"), in.ambient_dim, "vertex");
    in.polytope = hull_facets(pts);
    detail::parse_polytope_subcomplex(subspec, in);
  } else {
    const json& c = j.at("cone");
    auto gens = detail::as_points(detail::require(c, "generators"), in.ambient_dim, "generator");
    IntVector apex(in.ambient_dim, 0);
    if (c.contains("apex")) apex = detail::as_int_vector(c.at("apex"), in.ambient_dim, "apex");
    in.cone = Cone::from_generators(gens, apex);
    detail::parse_cone_subcomplex(subspec, gens, in);
  }

  if (j.contains("checks")) {
    if (!j.at("checks").is_array()) throw InputError("\"checks\" must be an array of strings");
    for (const auto& c : j.at("checks")) {
      if (!c.is_string()) throw InputError("\"checks\" must be an array of strings");
      in.checks.push_back(c.get<std::string>());
    }
  } else {
    in.checks = in.polytope ? std::vector<std::string>{"cm", "reciprocity"} : std::vector<std::string>{"cm", "mr1"};
  }

  if (j.contains("parameters")) {
    const json& p = j.at("parameters");
    if (!p.is_object()) throw InputError("\"parameters\" must be an object");
    for (const auto& [k, v] : p.items()) {
      if (k == "n_max") in.params.n_max = detail::as_int(v, k);
      else if (k == "trials") in.params.trials = static_cast<int>(detail::as_int(v, k));
      else if (k == "seed") in.params.seed = static_cast<std::uint64_t>(detail::as_int(v, k));
      else if (k == "box") in.params.box = detail::as_int(v, k);
      else throw InputError("unknown parameter \"" + k + "\"");
    }
  }
  if (over.n_max) in.params.n_max = *over.n_max;
  if (over.trials) in.params.trials = *over.trials;
  if (over.seed) in.params.seed = *over.seed;
  if (over.box) in.params.box = *over.box;
  if (in.params.n_max < 1 || in.params.n_max > 64) throw InputError("n_max must be between 1 and 64");
  if (in.params.trials < 1) throw InputError("trials must be positive");
  if (in.params.box < 0 || in.params.box > 50) throw InputError("box must be between 0 and 50");
  return in;
}

inline Instance parse_instance_text(const std::string& text, const Overrides& over = {}) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_instance(j, over);
}

// ---------------------------------------------------------------------------
// Report pieces

namespace detail {

inline json exact(const Integer& z) { return z.get_str(); }
inline json exact(const Rational& q) { return to_string(q); }

inline json point_json(const RatVector& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(exact(x));
  return a;
}

inline json mask_json(IndexSet s) {
  json a = json::array();
  for (auto i : indices_of(s)) a.push_back(i);
  return a;
}

inline json face_json(const PolyhedralComplex& K, const CellFace& f) {
  json verts = json::array();
  if (K.universe())
    for (auto i : indices_of(f.vertices)) verts.push_back(K.universe()->vertex_coords[i]);
  return {{"dim", f.dim}, {"vertices", verts}};
}

inline json homology_json(const HomologyProfile& h) {
  json a = json::array();
  for (int i = -1; i <= h.top_degree(); ++i)
    a.push_back({{"degree", i}, {"group", h.degree(i).to_string()}, {"rank", h.degree(i).free_rank}});
  return a;
}

inline json cm_json(const PolyhedralComplex& K, const CMStatus& s) {
  json j = {{"status", to_string(s.value)}};
  if (s.witness) {
    json w = {{"degree", s.witness->degree}, {"group", s.witness->group.to_string()}, {"reason", s.witness->reason}};
    if (s.witness->face) w["face"] = face_json(K, *s.witness->face);
    j["witness"] = w;
  }
  return j;
}

inline json equality_json(const EqualityVerdict& v) {
  json j = {{"result", v.equal ? "EQUAL" : "NOT_EQUAL"}, {"trials", v.trials}};
  if (v.witness) j["witness"] = {{"point", point_json(*v.witness)}, {"lhs", exact(v.lhs)}, {"rhs", exact(v.rhs)}};
  return j;
}

inline json laurent_json(const LaurentPolynomial& p) {
  json a = json::array();
  for (const auto& [e, c] : p.terms()) a.push_back({{"exponent", e}, {"coefficient", exact(c)}});
  return a;
}

inline json polynomial_json(const EhrhartPolynomial& E) {
  json c = json::array();
  for (const auto& q : E.coefficients) c.push_back(exact(q));
  return {{"coefficients", c}, {"text", E.to_string()}};
}

inline json delta_json(const Instance& in) {
  json j = {{"void", in.delta.is_void()}, {"dim", in.delta.dim()}, {"faces", in.delta.size()}};
  if (in.polytope && !in.delta.is_void()) {
    try {
      j["facets"] = mask_json(facet_set_of(*in.polytope, in.delta));
    } catch (const InputError&) {
    }
  }
  return j;
}

inline IndexSet require_facet_set(const Instance& in) {
  return facet_set_of(*in.polytope, in.delta);
}

/// Δ for a polytope instance transported to the homogenization C(P): vertex i
/// of P is ray i of C(P), so vertex sets carry over unchanged.
inline PolyhedralComplex homogenized_delta(const Instance& in, const Cone& C) {
  auto u = cone_face_universe(C);
  if (in.delta.is_void()) return PolyhedralComplex::void_complex(u);
  return PolyhedralComplex(u, in.delta.faces(), true);
}

inline IndexSet homogenized_facets(const Polytope& P, const Cone& C, IndexSet facets) {
  IndexSet out = 0;
  for (auto i : indices_of(facets))
    for (std::size_t j = 0; j < C.facets().size(); ++j)
      if (C.facet_rays(j) == P.facet_vertices(i)) out |= bit(j);
  return out;
}

}  // namespace detail

inline json reciprocity_json(const ReciprocityReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"n", row.n},
                    {"signed_value_at_minus_n", detail::exact(row.reciprocal)},
                    {"count_minus_P_minus_D", detail::exact(row.dual_count)},
                    {"count_P_minus_D", detail::exact(row.symmetric_count)},
                    {"w_recomposition", detail::exact(row.w_sum)},
                    {"holds", row.holds}});
  json j = {{"verdict", r.verified ? "VERIFIED" : "REFUTED"},
            {"dim", r.dim},
            {"removed_facets", detail::mask_json(r.removed)},
            {"complement_facets", detail::mask_json(r.complement)},
            {"polynomial", detail::polynomial_json(r.polynomial)},
            {"dual_polynomial", detail::polynomial_json(r.dual_polynomial)},
            {"rows", rows},
            {"n0",
             {{"signed_value_at_0", detail::exact(r.signed_e0)},
              {"reduced_euler_K", r.chi_k},
              {"reduced_euler_B", r.chi_b},
              {"dual_value_at_0", detail::exact(r.dual_e0)},
              {"euler_form_holds", r.n0_literal_holds},
              {"euler_form_asserted", r.removed != 0},
              {"dual_form_holds", r.n0_dual_holds}}},
            {"w_recomposition_holds", r.w_recomposition_holds},
            {"w_indicator_holds", r.w_indicator_holds}};
  if (r.first_failure) j["first_failure_n"] = *r.first_failure;
  return j;
}

struct CheckResult {
  std::string name;
  std::string verdict;
  json detail;
  bool failed() const { return verdict == "REFUTED" || verdict == "NOT_EQUAL" || verdict == "FAIL"; }
};

inline CheckResult run_one(const Instance& in, const std::string& check) {
  const auto& prm = in.params;
  CheckResult out{check, "PASS", json::object()};
  auto need_polytope = [&] {
    if (!in.polytope) throw InputError("check \"" + check + "\" needs a polytope instance");
    return *in.polytope;
  };
  auto cone_of_instance = [&] { return in.cone ? *in.cone : homogenize(*in.polytope); };

  if (check == "cm") {
    out.detail = detail::cm_json(in.delta, cm_status(in.delta));
  } else if (check == "homology") {
    json j = {{"reduced_euler_characteristic", reduced_euler_char(in.delta)},
              {"homology", detail::homology_json(reduced_homology(in.delta))}};
    if (!in.delta.empty()) {
      auto m = homology_manifold_status(in.delta);
      j["manifold"] = to_string(m.status);
      PolyhedralComplex K = in.polytope ? boundary_complex(*in.polytope) : cone_boundary_complex(*in.cone);
      auto cls = classify_faces(K, in.delta);
      j["interior_faces"] = cls.interior.size();
      j["boundary_faces"] = cls.boundary.size();
      j["boundary_homology"] = detail::homology_json(reduced_homology(cls.boundary_complex));
    }
    out.detail = j;
  } else if (check == "reciprocity") {
    auto r = verify_reciprocity(need_polytope(), detail::require_facet_set(in), prm.n_max);
    out.detail = reciprocity_json(r);
    out.detail["cm"] = detail::cm_json(in.delta, r.cm);
    out.verdict = r.verified ? "VERIFIED" : "REFUTED";
  } else if (check == "ehrhart") {
    const Polytope& P = need_polytope();
    auto E = ehrhart_polynomial(P, detail::require_facet_set(in));
    json rows = json::array();
    const Rational sign = to_rational(sign_power(P.dim()));
    for (std::int64_t n = 0; n <= prm.n_max; ++n)
      rows.push_back({{"n", n},
                      {"value", detail::exact(E(to_rational(n)))},
                      {"signed_value_at_minus_n", detail::exact(sign * E(to_rational(-n)))}});
    out.detail = {{"polynomial", detail::polynomial_json(E)}, {"table", rows}};
  } else if (check == "mr1") {
    Cone C = cone_of_instance();
    IndexSet facets = in.cone ? facet_set_of_cone(C, in.delta)
                              : detail::homogenized_facets(*in.polytope, C, detail::require_facet_set(in));
    auto r = verify_mr1(C, facets, prm.trials, prm.seed);
    out.detail = {{"delta_facets", detail::mask_json(r.delta)},
                  {"dual_facets", detail::mask_json(r.dual)},
                  {"cm", detail::cm_json(cone_facet_subcomplex(C, r.delta), r.cm)},
                  {"identity", detail::equality_json(r.identity)}};
    out.verdict = r.verified() ? "VERIFIED" : "REFUTED";
  } else if (check == "genf") {
    Cone C = cone_of_instance();
    auto delta = in.cone ? in.delta : detail::homogenized_delta(in, C);
    auto r = verify_genF(C, delta, prm.trials, prm.seed);
    out.detail = {{"closed_face_form", detail::equality_json(r.closed_faces)},
                  {"link_form", detail::equality_json(r.links)}};
    out.verdict = r.verified() ? "VERIFIED" : "REFUTED";
  } else if (check == "stanley") {
    auto r = verify_stanley_reciprocity(cone_of_instance(), prm.trials, prm.seed);
    out.detail = {{"reciprocity", detail::equality_json(r.reciprocity)},
                  {"relint_paths", detail::equality_json(r.relint_paths)}};
    out.verdict = r.verified() ? "EQUAL" : "NOT_EQUAL";
  } else if (check == "brion") {
    auto r = verify_relative_brion(need_polytope(), detail::require_facet_set(in), prm.trials, prm.seed);
    json pv = json::array();
    for (const auto& v : r.per_vertex) pv.push_back(detail::equality_json(v));
    out.detail = {{"cm", detail::cm_json(in.delta, r.cm)},
                  {"statement1", detail::equality_json(r.statement1)},
                  {"statement2", r.statement2 ? "EQUAL" : "NOT_EQUAL"},
                  {"statement2_lhs", detail::laurent_json(r.statement2_lhs)},
                  {"statement2_rhs", detail::laurent_json(r.statement2_rhs)},
                  {"statement2_vertex_form", detail::equality_json(r.statement2_vertex_form)},
                  {"per_vertex", pv}};
    out.verdict = r.verified() ? "VERIFIED" : "REFUTED";
  } else if (check == "indicator") {
    json kinds = json::array();
    bool all = true;
    auto add = [&](const IndicatorReport& r) {
      json k = {{"kind", to_string(r.kind)}, {"points", r.points}, {"result", r.pass() ? "PASS" : "FAIL"}};
      if (r.failure)
        k["witness"] = {{"point", detail::point_json(r.failure->point)},
                        {"lhs", detail::exact(r.failure->lhs)},
                        {"rhs", detail::exact(r.failure->rhs)}};
      all = all && r.pass();
      kinds.push_back(k);
    };
    if (in.cone) {
      add(check_cone_bg(*in.cone, indicator_points(in.ambient_dim, prm.box, 200, prm.seed)));
    } else {
      const Polytope& P = *in.polytope;
      IndexSet facets = detail::require_facet_set(in);
      auto pts = indicator_points(in.ambient_dim, prm.box, 200, prm.seed);
      for (auto k : {IndicatorKind::BG, IndicatorKind::InvBG, IndicatorKind::RelBG, IndicatorKind::RelBGInv})
        add(check_indicator_identity(k, P, facets, pts));
      add(check_indicator_identity(IndicatorKind::ConeBG, P, 0,
                                   indicator_points(in.ambient_dim + 1, prm.box, 200, prm.seed)));
    }
    out.detail = {{"kinds", kinds}};
    out.verdict = all ? "PASS" : "FAIL";
  } else if (check == "bright-side") {
    if (!in.light_source) throw InputError("bright-side check needs a light_source subcomplex");
    const Polytope& P = need_polytope();
    IndexSet B = bright_side(P, *in.light_source);
    auto r = verify_reciprocity(P, B, prm.n_max);
    out.detail = {{"light_source", detail::point_json(*in.light_source)},
                  {"bright_facets", detail::mask_json(B)},
                  {"dark_facets", detail::mask_json(all_bits(P.facets().size()) & ~B)},
                  {"cm", detail::cm_json(in.delta, r.cm)},
                  {"reciprocity", reciprocity_json(r)}};
    out.verdict = r.verified ? "VERIFIED" : "REFUTED";
  } else {
    throw InputError("unknown check \"" + check + "\"");
  }
  return out;
}

inline json instance_header(const Instance& in, const std::string& command) {
  json j = {{"command", command},
            {"instance", in.name},
            {"ambient_dim", in.ambient_dim},
            {"parameters",
             {{"n_max", in.params.n_max}, {"trials", in.params.trials}, {"seed", in.params.seed}, {"box", in.params.box}}},
            {"subcomplex", detail::delta_json(in)}};
  if (in.polytope) {
    j["polytope"] = {{"dim", in.polytope->dim()},
                     {"vertices", in.polytope->vertices()},
                     {"facets", in.polytope->facets().size()}};
  } else {
    j["cone"] = {{"dim", in.cone->dim()}, {"rays", in.cone->generators()}, {"facets", in.cone->facets().size()}};
  }
  return j;
}

struct RunResult {
  json report;
  int exit_code = kAllVerified;
  std::vector<CheckResult> checks;
};

inline RunResult run_checks(const Instance& in, const std::string& command, const std::vector<std::string>& checks) {
  RunResult out;
  out.report = instance_header(in, command);
  json arr = json::array();
  for (const auto& c : checks) {
    auto r = run_one(in, c);
    if (r.failed()) out.exit_code = kRefuted;
    arr.push_back({{"check", r.name}, {"verdict", r.verdict}, {"detail", r.detail}});
    out.checks.push_back(std::move(r));
  }
  out.report["checks"] = arr;
  out.report["verdict"] = out.exit_code == kAllVerified ? "VERIFIED" : "REFUTED";
  return out;
}

inline RunResult cmd_check(const Instance& in) { return run_checks(in, "check", in.checks); }
inline RunResult cmd_ehrhart(const Instance& in) { return run_checks(in, "ehrhart", {"ehrhart"}); }
inline RunResult cmd_bright_side(const Instance& in) { return run_checks(in, "bright-side", {"bright-side"}); }

/// Indented "key: value" rendering of a report for --format text.
inline void render_text(std::ostream& os, const json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto flat = [](const json& v) {
    return std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_primitive() || (x.is_array() && std::all_of(x.begin(), x.end(), [](const json& y) { return y.is_primitive(); })); });
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive() || (v.is_array() && flat(v))) {
        os << pad << k << ": " << (v.is_primitive() ? scalar(v) : v.dump()) << "\n";
      } else {
        os << pad << k << ":\n";
        render_text(os, v, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        os << pad << "- " << scalar(v) << "\n";
      } else {
        os << pad << "-\n";
        render_text(os, v, indent + 2);
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

}  // namespace recip::cli
