#include <recip/cli.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace recip;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reciprocity checks for half-open lattice polytopes and cones"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "json";
  cli::Overrides over;
  std::int64_t n_max = 0, box = 0;
  int trials = 0;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("instance", file, "instance JSON file")->required();
    sub->add_option("--seed", seed, "random seed (default 0)");
    sub->add_option("--trials", trials, "random evaluation points (default 16)");
    sub->add_option("--n-max", n_max, "largest dilation checked (default 4)");
    sub->add_option("--box", box, "radius of the indicator sample box (default 3)");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  };
  auto* check = app.add_subcommand("check", "run the checks listed in the instance");
  auto* ehrhart = app.add_subcommand("ehrhart", "Ehrhart polynomial of P minus B with its reciprocal values");
  auto* bright = app.add_subcommand("bright-side", "bright side of P seen from the light source, with reciprocity");
  for (auto* s : {check, ehrhart, bright}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kInputError;
  }
  auto* sub = app.get_subcommands().front();
  if (sub->count("--seed")) over.seed = seed;
  if (sub->count("--trials")) over.trials = trials;
  if (sub->count("--n-max")) over.n_max = n_max;
  if (sub->count("--box")) over.box = box;

  const auto start = std::chrono::steady_clock::now();
  cli::RunResult result;
  try {
    auto in = cli::parse_instance_text(slurp(file), over);
    if (sub == check) result = cli::cmd_check(in);
    else if (sub == ehrhart) result = cli::cmd_ehrhart(in);
    else result = cli::cmd_bright_side(in);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return cli::kInputError;
  } catch (const std::overflow_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return cli::kInputError;
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (format == "json") std::cout << result.report.dump(2) << "\n";
  else cli::render_text(std::cout, result.report);

  std::cerr << result.report["instance"].get<std::string>() << "\n";
  for (const auto& c : result.checks) std::cerr << "  " << c.name << ": " << c.verdict << "\n";
  std::cerr << "  overall: " << result.report["verdict"].get<std::string>() << " (" << static_cast<long>(ms)
            << " ms)\n";
  return result.exit_code;
}
