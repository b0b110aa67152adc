#pragma once

#include <recip/exact_math.hpp>
#include <recip/geometry.hpp>
#include <recip/complex.hpp>
#include <recip/topology.hpp>
#include <recip/ehrhart.hpp>
#include <recip/genfun.hpp>
