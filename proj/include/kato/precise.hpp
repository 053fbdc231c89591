#pragma once

// Extended-precision orbits. Angle doubling loses one bit per step, so a
// double orbit and its exact angle reduction part ways after ~50 steps; 50
// decimal digits keep the ambient orbit honest far past that.

#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "kato/angle.hpp"
#include "kato/geometry.hpp"

namespace kato {

using Precise = boost::multiprecision::cpp_bin_float_50;
using PreciseVec = std::vector<Precise>;

[[nodiscard]] PreciseVec to_precise(const Vec& v);
[[nodiscard]] Vec to_double(const PreciseVec& v);

/// 2 (x.P) x - P
[[nodiscard]] PreciseVec phi_precise(const PreciseVec& p, const PreciseVec& x);

[[nodiscard]] PreciseVec normalized(const PreciseVec& x);

/// (cos 2 pi r, sin 2 pi r)
[[nodiscard]] PreciseVec circle_point(const Rational& turns);

[[nodiscard]] Precise distance(const PreciseVec& a, const PreciseVec& b);

} // namespace kato
