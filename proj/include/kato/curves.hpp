#pragma once

// Pedal and orthotomic curves. Plane curves come as samples (position plus
// caller-supplied unit normal); spherical pedal curves are taken as input.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "kato/dynamics.hpp"
#include "kato/geometry.hpp"

namespace kato {

using Vec2 = std::array<double, 2>;

/// Threshold on |P.ped(s)| for spherical orthotomics.
inline constexpr double kPedalDegeneracy = 1e-9;

struct PlaneCurveSample {
    PlaneCurveSample(double s, Vec2 position, Vec2 unit_normal);

    double s;
    Vec2 position;
    Vec2 unit_normal;
};

struct SphereCurveSample {
    double s;
    SpherePoint pedal;
};

/// P + ((gamma - P).N) N
[[nodiscard]] std::vector<Vec2> plane_pedal(std::span<const PlaneCurveSample> samples, Vec2 p);

/// P + 2 ((gamma - P).N) N
[[nodiscard]] std::vector<Vec2> plane_orthotomic(std::span<const PlaneCurveSample> samples, Vec2 p);

/// F_P(x) = 2x - P
[[nodiscard]] Vec2 reflect_through(Vec2 x, Vec2 p);

/// Phi_P(ped(s)) per sample. Throws PedalDegenerate naming the first sample
/// with |P.ped(s)| <= kPedalDegeneracy.
[[nodiscard]] std::vector<SpherePoint> sphere_orthotomic_from_pedal(
    std::span<const SphereCurveSample> samples, const Pole& p);

/// ||(ort + P)/2 - (P.ped) ped||
[[nodiscard]] double midpoint_defect(const Vec& ort, const Vec& pedal, const Pole& p);

namespace builtin {
/// n samples of the unit circle, normals pointing inward.
[[nodiscard]] std::vector<PlaneCurveSample> unit_circle(std::size_t n);
/// n samples of gamma(s) = (s, 1) for s in [-range, range], normal (0, 1).
[[nodiscard]] std::vector<PlaneCurveSample> horizontal_line(std::size_t n, double range = 5.0);
/// n samples of the small circle at angular distance beta from P:
/// cos(beta) P + sin(beta) W(s), W(s) sweeping the unit circle orthogonal to P.
/// Needs dim >= 3.
[[nodiscard]] std::vector<SphereCurveSample> small_circle(const Pole& p, double beta,
                                                          std::size_t n);
} // namespace builtin

} // namespace kato
