#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "kato/angle.hpp"
#include "kato/geometry.hpp"

namespace kato {

/// The parameter P of Phi_P, a point of S^n.
class Pole {
public:
    explicit Pole(SpherePoint p) : p_(std::move(p)) {}
    Pole(std::initializer_list<double> coords) : p_(coords) {}

    /// (cos alpha, sin alpha) on S^1.
    static Pole from_angle(double alpha);

    [[nodiscard]] const SpherePoint& point() const noexcept { return p_; }
    [[nodiscard]] const Vec& vec() const noexcept { return p_.vec(); }
    [[nodiscard]] std::size_t dim() const noexcept { return p_.dim(); }

private:
    SpherePoint p_;
};

enum class Renormalize { Off, EveryStep };

/// x_0 .. x_k with per-step diagnostics.
struct Orbit {
    std::vector<Vec> points;
    /// | ||x_k|| - 1 |
    std::vector<double> norm_drift;
    /// Distance of x_k from span(P, x_0).
    std::vector<double> slice_residual;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] double max_norm_drift() const;
    [[nodiscard]] double max_slice_residual() const;
};

/// Phi_P(x) = 2 (x.P) x - P.
[[nodiscard]] Vec phi(const Pole& p, const Vec& x);

/// k applications of Phi_P starting at x0. EveryStep re-projects each iterate
/// onto the sphere and is only meaningful for sphere orbits.
[[nodiscard]] Orbit iterate(const Pole& p, const Vec& x0, std::size_t k,
                            Renormalize policy = Renormalize::EveryStep);

/// Distance of x from span(P, x0) (from the line RP when x0 is parallel to P).
[[nodiscard]] double span_residual(const Pole& p, const Vec& x0, const Vec& x);

/// x on S^n with Phi_P(x) = y. For y = -P returns canonical_orthogonal(P);
/// throws NoPreimage on S^0.
[[nodiscard]] SpherePoint preimage_sphere(const Pole& p, const SpherePoint& y);

/// Threshold on 1 - ||y|| below which preimage_disk refuses the target.
inline constexpr double kInteriorMargin = 1e-9;

/// x = a (y + P) / ||y + P|| with Phi_P(x) = y and ||x|| < 1.
/// Throws NotInterior when 1 - ||y|| < kInteriorMargin.
[[nodiscard]] Vec preimage_disk(const Pole& p, const Vec& y);

/// The scalar a from the disk preimage construction.
[[nodiscard]] double preimage_disk_scale(const Pole& p, const Vec& y);

/// h_P^{-1}(Phi_P(h_P(x))) for P = ±1 on [0, 1]; equals 4x(1 - x).
[[nodiscard]] double interval_conjugacy(const Pole& p, double x);

/// h_P: [0,1] -> [-1,1] and its inverse.
[[nodiscard]] double interval_chart(const Pole& p, double x);
[[nodiscard]] double interval_chart_inverse(const Pole& p, double u);

/// t = x.P; the P-component evolves as t -> 2t^2 - 1.
[[nodiscard]] double chebyshev_projection(const Pole& p, const Vec& x);

/// (Phi_{RP}(Rx), R Phi_P(x)).
[[nodiscard]] std::pair<Vec, Vec> equivariance_conjugate(const Rotation& r, const Pole& p,
                                                         const Vec& x);

} // namespace kato
