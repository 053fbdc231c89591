#include "kato/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace kato {

Pole Pole::from_angle(double alpha) {
    return Pole(SpherePoint::project(Vec{std::cos(alpha), std::sin(alpha)}));
}

double Orbit::max_norm_drift() const {
    return norm_drift.empty() ? 0.0 : *std::max_element(norm_drift.begin(), norm_drift.end());
}

double Orbit::max_slice_residual() const {
    return slice_residual.empty() ? 0.0
                                  : *std::max_element(slice_residual.begin(), slice_residual.end());
}

Vec phi(const Pole& p, const Vec& x) {
    const Vec& pv = p.vec();
    if (x.dim() != pv.dim()) {
        throw DimensionMismatch(pv.dim(), x.dim());
    }
    // Same operation order as the batch kernels, so results agree bit for bit.
    const double s = 2.0 * x.dot(pv);
    std::vector<double> out(x.dim());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = s * x[j] - pv[j];
    }
    return Vec(std::move(out));
}

namespace {

/// Orthonormal basis of span(P, x0): one or two vectors.
std::vector<Vec> span_basis(const Pole& p, const Vec& x0) {
    std::vector<Vec> basis{p.vec()};
    Vec perp = x0 - p.vec().dot(x0) * p.vec();
    if (perp.norm() >= tol::kDegeneracy) {
        perp = perp.normalized();
        perp -= p.vec().dot(perp) * p.vec();
        basis.push_back(perp.normalized());
    }
    return basis;
}

double residual_against(const std::vector<Vec>& basis, const Vec& x) {
    Vec r = x;
    for (const Vec& b : basis) {
        r -= b.dot(x) * b;
    }
    return r.norm();
}

} // namespace

double span_residual(const Pole& p, const Vec& x0, const Vec& x) {
    if (x0.dim() != p.dim()) {
        throw DimensionMismatch(p.dim(), x0.dim());
    }
    return residual_against(span_basis(p, x0), x);
}

Orbit iterate(const Pole& p, const Vec& x0, std::size_t k, Renormalize policy) {
    if (x0.dim() != p.dim()) {
        throw DimensionMismatch(p.dim(), x0.dim());
    }
    const std::vector<Vec> basis = span_basis(p, x0);
    Orbit orbit;
    orbit.points.reserve(k + 1);
    orbit.norm_drift.reserve(k + 1);
    orbit.slice_residual.reserve(k + 1);

    auto record = [&](Vec x) {
        orbit.norm_drift.push_back(std::abs(x.norm() - 1.0));
        orbit.slice_residual.push_back(residual_against(basis, x));
        orbit.points.push_back(std::move(x));
    };

    Vec x = x0;
    if (policy == Renormalize::EveryStep) {
        x = x.normalized();
    }
    record(x);
    for (std::size_t i = 0; i < k; ++i) {
        x = phi(p, x);
        if (policy == Renormalize::EveryStep) {
            x = x.normalized();
        }
        record(x);
    }
    return orbit;
}

SpherePoint preimage_sphere(const Pole& p, const SpherePoint& y) {
    const Vec& pv = p.vec();
    if (y.dim() != pv.dim()) {
        throw DimensionMismatch(pv.dim(), y.dim());
    }
    const double t = y.vec().dot(pv);
    if (t >= 0.0) {
        // x = ((y + P)/2) / ||(y + P)/2||; well conditioned since ||y + P||^2 >= 2.
        return SpherePoint::project(y.vec() + pv);
    }
    // Near -P the sum y + P cancels. Halve the angle between P and y inside
    // the plane span(P, y) instead; it is the same point.
    const Vec perp = y.vec() - t * pv;
    const double s = perp.norm();
    if (s <= tol::kFresh) {
        if (pv.dim() == 1) {
            throw NoPreimage("y = -P has no preimage on S^0");
        }
        return canonical_orthogonal(p.point());
    }
    // perp carries O(eps) error along P; clean it before it is scaled by 1/s.
    Vec w = perp.normalized();
    w -= pv.dot(w) * pv;
    w = w.normalized();
    const double half = 0.5 * std::atan2(s, t);
    return SpherePoint::project(std::cos(half) * pv + std::sin(half) * w);
}

double preimage_disk_scale(const Pole& p, const Vec& y) {
    const double yp = y.dot(p.vec());
    const double yy = y.dot(y);
    return std::sqrt((1.0 + yy + 2.0 * yp) / (2.0 * yp + 2.0));
}

Vec preimage_disk(const Pole& p, const Vec& y) {
    if (y.dim() != p.dim()) {
        throw DimensionMismatch(p.dim(), y.dim());
    }
    if (1.0 - y.norm() < kInteriorMargin) {
        throw NotInterior("disk preimage needs ||y|| < 1 - 1e-9");
    }
    const double a = preimage_disk_scale(p, y);
    const Vec sum = y + p.vec();
    return (a / sum.norm()) * sum;
}

namespace {

double pole_sign(const Pole& p) {
    if (p.dim() != 1) {
        throw DomainError("interval conjugacy needs P in S^0");
    }
    return p.vec()[0] > 0.0 ? 1.0 : -1.0;
}

} // namespace

double interval_chart(const Pole& p, double x) {
    return pole_sign(p) > 0.0 ? -2.0 * x + 1.0 : 2.0 * x - 1.0;
}

double interval_chart_inverse(const Pole& p, double u) {
    return pole_sign(p) > 0.0 ? (1.0 - u) / 2.0 : (u + 1.0) / 2.0;
}

double interval_conjugacy(const Pole& p, double x) {
    pole_sign(p);
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("interval conjugacy needs x in [0, 1]");
    }
    const Vec image = phi(p, Vec{interval_chart(p, x)});
    return interval_chart_inverse(p, image[0]);
}

double chebyshev_projection(const Pole& p, const Vec& x) {
    return x.dot(p.vec());
}

std::pair<Vec, Vec> equivariance_conjugate(const Rotation& r, const Pole& p, const Vec& x) {
    const Pole rotated(SpherePoint::project(r.apply(p.vec())));
    return {phi(rotated, r.apply(x)), r.apply(phi(p, x))};
}

} // namespace kato
