#include "kato/curves.hpp"

#include <cmath>

namespace kato {

PlaneCurveSample::PlaneCurveSample(double s_, Vec2 position_, Vec2 unit_normal_)
    : s(s_), position(position_), unit_normal(unit_normal_) {
    for (double c : {s, position[0], position[1], unit_normal[0], unit_normal[1]}) {
        if (!std::isfinite(c)) {
            throw InvalidVector("curve sample is not finite");
        }
    }
    const double n = std::hypot(unit_normal[0], unit_normal[1]);
    if (std::abs(n - 1.0) > 1e-12) {
        throw DomainError("curve normal is not unit length");
    }
}

namespace {

/// ((gamma - P).N) N, the foot offset from P.
Vec2 foot_offset(const PlaneCurveSample& sample, Vec2 p) {
    const double dx = sample.position[0] - p[0];
    const double dy = sample.position[1] - p[1];
    const double along = dx * sample.unit_normal[0] + dy * sample.unit_normal[1];
    return {along * sample.unit_normal[0], along * sample.unit_normal[1]};
}

} // namespace

std::vector<Vec2> plane_pedal(std::span<const PlaneCurveSample> samples, Vec2 p) {
    std::vector<Vec2> out;
    out.reserve(samples.size());
    for (const auto& sample : samples) {
        const Vec2 f = foot_offset(sample, p);
        out.push_back({p[0] + f[0], p[1] + f[1]});
    }
    return out;
}

std::vector<Vec2> plane_orthotomic(std::span<const PlaneCurveSample> samples, Vec2 p) {
    std::vector<Vec2> out;
    out.reserve(samples.size());
    for (const auto& sample : samples) {
        const Vec2 f = foot_offset(sample, p);
        out.push_back({p[0] + 2.0 * f[0], p[1] + 2.0 * f[1]});
    }
    return out;
}

Vec2 reflect_through(Vec2 x, Vec2 p) { return {2.0 * x[0] - p[0], 2.0 * x[1] - p[1]}; }

std::vector<SpherePoint> sphere_orthotomic_from_pedal(std::span<const SphereCurveSample> samples,
                                                      const Pole& p) {
    std::vector<SpherePoint> out;
    out.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const Vec& ped = samples[i].pedal.vec();
        if (ped.dim() != p.dim()) {
            throw DimensionMismatch(p.dim(), ped.dim());
        }
        const double dot = p.vec().dot(ped);
        if (std::abs(dot) <= kPedalDegeneracy) {
            throw PedalDegenerate(i, dot);
        }
        out.push_back(SpherePoint::project(phi(p, ped)));
    }
    return out;
}

double midpoint_defect(const Vec& ort, const Vec& pedal, const Pole& p) {
    const Vec lhs = 0.5 * (ort + p.vec());
    const Vec rhs = p.vec().dot(pedal) * pedal;
    return distance(lhs, rhs);
}

namespace builtin {

std::vector<PlaneCurveSample> unit_circle(std::size_t n) {
    std::vector<PlaneCurveSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        const double c = std::cos(s);
        const double sn = std::sin(s);
        out.emplace_back(s, Vec2{c, sn}, Vec2{-c, -sn});
    }
    return out;
}

std::vector<PlaneCurveSample> horizontal_line(std::size_t n, double range) {
    std::vector<PlaneCurveSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s =
            n == 1 ? 0.0 : -range + 2.0 * range * static_cast<double>(i) / static_cast<double>(n - 1);
        out.emplace_back(s, Vec2{s, 1.0}, Vec2{0.0, 1.0});
    }
    return out;
}

std::vector<SphereCurveSample> small_circle(const Pole& p, double beta, std::size_t n) {
    if (p.dim() < 3) {
        throw DomainError("small circles need dim >= 3");
    }
    const SpherePoint w1 = canonical_orthogonal(p.point());
    // Second direction orthogonal to both P and w1.
    SpherePoint w2 = w1;
    for (std::size_t i = 0; i < p.dim(); ++i) {
        Vec e = Vec::basis(p.dim(), i);
        e -= p.vec().dot(e) * p.vec();
        e -= w1.vec().dot(e) * w1.vec();
        if (e.norm() > 0.5) {
            w2 = SpherePoint::project(e);
            break;
        }
    }
    std::vector<SphereCurveSample> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double s = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
        const Vec w = std::cos(s) * w1.vec() + std::sin(s) * w2.vec();
        out.push_back({s, SpherePoint::project(std::cos(beta) * p.vec() + std::sin(beta) * w)});
    }
    return out;
}

} // namespace builtin

} // namespace kato
