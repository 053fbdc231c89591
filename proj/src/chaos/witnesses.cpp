#include <algorithm>
#include <cmath>
#include <string>

#include "kato/chaos.hpp"

namespace kato {

const char* to_string(StateSpace space) noexcept {
    return space == StateSpace::Sphere ? "sphere" : "disk";
}

OpenBall::OpenBall(Vec center, double radius, StateSpace space)
    : center_(std::move(center)), radius_(radius), space_(space) {
    if (!(radius_ > 0.0) || !std::isfinite(radius_)) {
        throw DomainError("ball radius must be positive and finite");
    }
}

OpenBall OpenBall::on_sphere(const SpherePoint& center, double radius) {
    return OpenBall(center.vec(), radius, StateSpace::Sphere);
}

OpenBall OpenBall::in_disk(const DiskPoint& center, double radius) {
    return OpenBall(center.vec(), radius, StateSpace::Disk);
}

bool OpenBall::contains(const Vec& x) const {
    if (x.dim() != center_.dim() || distance(x, center_) >= radius_) {
        return false;
    }
    const double n = x.norm();
    return space_ == StateSpace::Sphere ? std::abs(n - 1.0) <= tol::kUnitNorm
                                        : n <= 1.0 + tol::kUnitNorm;
}

Vec iterate_point(const Pole& p, const Vec& x, std::size_t k, StateSpace space) {
    Vec y = x;
    for (std::size_t i = 0; i < k; ++i) {
        y = phi(p, y);
        if (space == StateSpace::Sphere) {
            y = y.normalized();
        }
    }
    return y;
}

namespace {

void check_sensitivity_args(const Pole& p, const Vec& x, double delta, double lambda) {
    if (x.dim() != p.dim()) {
        throw DimensionMismatch(p.dim(), x.dim());
    }
    if (!(delta > 0.0)) {
        throw DomainError("sensitivity needs delta > 0");
    }
    if (!(lambda > 0.0 && lambda < 2.0)) {
        throw DomainError("sensitivity needs 0 < lambda < 2 (the chord diameter)");
    }
}

Witness separate(const Pole& p, const Vec& x, const Vec& y, double lambda, std::size_t max_k,
                 StateSpace space) {
    Vec a = x;
    Vec b = y;
    for (std::size_t k = 0;; ++k) {
        const double d = distance(a, b);
        if (d > lambda) {
            return Witness{space, {x, y}, k, d};
        }
        if (k == max_k) {
            break;
        }
        a = phi(p, a);
        b = phi(p, b);
        if (space == StateSpace::Sphere) {
            a = a.normalized();
            b = b.normalized();
        }
    }
    throw BudgetExceeded("no separation beyond lambda within " + std::to_string(max_k) +
                         " steps");
}

} // namespace

Witness sensitivity_witness(const Pole& p, const SpherePoint& x, double delta, double lambda,
                            std::size_t max_k) {
    check_sensitivity_args(p, x.vec(), delta, lambda);
    if (p.dim() < 2) {
        throw DomainError("S^0 is discrete; sensitivity needs dim >= 2");
    }
    // Angular gaps on the slice circle double with every step.
    const SliceFrame frame = slice_frame_through(p.point(), x.vec());
    const double theta = slice_angle(frame, x.vec());
    double eta = 2.0 * std::asin(std::min(delta, 2.0) / 2.0);
    Vec y = slice_embed(frame, theta + eta).vec();
    while (distance(x.vec(), y) > delta) {
        eta *= 1.0 - 1e-9;
        y = slice_embed(frame, theta + eta).vec();
    }
    if (distance(x.vec(), y) == 0.0) {
        throw BudgetExceeded("delta is below the resolution of the slice circle");
    }
    return separate(p, x.vec(), y, lambda, max_k, StateSpace::Sphere);
}

Witness sensitivity_witness_disk(const Pole& p, const DiskPoint& x, double delta, double lambda,
                                 std::size_t max_k) {
    check_sensitivity_args(p, x.vec(), delta, lambda);
    // Move the Chebyshev coordinate t = x.P, toward the interior when possible.
    const Vec& pv = p.vec();
    const double t = x.vec().dot(pv);
    const double step = delta / 2.0;
    Vec y = x.vec() + ((t > 0.0 ? -1.0 : 1.0) * step) * pv;
    if (y.norm() > 1.0) {
        y = y.normalized();
    }
    if (distance(x.vec(), y) == 0.0) {
        throw BudgetExceeded("delta is below the resolution of the disk");
    }
    return separate(p, x.vec(), y, lambda, max_k, StateSpace::Disk);
}

bool replay_sensitivity(const Pole& p, const Witness& w, double delta, double lambda) {
    if (w.points.size() != 2) {
        return false;
    }
    if (distance(w.points[0], w.points[1]) > delta) {
        return false;
    }
    const Vec a = iterate_point(p, w.points[0], w.step, w.space);
    const Vec b = iterate_point(p, w.points[1], w.step, w.space);
    return distance(a, b) > lambda;
}

namespace {

constexpr unsigned kMaxRefinement = 52;

/// Point of the ball on its slice circle whose depth-th iterate is P:
/// slice angle j * 2pi / 2^depth.
std::optional<Vec> sphere_target(const Pole& p, const OpenBall& ball, unsigned depth) {
    const SliceFrame frame = slice_frame_through(p.point(), ball.center());
    const double theta = slice_angle(frame, ball.center());
    const double cells = std::ldexp(1.0, static_cast<int>(depth));
    const double j = std::nearbyint(theta * cells / kTwoPi);
    const Vec u = slice_embed(frame, kTwoPi * j / cells).vec();
    if (ball.contains(u)) {
        return u;
    }
    return std::nullopt;
}

/// Point of the ball whose Chebyshev coordinate reaches 0 after depth steps,
/// so its (depth + 2)-th iterate is P (t = 0 maps to -P, and -P to P).
std::optional<Vec> disk_target(const Pole& p, const OpenBall& ball, unsigned depth) {
    const Vec& pv = p.vec();
    const Vec& c = ball.center();
    const double tc = std::clamp(c.dot(pv), -1.0, 1.0);
    const Vec perp = c - tc * pv;
    const double cells = std::ldexp(1.0, static_cast<int>(depth));
    // cos(2^depth phi) = 0 for phi = (pi/2 + m pi) / 2^depth, m = 0 .. 2^depth - 1.
    const double phic = std::acos(tc);
    double m = std::nearbyint((phic * cells - kPi / 2.0) / kPi);
    m = std::clamp(m, 0.0, cells - 1.0);
    const double t = std::cos((kPi / 2.0 + m * kPi) / cells);
    Vec u = t * pv;
    const double perp_norm = perp.norm();
    if (perp_norm > 0.0) {
        const double room = std::sqrt(std::max(0.0, 1.0 - t * t));
        u += std::min(1.0, room / perp_norm) * perp;
    }
    if (ball.contains(u)) {
        return u;
    }
    return std::nullopt;
}

/// Least k >= 1 with 2^k * (arc length of a chord-radius ball) >= 2 pi.
unsigned coverage_depth(double chord_radius) {
    const double rho = 2.0 * std::asin(std::min(chord_radius, 2.0) / 2.0);
    unsigned k = 1;
    while (std::ldexp(2.0 * rho, static_cast<int>(k)) < kTwoPi && k < kMaxRefinement) {
        ++k;
    }
    return k;
}

Witness constructive_access(const Pole& p, const OpenBall& u, const OpenBall& v) {
    const bool sphere = u.space() == StateSpace::Sphere;
    if (sphere && p.dim() < 2) {
        throw DomainError("S^0 is discrete; accessibility needs dim >= 2");
    }
    auto target = [&](const OpenBall& ball, unsigned depth) {
        return sphere ? sphere_target(p, ball, depth) : disk_target(p, ball, depth);
    };
    // Sphere: start where each arc of the ball's slice circle has doubled onto
    // the whole circle. Finer grids keep working, so refine on numerical misses.
    unsigned first = 0;
    if (sphere) {
        first = std::max(coverage_depth(u.radius()), coverage_depth(v.radius()));
    }
    for (unsigned depth = first; depth <= kMaxRefinement; ++depth) {
        auto a = target(u, depth);
        auto b = target(v, depth);
        if (a && b) {
            const std::size_t k = sphere ? depth : depth + 2;
            const double sep = distance(iterate_point(p, *a, k, u.space()),
                                        iterate_point(p, *b, k, u.space()));
            return Witness{u.space(), {*a, *b}, k, sep};
        }
    }
    throw BudgetExceeded("balls too small for the constructive accessibility route");
}

} // namespace

Witness accessibility_witness(const Pole& p, const OpenBall& u, const OpenBall& v, double lambda) {
    if (!(lambda > 0.0)) {
        throw DomainError("accessibility needs lambda > 0");
    }
    if (u.space() != v.space()) {
        throw DomainError("balls live in different state spaces");
    }
    if (u.dim() != p.dim() || v.dim() != p.dim()) {
        throw DimensionMismatch(p.dim(), u.dim() != p.dim() ? u.dim() : v.dim());
    }
    // Overlapping balls: one point serves as both u and v.
    if (u.contains(v.center())) {
        return Witness{u.space(), {v.center(), v.center()}, 1, 0.0};
    }
    if (v.contains(u.center())) {
        return Witness{u.space(), {u.center(), u.center()}, 1, 0.0};
    }
    Witness w = constructive_access(p, u, v);
    if (w.separation > lambda) {
        throw BudgetExceeded("lambda is below the numerical resolution of the witness");
    }
    return w;
}

bool replay_accessibility(const Pole& p, const OpenBall& u, const OpenBall& v, const Witness& w,
                          double lambda) {
    if (w.points.size() != 2 || w.step == 0) {
        return false;
    }
    if (!u.contains(w.points[0]) || !v.contains(w.points[1])) {
        return false;
    }
    const Vec a = iterate_point(p, w.points[0], w.step, w.space);
    const Vec b = iterate_point(p, w.points[1], w.step, w.space);
    return distance(a, b) <= lambda;
}

} // namespace kato
