#include <cmath>
#include <string>

#include "kato/chaos.hpp"

namespace kato {

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    [[nodiscard]] double value() const { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

void check_steps(std::size_t k) {
    if (k < kMinLyapunovSteps) {
        throw DomainError("Lyapunov estimates need at least " +
                          std::to_string(kMinLyapunovSteps) + " steps");
    }
}

} // namespace

double lyapunov_sphere_slice(const Pole& p, const SpherePoint& x0, std::size_t k) {
    check_steps(k);
    if (p.dim() < 2) {
        throw DomainError("slice Lyapunov estimate needs dim >= 2");
    }
    const SliceFrame frame = slice_frame_through(p.point(), x0.vec());
    const Vec& pv = frame.pole().vec();
    const Vec& wv = frame.complement().vec();
    CompensatedSum sum;
    Vec x = x0.vec();
    for (std::size_t i = 0; i < k; ++i) {
        // Unit tangent of the slice circle at x, pushed through
        // DPhi_x v = 2 (v.P) x + 2 (x.P) v.
        const double angle = slice_angle(frame, x);
        const Vec tangent = -std::sin(angle) * pv + std::cos(angle) * wv;
        const Vec image = 2.0 * tangent.dot(pv) * x + 2.0 * x.dot(pv) * tangent;
        const double rate = image.norm();
        if (rate == 0.0) {
            throw DerivativeSingular("slice derivative vanished");
        }
        sum.add(std::log(rate));
        x = phi(p, x).normalized();
    }
    return sum.value() / static_cast<double>(k);
}

double lyapunov_circle(double alpha, double theta0, std::size_t k) {
    const Pole p = Pole::from_angle(alpha);
    return lyapunov_sphere_slice(p, SpherePoint::project(Vec{std::cos(theta0), std::sin(theta0)}),
                                 k);
}

double lyapunov_logistic(const Pole& p, double x0, std::size_t k) {
    check_steps(k);
    if (!(x0 >= 0.0 && x0 <= 1.0)) {
        throw DomainError("logistic factor needs x0 in [0, 1]");
    }
    CompensatedSum sum;
    double x = x0;
    for (std::size_t i = 0; i < k; ++i) {
        // The affine charts cancel in the chain rule: |d/dx| = |4 u| with u = h_P(x).
        const double rate = 4.0 * std::abs(interval_chart(p, x));
        if (rate == 0.0) {
            throw DerivativeSingular("orbit hit the critical point x = 0.5 at step " +
                                     std::to_string(i));
        }
        sum.add(std::log(rate));
        x = interval_conjugacy(p, x);
    }
    return sum.value() / static_cast<double>(k);
}

} // namespace kato
