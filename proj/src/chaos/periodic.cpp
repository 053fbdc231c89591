#include <algorithm>

#include "kato/chaos.hpp"

namespace kato {

std::vector<Angle> periodic_points_circle(const Angle& alpha, unsigned k) {
    const Rational& a = alpha.exact_turns();
    if (k < 1 || k > 24) {
        throw DomainError("periodic point enumeration supports 1 <= k <= 24");
    }
    // theta -> 2 theta - alpha composed k times is theta -> 2^k theta - (2^k - 1) alpha,
    // so the solutions are alpha + j / (2^k - 1).
    const BigInt count = (BigInt(1) << k) - 1;
    const auto n = count.convert_to<std::size_t>();
    std::vector<Angle> points;
    points.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const Angle theta = Angle::turns(a + Rational(BigInt(j), count));
        Angle probe = theta;
        for (unsigned step = 0; step < k; ++step) {
            probe = angle_step(alpha, probe);
        }
        if (!(probe == theta)) {
            throw Error("periodic point failed its exact return check");
        }
        points.push_back(theta);
    }
    std::sort(points.begin(), points.end(), [](const Angle& l, const Angle& r) {
        return l.exact_turns() < r.exact_turns();
    });
    return points;
}

Rational max_circular_gap(const std::vector<Angle>& sorted_angles) {
    if (sorted_angles.empty()) {
        throw DomainError("no angles");
    }
    Rational gap = sorted_angles.front().exact_turns() + 1 - sorted_angles.back().exact_turns();
    for (std::size_t i = 1; i < sorted_angles.size(); ++i) {
        const Rational d = sorted_angles[i].exact_turns() - sorted_angles[i - 1].exact_turns();
        if (d > gap) {
            gap = d;
        }
    }
    return gap;
}

} // namespace kato
