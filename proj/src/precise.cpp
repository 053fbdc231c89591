#include "kato/precise.hpp"

#include <boost/math/constants/constants.hpp>

#include "kato/errors.hpp"

namespace kato {

namespace {

Precise pdot(const PreciseVec& a, const PreciseVec& b) {
    Precise s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

} // namespace

PreciseVec to_precise(const Vec& v) { return PreciseVec(v.coords().begin(), v.coords().end()); }

Vec to_double(const PreciseVec& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (const Precise& c : v) {
        out.push_back(c.convert_to<double>());
    }
    return Vec(std::move(out));
}

PreciseVec phi_precise(const PreciseVec& p, const PreciseVec& x) {
    if (p.size() != x.size()) {
        throw DimensionMismatch(p.size(), x.size());
    }
    const Precise s = 2 * pdot(x, p);
    PreciseVec out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        out[j] = s * x[j] - p[j];
    }
    return out;
}

PreciseVec normalized(const PreciseVec& x) {
    const Precise n = sqrt(pdot(x, x));
    PreciseVec out(x);
    for (Precise& c : out) {
        c /= n;
    }
    return out;
}

PreciseVec circle_point(const Rational& turns) {
    const Precise t = boost::math::constants::two_pi<Precise>() *
                      Precise(boost::multiprecision::numerator(turns)) /
                      Precise(boost::multiprecision::denominator(turns));
    return {cos(t), sin(t)};
}

Precise distance(const PreciseVec& a, const PreciseVec& b) {
    Precise s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += (a[i] - b[i]) * (a[i] - b[i]);
    }
    return sqrt(s);
}

} // namespace kato
