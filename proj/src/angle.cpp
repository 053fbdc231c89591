#include "kato/angle.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "kato/errors.hpp"
#include "kato/geometry.hpp"

namespace kato {

Rational wrap_unit(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    // floor division for a positive denominator
    BigInt q = num / den;
    if (num < 0 && q * den != num) {
        q -= 1;
    }
    return r - Rational(q);
}

Angle Angle::radians(double theta) {
    if (!std::isfinite(theta)) {
        throw DomainError("angle is not finite");
    }
    return Angle(wrap_two_pi(theta));
}

Angle Angle::turns(const Rational& r) { return Angle(wrap_unit(r)); }

Angle Angle::turns(long long num, long long den) {
    if (den == 0) {
        throw DomainError("angle denominator is zero");
    }
    return turns(Rational(BigInt(num), BigInt(den)));
}

const Rational& Angle::exact_turns() const {
    if (const auto* r = std::get_if<Rational>(&value_)) {
        return *r;
    }
    throw MixedRepresentation("angle is not exact");
}

double Angle::float_radians() const {
    if (const auto* d = std::get_if<double>(&value_)) {
        return *d;
    }
    throw MixedRepresentation("angle is exact, not floating");
}

double Angle::to_radians() const {
    if (const auto* d = std::get_if<double>(&value_)) {
        return *d;
    }
    return wrap_two_pi(kTwoPi * std::get<Rational>(value_).convert_to<double>());
}

std::string Angle::to_string() const {
    if (const auto* r = std::get_if<Rational>(&value_)) {
        return boost::multiprecision::numerator(*r).str() + "/" +
               boost::multiprecision::denominator(*r).str();
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", std::get<double>(value_));
    return buf;
}

Angle angle_step(const Angle& alpha, const Angle& theta) {
    if (alpha.is_exact() != theta.is_exact()) {
        throw MixedRepresentation("angle_step needs both angles exact or both floating");
    }
    if (alpha.is_exact()) {
        return Angle::turns(2 * theta.exact_turns() - alpha.exact_turns());
    }
    return Angle::radians(2.0 * theta.float_radians() - alpha.float_radians());
}

Angle parse_angle(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            throw DomainError("cannot parse angle '" + text + "'");
        }
        if (used != text.size()) {
            throw DomainError("cannot parse angle '" + text + "'");
        }
        return Angle::radians(v);
    }
    try {
        const BigInt num(text.substr(0, slash));
        const BigInt den(text.substr(slash + 1));
        if (den == 0) {
            throw DomainError("angle denominator is zero in '" + text + "'");
        }
        return Angle::turns(Rational(num, den));
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception&) {
        throw DomainError("cannot parse exact angle '" + text + "'");
    }
}

} // namespace kato
