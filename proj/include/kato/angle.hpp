#pragma once

#include <string>
#include <variant>

#include <boost/multiprecision/cpp_int.hpp>

namespace kato {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Reduces r into [0, 1).
[[nodiscard]] Rational wrap_unit(const Rational& r);

/// A position on a circle: floating radians in [0, 2pi), or an exact
/// fraction of a turn r in [0, 1) meaning 2*pi*r.
class Angle {
public:
    static Angle radians(double theta);
    static Angle turns(const Rational& r);
    static Angle turns(long long num, long long den);

    [[nodiscard]] bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }

    /// Throws MixedRepresentation when the angle is floating.
    [[nodiscard]] const Rational& exact_turns() const;
    /// Throws MixedRepresentation when the angle is exact.
    [[nodiscard]] double float_radians() const;

    /// Radians in [0, 2pi), rounded for exact angles.
    [[nodiscard]] double to_radians() const;

    /// "p/q" for exact angles, %.17g radians otherwise.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Angle&, const Angle&) = default;

private:
    explicit Angle(std::variant<double, Rational> v) : value_(std::move(v)) {}

    std::variant<double, Rational> value_;
};

/// One step of the circle dynamics in angle coordinates: 2*theta - alpha, reduced.
/// Both arguments must share a representation.
[[nodiscard]] Angle angle_step(const Angle& alpha, const Angle& theta);

/// Parses "p/q" as an exact turn fraction, anything else as decimal radians.
[[nodiscard]] Angle parse_angle(const std::string& text);

} // namespace kato
