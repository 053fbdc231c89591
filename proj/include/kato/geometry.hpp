#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "kato/errors.hpp"

namespace kato {

namespace tol {
/// Unit-norm tolerance for validating points handed to us.
inline constexpr double kUnitNorm = 1e-9;
/// Accuracy expected of freshly computed unit vectors.
inline constexpr double kFresh = 1e-12;
/// |P.W| bound for slice frames and the orthogonality checks on rotations.
inline constexpr double kOrthogonality = 1e-9;
/// ||Q - (P.Q)P|| below this means Q = ±P.
inline constexpr double kDegeneracy = 1e-9;
} // namespace tol

/// A point of R^{n+1}. Always at least one coordinate, all finite.
class Vec {
public:
    explicit Vec(std::vector<double> coords);
    Vec(std::initializer_list<double> coords);

    /// e_i in R^dim.
    static Vec basis(std::size_t dim, std::size_t i);
    static Vec zeros(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] std::span<const double> coords() const noexcept { return coords_; }
    [[nodiscard]] double operator[](std::size_t i) const { return coords_[i]; }

    [[nodiscard]] double dot(const Vec& other) const;
    [[nodiscard]] double norm() const;
    [[nodiscard]] Vec normalized() const;

    Vec& operator+=(const Vec& other);
    Vec& operator-=(const Vec& other);
    Vec& operator*=(double s);

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
    friend Vec operator-(Vec a) { return a *= -1.0; }

    friend bool operator==(const Vec&, const Vec&) = default;

private:
    struct Unchecked {};
    Vec(std::vector<double> coords, Unchecked) : coords_(std::move(coords)) {}

    std::vector<double> coords_;
};

/// Euclidean chord distance, the metric used for every chaos property.
[[nodiscard]] double distance(const Vec& a, const Vec& b);

/// Max-norm of a - b.
[[nodiscard]] double max_abs_diff(const Vec& a, const Vec& b);

/// A point of S^n. Validated to kUnitNorm, then re-projected exactly.
class SpherePoint {
public:
    explicit SpherePoint(Vec v);
    SpherePoint(std::initializer_list<double> coords) : SpherePoint(Vec(coords)) {}

    /// Normalizes any nonzero vector onto the sphere.
    static SpherePoint project(const Vec& v);

    [[nodiscard]] const Vec& vec() const noexcept { return v_; }
    [[nodiscard]] std::size_t dim() const noexcept { return v_.dim(); }
    operator const Vec&() const noexcept { return v_; } // NOLINT(google-explicit-constructor)

private:
    struct Unchecked {};
    SpherePoint(Vec v, Unchecked) : v_(std::move(v)) {}

    Vec v_;
};

/// A point of the closed unit disk D^{n+1}.
class DiskPoint {
public:
    explicit DiskPoint(Vec v);

    [[nodiscard]] const Vec& vec() const noexcept { return v_; }
    [[nodiscard]] std::size_t dim() const noexcept { return v_.dim(); }
    operator const Vec&() const noexcept { return v_; } // NOLINT(google-explicit-constructor)

private:
    Vec v_;
};

/// Orthonormal pair (P, W); the circle cos(t) P + sin(t) W is invariant under Phi_P.
class SliceFrame {
public:
    SliceFrame(SpherePoint pole, SpherePoint complement);

    [[nodiscard]] const SpherePoint& pole() const noexcept { return pole_; }
    [[nodiscard]] const SpherePoint& complement() const noexcept { return complement_; }
    [[nodiscard]] std::size_t dim() const noexcept { return pole_.dim(); }

private:
    SpherePoint pole_;
    SpherePoint complement_;
};

/// Proper orthogonal (n+1)x(n+1) matrix, row-major.
class Rotation {
public:
    /// Throws DomainError unless R^T R = I and det R = 1 to kOrthogonality.
    Rotation(std::size_t dim, std::vector<double> entries);

    static Rotation identity(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] double operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }

    [[nodiscard]] Vec apply(const Vec& x) const;
    [[nodiscard]] Rotation transposed() const;
    [[nodiscard]] Rotation compose(const Rotation& inner) const; // this * inner

    /// max |(R^T R - I)_{ij}|
    [[nodiscard]] double orthogonality_defect() const;
    [[nodiscard]] double determinant() const;

private:
    struct Unchecked {};
    Rotation(std::size_t dim, std::vector<double> entries, Unchecked)
        : dim_(dim), entries_(std::move(entries)) {}

    std::size_t dim_;
    std::vector<double> entries_;
};

/// Unit vector in span(P, Q) orthogonal to P (P_Q^perp).
/// Throws DegeneratePair if ||Q - (P.Q)P|| < tol::kDegeneracy.
[[nodiscard]] SpherePoint orthonormal_complement(const SpherePoint& p, const SpherePoint& q);

/// The standard basis vector least aligned with P, orthogonalized against P.
/// Deterministic; needs dim >= 2.
[[nodiscard]] SpherePoint canonical_orthogonal(const SpherePoint& p);

/// Frame (P, P_x^perp) when x is not ±P, else (P, canonical_orthogonal(P)).
[[nodiscard]] SliceFrame slice_frame_through(const SpherePoint& p, const Vec& x);

[[nodiscard]] SpherePoint slice_embed(const SliceFrame& frame, double theta);

/// Angle of the projection of x onto the frame plane, in [0, 2pi).
[[nodiscard]] double slice_angle(const SliceFrame& frame, const Vec& x);

/// Distance from x to the plane span(pole, complement).
[[nodiscard]] double slice_residual(const SliceFrame& frame, const Vec& x);

/// Proper rotation taking P to e_1, built from two Householder reflections.
/// Throws DomainError for P = -1 in R^1 (no proper rotation exists).
[[nodiscard]] Rotation rotate_pole_to_axis(const SpherePoint& p);

/// Determinant of the Gram matrix of the given vectors.
[[nodiscard]] double gram_determinant(std::span<const Vec> vectors);

/// Reduces an angle into [0, 2pi).
[[nodiscard]] double wrap_two_pi(double theta);

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383279;

} // namespace kato
