#include "kato/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace kato {

namespace {

void check_same_dim(std::size_t a, std::size_t b) {
    if (a != b) {
        throw DimensionMismatch(a, b);
    }
}

} // namespace

Vec::Vec(std::vector<double> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) {
        throw InvalidVector("vector needs at least one coordinate");
    }
    for (double c : coords_) {
        if (!std::isfinite(c)) {
            throw InvalidVector("vector coordinate is not finite");
        }
    }
}

Vec::Vec(std::initializer_list<double> coords) : Vec(std::vector<double>(coords)) {}

Vec Vec::basis(std::size_t dim, std::size_t i) {
    if (dim == 0 || i >= dim) {
        throw DomainError("basis index out of range");
    }
    std::vector<double> c(dim, 0.0);
    c[i] = 1.0;
    return Vec(std::move(c), Unchecked{});
}

Vec Vec::zeros(std::size_t dim) {
    if (dim == 0) {
        throw InvalidVector("vector needs at least one coordinate");
    }
    return Vec(std::vector<double>(dim, 0.0), Unchecked{});
}

double Vec::dot(const Vec& other) const {
    check_same_dim(dim(), other.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        acc += coords_[i] * other.coords_[i];
    }
    return acc;
}

double Vec::norm() const {
    double acc = 0.0;
    for (double c : coords_) {
        acc += c * c;
    }
    return std::sqrt(acc);
}

Vec Vec::normalized() const {
    const double n = norm();
    if (n == 0.0) {
        throw DomainError("cannot normalize the zero vector");
    }
    std::vector<double> c(coords_);
    for (double& x : c) {
        x /= n;
    }
    return Vec(std::move(c), Unchecked{});
}

Vec& Vec::operator+=(const Vec& other) {
    check_same_dim(dim(), other.dim());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] += other.coords_[i];
    }
    return *this;
}

Vec& Vec::operator-=(const Vec& other) {
    check_same_dim(dim(), other.dim());
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] -= other.coords_[i];
    }
    return *this;
}

Vec& Vec::operator*=(double s) {
    for (double& c : coords_) {
        c *= s;
    }
    return *this;
}

double distance(const Vec& a, const Vec& b) {
    check_same_dim(a.dim(), b.dim());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double max_abs_diff(const Vec& a, const Vec& b) {
    check_same_dim(a.dim(), b.dim());
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

SpherePoint::SpherePoint(Vec v) : v_(std::move(v)) {
    const double n = v_.norm();
    if (std::abs(n - 1.0) > tol::kUnitNorm) {
        throw DomainError("point is not on the unit sphere (norm " + std::to_string(n) + ")");
    }
    v_ = v_.normalized();
}

SpherePoint SpherePoint::project(const Vec& v) {
    return SpherePoint(v.normalized(), Unchecked{});
}

DiskPoint::DiskPoint(Vec v) : v_(std::move(v)) {
    if (v_.norm() > 1.0 + tol::kUnitNorm) {
        throw DomainError("point is outside the unit disk");
    }
}

SliceFrame::SliceFrame(SpherePoint pole, SpherePoint complement)
    : pole_(std::move(pole)), complement_(std::move(complement)) {
    check_same_dim(pole_.dim(), complement_.dim());
    if (std::abs(pole_.vec().dot(complement_.vec())) > tol::kOrthogonality) {
        throw DomainError("slice frame vectors are not orthogonal");
    }
}

Rotation::Rotation(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim_ == 0 || entries_.size() != dim_ * dim_) {
        throw DomainError("rotation matrix has the wrong shape");
    }
    for (double e : entries_) {
        if (!std::isfinite(e)) {
            throw DomainError("rotation matrix entry is not finite");
        }
    }
    if (orthogonality_defect() > tol::kOrthogonality) {
        throw DomainError("matrix is not orthogonal");
    }
    if (std::abs(determinant() - 1.0) > tol::kOrthogonality) {
        throw DomainError("matrix is not a proper rotation (det != 1)");
    }
}

Rotation Rotation::identity(std::size_t dim) {
    std::vector<double> e(dim * dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        e[i * dim + i] = 1.0;
    }
    return Rotation(dim, std::move(e), Unchecked{});
}

Vec Rotation::apply(const Vec& x) const {
    check_same_dim(dim_, x.dim());
    std::vector<double> out(dim_, 0.0);
    for (std::size_t r = 0; r < dim_; ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < dim_; ++c) {
            acc += entries_[r * dim_ + c] * x[c];
        }
        out[r] = acc;
    }
    return Vec(std::move(out));
}

Rotation Rotation::transposed() const {
    std::vector<double> t(entries_.size());
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            t[c * dim_ + r] = entries_[r * dim_ + c];
        }
    }
    return Rotation(dim_, std::move(t), Unchecked{});
}

Rotation Rotation::compose(const Rotation& inner) const {
    check_same_dim(dim_, inner.dim_);
    std::vector<double> m(entries_.size(), 0.0);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) {
                acc += entries_[r * dim_ + k] * inner.entries_[k * dim_ + c];
            }
            m[r * dim_ + c] = acc;
        }
    }
    return Rotation(dim_, std::move(m), Unchecked{});
}

double Rotation::orthogonality_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < dim_; ++k) {
                acc += entries_[k * dim_ + i] * entries_[k * dim_ + j];
            }
            worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double Rotation::determinant() const {
    // Gaussian elimination with partial pivoting on a copy.
    std::vector<double> a(entries_);
    const std::size_t n = dim_;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) {
                pivot = r;
            }
        }
        if (a[pivot * n + col] == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a[pivot * n + c], a[col * n + c]);
            }
            det = -det;
        }
        const double d = a[col * n + col];
        det *= d;
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a[r * n + col] / d;
            for (std::size_t c = col; c < n; ++c) {
                a[r * n + c] -= f * a[col * n + c];
            }
        }
    }
    return det;
}

SpherePoint orthonormal_complement(const SpherePoint& p, const SpherePoint& q) {
    check_same_dim(p.dim(), q.dim());
    const Vec& pv = p.vec();
    Vec w = q.vec() - pv.dot(q.vec()) * pv;
    if (w.norm() < tol::kDegeneracy) {
        throw DegeneratePair("Q coincides with P or -P; no orthogonal complement");
    }
    w = w.normalized();
    // Second Gram-Schmidt pass: keeps |W.P| at rounding level when Q is close to ±P.
    w -= pv.dot(w) * pv;
    return SpherePoint::project(w);
}

SpherePoint canonical_orthogonal(const SpherePoint& p) {
    const std::size_t n = p.dim();
    if (n < 2) {
        throw DomainError("S^0 has no point orthogonal to P");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(p.vec()[i]) < std::abs(p.vec()[best])) {
            best = i;
        }
    }
    return orthonormal_complement(p, SpherePoint::project(Vec::basis(n, best)));
}

SliceFrame slice_frame_through(const SpherePoint& p, const Vec& x) {
    check_same_dim(p.dim(), x.dim());
    const Vec perp = x - p.vec().dot(x) * p.vec();
    if (perp.norm() < tol::kDegeneracy) {
        return SliceFrame(p, canonical_orthogonal(p));
    }
    Vec w = perp.normalized();
    w -= p.vec().dot(w) * p.vec();
    return SliceFrame(p, SpherePoint::project(w));
}

SpherePoint slice_embed(const SliceFrame& frame, double theta) {
    return SpherePoint::project(std::cos(theta) * frame.pole().vec() +
                                std::sin(theta) * frame.complement().vec());
}

double slice_angle(const SliceFrame& frame, const Vec& x) {
    return wrap_two_pi(std::atan2(frame.complement().vec().dot(x), frame.pole().vec().dot(x)));
}

double slice_residual(const SliceFrame& frame, const Vec& x) {
    const Vec& p = frame.pole().vec();
    const Vec& w = frame.complement().vec();
    const Vec r = x - p.dot(x) * p - w.dot(x) * w;
    return r.norm();
}

namespace {

/// I - 2 v v^T / (v.v), row-major.
std::vector<double> householder(const Vec& v) {
    const std::size_t n = v.dim();
    const double vv = v.dot(v);
    std::vector<double> h(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            h[r * n + c] = (r == c ? 1.0 : 0.0) - 2.0 * v[r] * v[c] / vv;
        }
    }
    return h;
}

std::vector<double> matmul(const std::vector<double>& a, const std::vector<double>& b,
                           std::size_t n) {
    std::vector<double> m(n * n, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                acc += a[r * n + k] * b[k * n + c];
            }
            m[r * n + c] = acc;
        }
    }
    return m;
}

} // namespace

Rotation rotate_pole_to_axis(const SpherePoint& p) {
    const std::size_t n = p.dim();
    const Vec& pv = p.vec();
    const Vec e1 = Vec::basis(n, 0);
    if (n == 1) {
        if (pv[0] > 0.0) {
            return Rotation::identity(1);
        }
        throw DomainError("no proper rotation of R^1 maps -1 to 1");
    }
    // Reflect along the better-conditioned of P + e1 / P - e1, then fix the
    // orientation with a second reflection that keeps e1 where it should be.
    std::vector<double> first;
    std::vector<double> second;
    if (pv[0] >= 0.0) {
        first = householder(pv + e1);  // P -> -e1
        second = householder(e1);      // -e1 -> e1
    } else {
        first = householder(pv - e1);                 // P -> e1
        second = householder(Vec::basis(n, n - 1));   // fixes e1
    }
    return Rotation(n, matmul(second, first, n));
}

double gram_determinant(std::span<const Vec> vectors) {
    const std::size_t k = vectors.size();
    if (k == 0) {
        return 1.0;
    }
    std::vector<double> g(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            g[i * k + j] = vectors[i].dot(vectors[j]);
        }
    }
    double det = 1.0;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(g[r * k + col]) > std::abs(g[pivot * k + col])) {
                pivot = r;
            }
        }
        if (g[pivot * k + col] == 0.0) {
            return 0.0;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < k; ++c) {
                std::swap(g[pivot * k + c], g[col * k + c]);
            }
            det = -det;
        }
        const double d = g[col * k + col];
        det *= d;
        for (std::size_t r = col + 1; r < k; ++r) {
            const double f = g[r * k + col] / d;
            for (std::size_t c = col; c < k; ++c) {
                g[r * k + c] -= f * g[col * k + c];
            }
        }
    }
    return det;
}

double wrap_two_pi(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    if (r >= kTwoPi) {
        r = 0.0;
    }
    return r;
}

} // namespace kato
