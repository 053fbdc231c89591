#include "kato/kernels.hpp"

namespace kato {

PointBatch::PointBatch(std::size_t dim, std::size_t count)
    : dim_(dim), count_(count), data_(dim * count, 0.0) {
    if (dim_ == 0) {
        throw DomainError("point batch needs dim >= 1");
    }
}

void PointBatch::set(std::size_t i, const Vec& x) {
    if (x.dim() != dim_) {
        throw DimensionMismatch(dim_, x.dim());
    }
    for (std::size_t j = 0; j < dim_; ++j) {
        data_[j * count_ + i] = x[j];
    }
}

Vec PointBatch::get(std::size_t i) const {
    std::vector<double> c(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
        c[j] = data_[j * count_ + i];
    }
    return Vec(std::move(c));
}

} // namespace kato
