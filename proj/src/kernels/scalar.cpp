#include <cmath>

#include "kato/kernels.hpp"

namespace kato::kernels::scalar {

void phi_step(std::span<const double> pole, PointBatch& batch, bool renormalize) {
    const std::size_t dim = batch.dim();
    if (pole.size() != dim) {
        throw DimensionMismatch(dim, pole.size());
    }
    for (std::size_t i = 0; i < batch.count(); ++i) {
        double dot = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            dot += batch.coordinate(j)[i] * pole[j];
        }
        const double s = 2.0 * dot;
        for (std::size_t j = 0; j < dim; ++j) {
            double& x = batch.coordinate(j)[i];
            x = s * x - pole[j];
        }
        if (!renormalize) {
            continue;
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double x = batch.coordinate(j)[i];
            acc += x * x;
        }
        const double n = std::sqrt(acc);
        for (std::size_t j = 0; j < dim; ++j) {
            batch.coordinate(j)[i] /= n;
        }
    }
}

void distance(const PointBatch& batch, std::span<const double> target, std::span<double> out) {
    const std::size_t dim = batch.dim();
    if (target.size() != dim) {
        throw DimensionMismatch(dim, target.size());
    }
    if (out.size() != batch.count()) {
        throw DimensionMismatch(batch.count(), out.size());
    }
    for (std::size_t i = 0; i < batch.count(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = batch.coordinate(j)[i] - target[j];
            acc += d * d;
        }
        out[i] = std::sqrt(acc);
    }
}

void slice_residual(const PointBatch& batch, std::span<const double> pole,
                    const PointBatch& complements, std::span<double> out) {
    const std::size_t dim = batch.dim();
    if (pole.size() != dim) {
        throw DimensionMismatch(dim, pole.size());
    }
    if (complements.dim() != dim || complements.count() != batch.count()) {
        throw DimensionMismatch(batch.count(), complements.count());
    }
    if (out.size() != batch.count()) {
        throw DimensionMismatch(batch.count(), out.size());
    }
    for (std::size_t i = 0; i < batch.count(); ++i) {
        double a = 0.0;
        double b = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            a += batch.coordinate(j)[i] * pole[j];
            b += batch.coordinate(j)[i] * complements.coordinate(j)[i];
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double r =
                (batch.coordinate(j)[i] - a * pole[j]) - b * complements.coordinate(j)[i];
            acc += r * r;
        }
        out[i] = std::sqrt(acc);
    }
}

} // namespace kato::kernels::scalar
