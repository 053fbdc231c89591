#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

#include "kato/kernels.hpp"

// Only the functions below are compiled for AVX2; the rest of the library
// stays baseline x86-64 so the dispatcher can fall back safely.
#define KATO_AVX2 __attribute__((target("avx2")))

namespace kato::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

KATO_AVX2 void phi_step_block(const double* pole, double* base, std::size_t stride,
                              std::size_t dim, std::size_t i, bool renormalize) {
    __m256d dot = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
        const __m256d x = _mm256_loadu_pd(base + j * stride + i);
        dot = _mm256_add_pd(dot, _mm256_mul_pd(x, _mm256_set1_pd(pole[j])));
    }
    const __m256d s = _mm256_mul_pd(_mm256_set1_pd(2.0), dot);
    for (std::size_t j = 0; j < dim; ++j) {
        double* ptr = base + j * stride + i;
        const __m256d x = _mm256_loadu_pd(ptr);
        _mm256_storeu_pd(ptr, _mm256_sub_pd(_mm256_mul_pd(s, x), _mm256_set1_pd(pole[j])));
    }
    if (!renormalize) {
        return;
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
        const __m256d x = _mm256_loadu_pd(base + j * stride + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(x, x));
    }
    const __m256d n = _mm256_sqrt_pd(acc);
    for (std::size_t j = 0; j < dim; ++j) {
        double* ptr = base + j * stride + i;
        _mm256_storeu_pd(ptr, _mm256_div_pd(_mm256_loadu_pd(ptr), n));
    }
}

KATO_AVX2 void distance_block(const double* base, std::size_t stride, const double* target,
                              std::size_t dim, std::size_t i, double* out) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
        const __m256d d =
            _mm256_sub_pd(_mm256_loadu_pd(base + j * stride + i), _mm256_set1_pd(target[j]));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
}

KATO_AVX2 void slice_residual_block(const double* base, const double* wbase, std::size_t stride,
                                    const double* pole, std::size_t dim, std::size_t i,
                                    double* out) {
    __m256d a = _mm256_setzero_pd();
    __m256d b = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
        const __m256d x = _mm256_loadu_pd(base + j * stride + i);
        a = _mm256_add_pd(a, _mm256_mul_pd(x, _mm256_set1_pd(pole[j])));
        b = _mm256_add_pd(b, _mm256_mul_pd(x, _mm256_loadu_pd(wbase + j * stride + i)));
    }
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t j = 0; j < dim; ++j) {
        const __m256d x = _mm256_loadu_pd(base + j * stride + i);
        const __m256d w = _mm256_loadu_pd(wbase + j * stride + i);
        const __m256d r = _mm256_sub_pd(_mm256_sub_pd(x, _mm256_mul_pd(a, _mm256_set1_pd(pole[j]))),
                                        _mm256_mul_pd(b, w));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(r, r));
    }
    _mm256_storeu_pd(out + i, _mm256_sqrt_pd(acc));
}

} // namespace

void phi_step(std::span<const double> pole, PointBatch& batch, bool renormalize) {
    const std::size_t dim = batch.dim();
    if (pole.size() != dim) {
        throw DimensionMismatch(dim, pole.size());
    }
    const std::size_t count = batch.count();
    const std::size_t full = count - count % kLanes;
    double* base = batch.coordinate(0).data();
    for (std::size_t i = 0; i < full; i += kLanes) {
        phi_step_block(pole.data(), base, count, dim, i, renormalize);
    }
    if (full == count) {
        return;
    }
    // Tail: run the reference on a small copy.
    PointBatch tail(dim, count - full);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = full; i < count; ++i) {
            tail.coordinate(j)[i - full] = batch.coordinate(j)[i];
        }
    }
    scalar::phi_step(pole, tail, renormalize);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t i = full; i < count; ++i) {
            batch.coordinate(j)[i] = tail.coordinate(j)[i - full];
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
    const std::size_t count = batch.count();
    const std::size_t full = count - count % kLanes;
    const double* base = batch.coordinate(0).data();
    for (std::size_t i = 0; i < full; i += kLanes) {
        distance_block(base, count, target.data(), dim, i, out.data());
    }
    for (std::size_t i = full; i < count; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double d = base[j * count + i] - target[j];
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
    const std::size_t count = batch.count();
    const std::size_t full = count - count % kLanes;
    const double* base = batch.coordinate(0).data();
    const double* wbase = complements.coordinate(0).data();
    for (std::size_t i = 0; i < full; i += kLanes) {
        slice_residual_block(base, wbase, count, pole.data(), dim, i, out.data());
    }
    for (std::size_t i = full; i < count; ++i) {
        double a = 0.0;
        double b = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            a += base[j * count + i] * pole[j];
            b += base[j * count + i] * wbase[j * count + i];
        }
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j) {
            const double r = (base[j * count + i] - a * pole[j]) - b * wbase[j * count + i];
            acc += r * r;
        }
        out[i] = std::sqrt(acc);
    }
}

} // namespace kato::kernels::avx2

#endif
