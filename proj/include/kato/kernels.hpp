#pragma once

// Batched Phi_P kernels over structure-of-arrays point sets.
//
// Every variant performs the same IEEE operations in the same order as the
// scalar reference (no FMA, no reciprocal approximations), so results are
// bit-identical across variants and to the single-point kato::phi path.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "kato/geometry.hpp"

namespace kato {

/// count points of R^dim stored coordinate-major: coordinate j of point i is
/// at data[j * count + i].
class PointBatch {
public:
    PointBatch(std::size_t dim, std::size_t count);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t count() const noexcept { return count_; }

    [[nodiscard]] std::span<double> coordinate(std::size_t j) {
        return {data_.data() + j * count_, count_};
    }
    [[nodiscard]] std::span<const double> coordinate(std::size_t j) const {
        return {data_.data() + j * count_, count_};
    }

    void set(std::size_t i, const Vec& x);
    [[nodiscard]] Vec get(std::size_t i) const;

private:
    std::size_t dim_;
    std::size_t count_;
    std::vector<double> data_;
};

namespace kernels {

enum class Isa { Scalar, Avx2 };

[[nodiscard]] std::string_view isa_name(Isa isa) noexcept;

/// x_i <- Phi_P(x_i), then x_i <- x_i / ||x_i|| when renormalize is set.
using PhiStepFn = void (*)(std::span<const double> pole, PointBatch& batch, bool renormalize);
/// out_i <- ||x_i - target||
using DistanceFn = void (*)(const PointBatch& batch, std::span<const double> target,
                            std::span<double> out);
/// out_i <- || x_i - (x_i.P) P - (x_i.W_i) W_i ||, with W_i taken from complements.
using SliceResidualFn = void (*)(const PointBatch& batch, std::span<const double> pole,
                                 const PointBatch& complements, std::span<double> out);

struct KernelTable {
    Isa isa;
    PhiStepFn phi_step;
    DistanceFn distance;
    SliceResidualFn slice_residual;
};

namespace scalar {
void phi_step(std::span<const double> pole, PointBatch& batch, bool renormalize);
void distance(const PointBatch& batch, std::span<const double> target, std::span<double> out);
void slice_residual(const PointBatch& batch, std::span<const double> pole,
                    const PointBatch& complements, std::span<double> out);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void phi_step(std::span<const double> pole, PointBatch& batch, bool renormalize);
void distance(const PointBatch& batch, std::span<const double> target, std::span<double> out);
void slice_residual(const PointBatch& batch, std::span<const double> pole,
                    const PointBatch& complements, std::span<double> out);
} // namespace avx2
#endif

/// True if the running CPU can execute the given variant.
[[nodiscard]] bool supported(Isa isa) noexcept;

[[nodiscard]] KernelTable table(Isa isa);

/// Best supported variant, unless KATO_ISA=scalar forces the reference path.
[[nodiscard]] const KernelTable& active();

} // namespace kernels
} // namespace kato
