#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "kato/dynamics.hpp"
#include "kato/kernels.hpp"
#include "oracles.hpp"

using namespace kato;

namespace {

PointBatch random_batch(std::size_t dim, std::size_t count, std::mt19937_64& rng, bool unit) {
    PointBatch b(dim, count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto c = unit ? oracle::random_unit(dim, rng) : oracle::random_interior(dim, rng);
        b.set(i, Vec(std::vector<double>(c)));
    }
    return b;
}

bool bitwise_equal(const PointBatch& a, const PointBatch& b) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
        if (std::memcmp(a.coordinate(j).data(), b.coordinate(j).data(),
                        a.count() * sizeof(double)) != 0) {
            return false;
        }
    }
    return true;
}

std::vector<kernels::Isa> variants() {
    std::vector<kernels::Isa> out{kernels::Isa::Scalar};
    if (kernels::supported(kernels::Isa::Avx2)) {
        out.push_back(kernels::Isa::Avx2);
    }
    return out;
}

} // namespace

TEST(Kernels, ActiveVariantIsSupported) {
    EXPECT_TRUE(kernels::supported(kernels::active().isa));
    RecordProperty("active_isa", std::string(kernels::isa_name(kernels::active().isa)));
}

TEST(Kernels, PhiStepVariantsAreBitIdentical) {
    std::mt19937_64 rng(21);
    for (std::size_t dim = 1; dim <= 7; ++dim) {
        for (std::size_t count : {0u, 1u, 3u, 4u, 5u, 8u, 37u, 256u}) {
            for (bool renorm : {false, true}) {
                const PointBatch start = random_batch(dim, count, rng, renorm);
                const auto pole = oracle::random_unit(dim, rng);
                PointBatch reference = start;
                kernels::scalar::phi_step(pole, reference, renorm);
                for (kernels::Isa isa : variants()) {
                    PointBatch got = start;
                    kernels::table(isa).phi_step(pole, got, renorm);
                    EXPECT_TRUE(bitwise_equal(reference, got))
                        << kernels::isa_name(isa) << " dim=" << dim << " count=" << count;
                }
            }
        }
    }
}

TEST(Kernels, PhiStepMatchesSinglePointPathBitForBit) {
    std::mt19937_64 rng(22);
    for (std::size_t dim = 2; dim <= 6; ++dim) {
        const Pole p(SpherePoint::project(Vec(oracle::random_unit(dim, rng))));
        const std::vector<double> pc(p.vec().coords().begin(), p.vec().coords().end());
        PointBatch batch = random_batch(dim, 19, rng, true);
        std::vector<Vec> singles;
        for (std::size_t i = 0; i < batch.count(); ++i) {
            singles.push_back(batch.get(i));
        }
        for (int step = 0; step < 50; ++step) {
            kernels::active().phi_step(pc, batch, true);
            for (auto& x : singles) {
                x = phi(p, x).normalized();
            }
        }
        for (std::size_t i = 0; i < batch.count(); ++i) {
            EXPECT_EQ(batch.get(i), singles[i]);
        }
    }
}

TEST(Kernels, DistanceAndResidualVariantsAreBitIdentical) {
    std::mt19937_64 rng(23);
    for (std::size_t dim = 1; dim <= 7; ++dim) {
        for (std::size_t count : {1u, 6u, 33u}) {
            const PointBatch batch = random_batch(dim, count, rng, false);
            const PointBatch ws = random_batch(dim, count, rng, true);
            const auto target = oracle::random_unit(dim, rng);
            std::vector<double> ref_d(count), ref_r(count);
            kernels::scalar::distance(batch, target, ref_d);
            kernels::scalar::slice_residual(batch, target, ws, ref_r);
            for (kernels::Isa isa : variants()) {
                std::vector<double> d(count), r(count);
                kernels::table(isa).distance(batch, target, d);
                kernels::table(isa).slice_residual(batch, target, ws, r);
                EXPECT_EQ(0, std::memcmp(d.data(), ref_d.data(), count * sizeof(double)));
                EXPECT_EQ(0, std::memcmp(r.data(), ref_r.data(), count * sizeof(double)));
            }
            for (std::size_t i = 0; i < count; ++i) {
                EXPECT_NEAR(ref_d[i], distance(batch.get(i), Vec(std::vector<double>(target))),
                            1e-15);
            }
        }
    }
}

TEST(Kernels, ShapeErrors) {
    PointBatch b(3, 4);
    const std::vector<double> wrong{1.0, 0.0};
    EXPECT_THROW(kernels::scalar::phi_step(wrong, b, false), DimensionMismatch);
    std::vector<double> out(3);
    const std::vector<double> target{1.0, 0.0, 0.0};
    EXPECT_THROW(kernels::scalar::distance(b, target, out), DimensionMismatch);
    EXPECT_THROW(PointBatch(0, 4), DomainError);
}
