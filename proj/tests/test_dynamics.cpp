#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kato/dynamics.hpp"
#include "oracles.hpp"

using namespace kato;

namespace {

Vec to_vec(const oracle::Coords& c) { return Vec(std::vector<double>(c)); }

Pole random_pole(std::size_t dim, std::mt19937_64& rng) {
    return Pole(SpherePoint::project(to_vec(oracle::random_unit(dim, rng))));
}

} // namespace

TEST(Phi, DoublesTheAngleOnTheCircle) {
    const Pole p{1.0, 0.0};
    const Vec x{std::cos(M_PI / 6), std::sin(M_PI / 6)};
    EXPECT_LE(max_abs_diff(phi(p, x), Vec{std::cos(M_PI / 3), std::sin(M_PI / 3)}), 1e-15);
}

TEST(Phi, OrthogonalPointsMapToMinusP) {
    const Pole p{0.0, 0.6, 0.8};
    EXPECT_EQ(phi(p, Vec{1.0, 0.0, 0.0}), (Vec{-0.0, -0.6, -0.8}));
}

TEST(Phi, PoleIsFixed) {
    const Pole p{1.0, 0.0, 0.0};
    EXPECT_EQ(phi(p, p.vec()), p.vec());
}

TEST(Phi, DimensionMismatch) {
    EXPECT_THROW((void)phi(Pole{1.0, 0.0}, Vec{1.0, 0.0, 0.0}), DimensionMismatch);
}

TEST(Phi, MatchesExtendedPrecisionFormula) {
    std::mt19937_64 rng(5);
    for (std::size_t dim = 1; dim <= 7; ++dim) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto pc = oracle::random_unit(dim, rng);
            const auto xc = oracle::random_interior(dim, rng);
            const std::vector<long double> xl(xc.begin(), xc.end());
            const auto expected = oracle::phi_long(pc, xl);
            const Vec got = phi(Pole(SpherePoint::project(to_vec(pc))), to_vec(xc));
            for (std::size_t i = 0; i < dim; ++i) {
                EXPECT_NEAR(got[i], static_cast<double>(expected[i]), 1e-15);
            }
        }
    }
}

TEST(Phi, NormPreservationOnSpheres) {
    std::mt19937_64 rng(1);
    for (std::size_t n = 1; n <= 6; ++n) {
        for (int trial = 0; trial < 10000; ++trial) {
            const Pole p = random_pole(n + 1, rng);
            const Vec x = to_vec(oracle::random_unit(n + 1, rng));
            ASSERT_LE(std::abs(phi(p, x).norm() - 1.0), 1e-12);
        }
    }
}

TEST(Phi, InteriorStaysInterior) {
    std::mt19937_64 rng(2);
    for (std::size_t n = 0; n <= 6; ++n) {
        for (int trial = 0; trial < 10000; ++trial) {
            const Pole p = random_pole(n + 1, rng);
            const Vec x = to_vec(oracle::random_interior(n + 1, rng));
            ASSERT_LT(phi(p, x).norm(), 1.0);
        }
    }
}

TEST(Phi, SliceClosure) {
    std::mt19937_64 rng(3);
    for (std::size_t dim = 2; dim <= 7; ++dim) {
        for (int trial = 0; trial < 2000; ++trial) {
            const Pole p = random_pole(dim, rng);
            const Vec x = to_vec(trial % 2 ? oracle::random_unit(dim, rng)
                                           : oracle::random_interior(dim, rng));
            ASSERT_LE(span_residual(p, x, phi(p, x)), 1e-12);
        }
    }
}

TEST(Iterate, ZeroStepsIsJustTheStart) {
    const Orbit o = iterate(Pole{1.0, 0.0}, Vec{0.0, 1.0}, 0);
    ASSERT_EQ(o.size(), 1u);
    EXPECT_EQ(o.points[0], (Vec{0.0, 1.0}));
    EXPECT_EQ(o.norm_drift.size(), 1u);
    EXPECT_EQ(o.slice_residual.size(), 1u);
}

TEST(Iterate, PeriodThreeOrbitOfTwoSevenths) {
    // 2^3 * 2/7 = 16/7 == 2/7 (mod 1)
    EXPECT_EQ(wrap_unit(Rational(8) * Rational(2, 7)), Rational(2, 7));
    const double theta = 2 * M_PI * 2.0 / 7.0;
    const Vec x0{std::cos(theta), std::sin(theta)};
    const Orbit o = iterate(Pole{1.0, 0.0}, x0, 3);
    ASSERT_EQ(o.size(), 4u);
    EXPECT_LE(max_abs_diff(o.points[3], x0), 1e-14);
    EXPECT_GT(distance(o.points[1], x0), 0.5);
}

TEST(Iterate, RenormalizationPinsTheNorm) {
    std::mt19937_64 rng(9);
    const Pole p = random_pole(4, rng);
    const Vec x0 = to_vec(oracle::random_unit(4, rng));
    const Orbit raw = iterate(p, x0, 1000, Renormalize::Off);
    const Orbit kept = iterate(p, x0, 1000, Renormalize::EveryStep);
    EXPECT_EQ(raw.size(), 1001u);
    // Without re-projection the drift is a pure rounding effect; report it.
    RecordProperty("max_norm_drift_off", std::to_string(raw.max_norm_drift()));
    EXPECT_LE(kept.max_norm_drift(), 4 * std::numeric_limits<double>::epsilon());
    EXPECT_LE(kept.max_slice_residual(), 1e-9);
}

TEST(PreimageSphere, FixedPointAndQuarterTurn) {
    const Pole p{1.0, 0.0};
    EXPECT_LE(max_abs_diff(preimage_sphere(p, SpherePoint{1.0, 0.0}).vec(), Vec{1.0, 0.0}), 0.0);
    const SpherePoint x = preimage_sphere(p, SpherePoint{0.0, 1.0});
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_LE(max_abs_diff(x.vec(), Vec{h, h}), 1e-15);
    EXPECT_LE(max_abs_diff(phi(p, x.vec()), Vec{0.0, 1.0}), 1e-15);
}

TEST(PreimageSphere, MinusPUsesCanonicalOrthogonal) {
    const Pole p{1.0, 0.0, 0.0};
    const SpherePoint x = preimage_sphere(p, SpherePoint{-1.0, 0.0, 0.0});
    EXPECT_EQ(x.vec(), (Vec{0.0, 1.0, 0.0}));
    EXPECT_EQ(phi(p, x.vec()), (Vec{-1.0, 0.0, 0.0}));
}

TEST(PreimageSphere, ZeroSphereHasNoPreimageOfMinusP) {
    EXPECT_THROW((void)preimage_sphere(Pole{1.0}, SpherePoint{-1.0}), NoPreimage);
    EXPECT_EQ(preimage_sphere(Pole{-1.0}, SpherePoint{-1.0}).vec(), Vec{-1.0});
}

TEST(PreimageSphere, RoundTripIncludingNearAntipodes) {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> tiny(-12.0, -1.0);
    for (std::size_t dim = 2; dim <= 7; ++dim) {
        for (int trial = 0; trial < 2000; ++trial) {
            const Pole p = random_pole(dim, rng);
            Vec y = to_vec(oracle::random_unit(dim, rng));
            if (trial % 4 == 0) {
                // y close to -P
                y = (-1.0 * p.vec() + std::pow(10.0, tiny(rng)) * y).normalized();
            }
            const SpherePoint x = preimage_sphere(p, SpherePoint::project(y));
            ASSERT_LE(max_abs_diff(phi(p, x.vec()), y), 1e-10);
        }
    }
}

TEST(PreimageDisk, HandComputedExamples) {
    const Pole p{1.0, 0.0};
    const double h = 1.0 / std::sqrt(2.0);
    EXPECT_DOUBLE_EQ(preimage_disk_scale(p, Vec{0.0, 0.0}), h);
    EXPECT_LE(max_abs_diff(preimage_disk(p, Vec{0.0, 0.0}), Vec{h, 0.0}), 2.5e-16);
    EXPECT_LE(max_abs_diff(phi(p, preimage_disk(p, Vec{0.0, 0.0})), Vec{0.0, 0.0}), 1e-15);

    EXPECT_DOUBLE_EQ(preimage_disk_scale(p, Vec{0.5, 0.0}), std::sqrt(2.25 / 3.0));
    EXPECT_LE(max_abs_diff(preimage_disk(p, Vec{0.5, 0.0}), Vec{std::sqrt(3.0) / 2.0, 0.0}), 1e-15);

    const Vec x = preimage_disk(p, Vec{0.0, 0.5});
    EXPECT_NEAR(x[0], 0.707107, 1e-6);
    EXPECT_NEAR(x[1], 0.353553, 1e-6);
    EXPECT_LE(max_abs_diff(phi(p, x), Vec{0.0, 0.5}), 1e-15);
}

TEST(PreimageDisk, BoundaryIsRejected) {
    const Pole p{1.0, 0.0};
    EXPECT_THROW((void)preimage_disk(p, Vec{0.0, 1.0}), NotInterior);
    EXPECT_THROW((void)preimage_disk(p, Vec{0.0, 1.0 - 1e-10}), NotInterior);
    EXPECT_NO_THROW((void)preimage_disk(p, Vec{0.0, 1.0 - 1e-8}));
}

TEST(PreimageDisk, RoundTripAndInteriority) {
    std::mt19937_64 rng(6);
    for (std::size_t dim = 1; dim <= 7; ++dim) {
        for (int trial = 0; trial < 2000; ++trial) {
            const Pole p = random_pole(dim, rng);
            const Vec y = to_vec(oracle::random_interior(dim, rng));
            const Vec x = preimage_disk(p, y);
            ASSERT_LT(x.norm(), 1.0);
            ASSERT_LE(max_abs_diff(phi(p, x), y), 1e-10);
        }
    }
}

TEST(IntervalConjugacy, Examples) {
    EXPECT_EQ(interval_conjugacy(Pole{1.0}, 0.5), 1.0);
    EXPECT_EQ(interval_conjugacy(Pole{1.0}, 0.0), 0.0);
    EXPECT_DOUBLE_EQ(interval_conjugacy(Pole{-1.0}, 0.25), 0.75);
    EXPECT_THROW((void)interval_conjugacy(Pole{1.0}, 1.5), DomainError);
    EXPECT_THROW((void)interval_conjugacy(Pole{1.0, 0.0}, 0.5), DomainError);
}

TEST(IntervalConjugacy, IsTheLogisticMap) {
    for (const Pole& p : {Pole{1.0}, Pole{-1.0}}) {
        for (int i = 0; i <= 10000; ++i) {
            const double x = i / 10000.0;
            ASSERT_NEAR(interval_conjugacy(p, x), 4.0 * x * (1.0 - x), 1e-12);
        }
    }
}

TEST(ChebyshevProjection, Examples) {
    const Pole p{1.0, 0.0, 0.0};
    EXPECT_EQ(chebyshev_projection(p, p.vec()), 1.0);
    EXPECT_EQ(chebyshev_projection(p, phi(p, p.vec())), 1.0);
    const Vec orth{0.0, 0.0, 1.0};
    EXPECT_EQ(chebyshev_projection(p, orth), 0.0);
    EXPECT_EQ(chebyshev_projection(p, phi(p, orth)), -1.0);
    const Vec half{0.5, std::sqrt(0.75), 0.0};
    EXPECT_NEAR(chebyshev_projection(p, phi(p, half)), -0.5, 1e-15);
}

TEST(ChebyshevProjection, IntertwinesWithTheChebyshevMap) {
    std::mt19937_64 rng(8);
    for (std::size_t dim = 1; dim <= 7; ++dim) {
        for (int trial = 0; trial < 2000; ++trial) {
            const Pole p = random_pole(dim, rng);
            const Vec x = to_vec(trial % 2 ? oracle::random_unit(dim, rng)
                                           : oracle::random_interior(dim, rng));
            const double t = chebyshev_projection(p, x);
            ASSERT_NEAR(chebyshev_projection(p, phi(p, x)), 2 * t * t - 1, 1e-12);
        }
    }
}

TEST(Equivariance, IdentityRotation) {
    const Pole p{0.0, 1.0, 0.0};
    const Vec x{0.3, 0.4, 0.5};
    const auto [a, b] = equivariance_conjugate(Rotation::identity(3), p, x);
    EXPECT_EQ(a, phi(p, x));
    EXPECT_EQ(b, phi(p, x));
}

TEST(Equivariance, RandomRotations) {
    std::mt19937_64 rng(12);
    for (std::size_t dim = 2; dim <= 7; ++dim) {
        for (int trial = 0; trial < 500; ++trial) {
            // A random proper rotation: product of two pole-to-axis rotations.
            const Rotation r = rotate_pole_to_axis(random_pole(dim, rng).point())
                                   .compose(rotate_pole_to_axis(random_pole(dim, rng).point())
                                                .transposed());
            const Pole p = dim == 3 && trial == 0 ? Pole{1.0, 0.0, 0.0} : random_pole(dim, rng);
            const Vec x = to_vec(oracle::random_unit(dim, rng));
            const auto [a, b] = equivariance_conjugate(r, p, x);
            ASSERT_LE(max_abs_diff(a, b), 1e-12);
        }
    }
}

TEST(Equivariance, EquatorialBlockReducesDimension) {
    std::mt19937_64 rng(13);
    for (std::size_t dim = 3; dim <= 7; ++dim) {
        const Pole p = random_pole(dim, rng);
        const Rotation r = rotate_pole_to_axis(p.point());
        const Pole axis(SpherePoint::project(Vec::basis(dim, 0)));
        const Pole small_axis(SpherePoint::project(Vec::basis(dim - 1, 0)));
        for (int trial = 0; trial < 200; ++trial) {
            auto c = oracle::random_unit(dim - 1, rng);
            std::vector<double> lifted(c);
            lifted.push_back(0.0);
            const Vec equatorial(lifted);
            const Vec image = phi(axis, equatorial);
            EXPECT_EQ(image[dim - 1], 0.0);
            const Vec reduced = phi(small_axis, Vec(std::vector<double>(c)));
            for (std::size_t i = 0; i + 1 < dim; ++i) {
                EXPECT_NEAR(image[i], reduced[i], 1e-15);
            }
            // Back in original coordinates this is Phi_P on R^T(equatorial).
            const Rotation back = r.transposed();
            EXPECT_LE(max_abs_diff(phi(p, back.apply(equatorial)), back.apply(image)), 1e-12);
        }
    }
}
