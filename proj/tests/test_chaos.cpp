#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "kato/chaos.hpp"
#include "oracles.hpp"

using namespace kato;

namespace {

Vec to_vec(const oracle::Coords& c) { return Vec(std::vector<double>(c)); }

SpherePoint on_circle(double theta) {
    return SpherePoint::project(Vec{std::cos(theta), std::sin(theta)});
}

/// Angle between two unit vectors, from the chord.
double angular_gap(const Vec& a, const Vec& b) { return 2.0 * std::asin(distance(a, b) / 2.0); }

/// Exact k-fold iteration of theta -> 2 theta - alpha (mod 1), independent of Angle.
Rational exact_orbit(Rational theta, const Rational& alpha, unsigned k) {
    for (unsigned i = 0; i < k; ++i) {
        theta = 2 * theta - alpha;
        while (theta < 0) {
            theta += 1;
        }
        while (theta >= 1) {
            theta -= 1;
        }
    }
    return theta;
}

double chord_of_angle(double rho) { return 2.0 * std::sin(rho / 2.0); }

} // namespace

// ----------------------------------------------------------------------------
// sensitivity

TEST(Sensitivity, CircleExampleMatchesDoublingOracle) {
    const Pole p = Pole::from_angle(0.0);
    const Witness w = sensitivity_witness(p, on_circle(0.1), 1e-6, 1.0, 200);
    ASSERT_EQ(w.points.size(), 2u);
    EXPECT_LE(distance(w.points[0], w.points[1]), 1e-6);
    const auto expected = oracle::doubling_separation_step(
        static_cast<long double>(angular_gap(w.points[0], w.points[1])), 1.0L, 200);
    ASSERT_TRUE(expected.has_value());
    EXPECT_EQ(w.step, *expected);
    EXPECT_LE(w.step, 21u);
    EXPECT_GT(w.separation, 1.0);
    EXPECT_TRUE(replay_sensitivity(p, w, 1e-6, 1.0));
}

TEST(Sensitivity, LargeDeltaSeparatesAtStepZero) {
    const Pole p = Pole::from_angle(0.0);
    const Witness w = sensitivity_witness(p, on_circle(0.3), 1.5, 1.0, 10);
    EXPECT_EQ(w.step, 0u);
    EXPECT_GT(w.separation, 1.0);
    EXPECT_LE(distance(w.points[0], w.points[1]), 1.5);
}

TEST(Sensitivity, SphereSliceBehavesLikeTheCircle) {
    const Pole p{1.0, 0.0, 0.0};
    const Witness w = sensitivity_witness(p, SpherePoint{0.0, 1.0, 0.0}, 1e-6, 1.0, 200);
    EXPECT_EQ(w.points[1][2], 0.0);
    const Witness flat = sensitivity_witness(Pole{1.0, 0.0}, SpherePoint{0.0, 1.0}, 1e-6, 1.0, 200);
    EXPECT_EQ(w.step, flat.step);
    EXPECT_TRUE(replay_sensitivity(p, w, 1e-6, 1.0));
}

TEST(Sensitivity, RandomBasePointsReplay) {
    std::mt19937_64 rng(7);
    for (std::size_t dim : {2u, 3u, 5u}) {
        for (int i = 0; i < 50; ++i) {
            const Pole p(SpherePoint::project(to_vec(oracle::random_unit(dim, rng))));
            const SpherePoint x = SpherePoint::project(to_vec(oracle::random_unit(dim, rng)));
            const Witness w = sensitivity_witness(p, x, 1e-6, 1.0, 200);
            EXPECT_LE(w.step, 25u);
            EXPECT_TRUE(replay_sensitivity(p, w, 1e-6, 1.0));
        }
    }
}

TEST(Sensitivity, PoleAndAntipodeUseTheCanonicalSlice) {
    const Pole p{0.0, 0.0, 1.0};
    for (const SpherePoint& x : {SpherePoint{0.0, 0.0, 1.0}, SpherePoint{0.0, 0.0, -1.0}}) {
        const Witness w = sensitivity_witness(p, x, 1e-6, 1.0, 200);
        EXPECT_TRUE(replay_sensitivity(p, w, 1e-6, 1.0));
    }
}

TEST(Sensitivity, DiskWitnessesReplay) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 50; ++i) {
        const Pole p(SpherePoint::project(to_vec(oracle::random_unit(3, rng))));
        const DiskPoint x(to_vec(oracle::random_interior(3, rng)));
        const Witness w = sensitivity_witness_disk(p, x, 1e-6, 1.0, 200);
        EXPECT_EQ(w.space, StateSpace::Disk);
        EXPECT_TRUE(replay_sensitivity(p, w, 1e-6, 1.0));
    }
}

TEST(Sensitivity, RejectsBadArguments) {
    const Pole p = Pole::from_angle(0.0);
    EXPECT_THROW((void)sensitivity_witness(p, on_circle(0.1), 0.0, 1.0, 10), DomainError);
    EXPECT_THROW((void)sensitivity_witness(p, on_circle(0.1), 1e-6, 2.0, 10), DomainError);
    EXPECT_THROW((void)sensitivity_witness(p, on_circle(0.1), 1e-6, 1.0, 5), BudgetExceeded);
}

// ----------------------------------------------------------------------------
// accessibility

TEST(Accessibility, SameBallGivesIdenticalPoints) {
    const Pole p = Pole::from_angle(0.0);
    const OpenBall u = OpenBall::on_sphere(on_circle(1.0), 0.1);
    const Witness w = accessibility_witness(p, u, u, 1e-10);
    EXPECT_EQ(w.points[0], w.points[1]);
    EXPECT_EQ(w.step, 1u);
    EXPECT_EQ(w.separation, 0.0);
}

TEST(Accessibility, AntipodalArcsCoverAtCoverageStep) {
    const Pole p = Pole::from_angle(0.0);
    const double rho = 0.1;
    const OpenBall u = OpenBall::on_sphere(on_circle(0.5), chord_of_angle(rho));
    const OpenBall v = OpenBall::on_sphere(on_circle(0.5 + M_PI), chord_of_angle(rho));
    const Witness w = accessibility_witness(p, u, v, 1e-10);
    EXPECT_EQ(w.step, oracle::arc_coverage_step(2.0L * rho, 2.0L * M_PIl));
    EXPECT_EQ(w.step, 5u);
    EXPECT_LE(w.separation, 1e-10);
    EXPECT_LE(distance(iterate_point(p, w.points[0], w.step, StateSpace::Sphere), p.vec()), 1e-10);
    EXPECT_TRUE(replay_accessibility(p, u, v, w, 1e-10));
}

TEST(Accessibility, RandomSphereBallsLandOnThePole) {
    std::mt19937_64 rng(3);
    for (std::size_t dim : {2u, 3u, 4u}) {
        for (int i = 0; i < 100; ++i) {
            const Pole p(SpherePoint::project(to_vec(oracle::random_unit(dim, rng))));
            const OpenBall u = OpenBall::on_sphere(
                SpherePoint::project(to_vec(oracle::random_unit(dim, rng))), 0.1);
            const OpenBall v = OpenBall::on_sphere(
                SpherePoint::project(to_vec(oracle::random_unit(dim, rng))), 0.1);
            const Witness w = accessibility_witness(p, u, v, 1e-10);
            EXPECT_GE(w.step, 1u);
            EXPECT_LE(w.step, 10u);
            EXPECT_LE(w.separation, 1e-10);
            EXPECT_TRUE(replay_accessibility(p, u, v, w, 1e-10));
        }
    }
}

TEST(Accessibility, DiskBallsReplay) {
    std::mt19937_64 rng(5);
    for (std::size_t dim : {1u, 3u}) {
        for (int i = 0; i < 50; ++i) {
            const Pole p(SpherePoint::project(to_vec(oracle::random_unit(dim, rng))));
            auto center = [&] {
                Vec c = to_vec(oracle::random_interior(dim, rng));
                return DiskPoint(0.9 * c);
            };
            const OpenBall u = OpenBall::in_disk(center(), 0.05);
            const OpenBall v = OpenBall::in_disk(center(), 0.05);
            const Witness w = accessibility_witness(p, u, v, 1e-10);
            EXPECT_TRUE(replay_accessibility(p, u, v, w, 1e-10));
        }
    }
}

TEST(Accessibility, MixedStateSpacesAreRejected) {
    const Pole p{1.0, 0.0, 0.0};
    const OpenBall u = OpenBall::on_sphere(SpherePoint{0.0, 1.0, 0.0}, 0.1);
    const OpenBall v = OpenBall::in_disk(DiskPoint(Vec{0.0, 0.0, 0.5}), 0.1);
    EXPECT_THROW((void)accessibility_witness(p, u, v, 1e-10), DomainError);
}

TEST(OpenBall, RadiusMustBePositive) {
    EXPECT_THROW((void)OpenBall::on_sphere(SpherePoint{1.0, 0.0}, 0.0), DomainError);
    EXPECT_THROW((void)OpenBall::in_disk(DiskPoint(Vec{0.0, 0.0}), -1.0), DomainError);
}

// ----------------------------------------------------------------------------
// transitivity

TEST(Transitivity, CircleHitsWithinCoveragePlusOne) {
    std::mt19937_64 rng(17);
    const double radius = 0.05;
    const double rho = 2.0 * std::asin(radius / 2.0);
    const std::size_t bound = oracle::arc_coverage_step(2.0L * rho, 2.0L * M_PIl) + 1;
    for (int i = 0; i < 30; ++i) {
        const Pole p(SpherePoint::project(to_vec(oracle::random_unit(2, rng))));
        const OpenBall u =
            OpenBall::on_sphere(SpherePoint::project(to_vec(oracle::random_unit(2, rng))), radius);
        const OpenBall v =
            OpenBall::on_sphere(SpherePoint::project(to_vec(oracle::random_unit(2, rng))), radius);
        const TransitivityProbe probe = transitivity_probe(p, u, v, 64, 256, 42);
        ASSERT_TRUE(probe.first_hit.has_value());
        EXPECT_LE(*probe.first_hit, bound);
    }
}

TEST(Transitivity, SameArcIsRevisited) {
    const Pole p = Pole::from_angle(0.4);
    const OpenBall u = OpenBall::on_sphere(on_circle(2.0), 0.05);
    const TransitivityProbe probe = transitivity_probe(p, u, u, 64, 256, 42);
    ASSERT_TRUE(probe.first_hit.has_value());
    EXPECT_GE(*probe.first_hit, 1u);
}

TEST(Transitivity, IndependentBallsOnS2NeverMeet) {
    const Pole p{1.0, 0.0, 0.0};
    const OpenBall u = OpenBall::on_sphere(SpherePoint{0.0, 1.0, 0.0}, 0.05);
    const OpenBall v = OpenBall::on_sphere(SpherePoint{0.0, 0.0, 1.0}, 0.05);
    const TransitivityProbe probe = transitivity_probe(p, u, v, 10000, 64, 42);
    EXPECT_FALSE(probe.first_hit.has_value());
    EXPECT_EQ(probe.horizon, 10000u);
    EXPECT_LE(probe.max_slice_residual, 1e-9);
    EXPECT_GE(probe.min_distance, 0.05);
}

TEST(Transitivity, SeedDeterminesTheSamples) {
    const OpenBall u = OpenBall::on_sphere(SpherePoint{0.0, 1.0, 0.0}, 0.05);
    auto a = sample_stream(42, 3);
    auto b = sample_stream(42, 3);
    auto c = sample_stream(42, 4);
    const Vec xa = sample_in_ball(u, a);
    EXPECT_EQ(xa, sample_in_ball(u, b));
    EXPECT_NE(xa, sample_in_ball(u, c));
    EXPECT_TRUE(u.contains(xa));
}

// ----------------------------------------------------------------------------
// slice confinement

TEST(SliceCertificate, CoordinateCircleStaysFlat) {
    const Pole p{1.0, 0.0, 0.0};
    const SliceCertificate cert =
        slice_confinement_certificate(p, Vec{0.0, 1.0, 0.0}, Vec{0.0, 0.0, 1.0}, 1000);
    EXPECT_EQ(cert.max_residual, 0.0);
    EXPECT_NEAR(cert.min_distance, std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(cert.slice_distance, std::sqrt(2.0), 1e-15);
    EXPECT_TRUE(cert.certified);
}

TEST(SliceCertificate, RandomOrbitsStayOnTheirSlice) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 5; ++i) {
        const Pole p(SpherePoint::project(to_vec(oracle::random_unit(3, rng))));
        const Vec x0 = to_vec(oracle::random_unit(3, rng));
        const Vec r = to_vec(oracle::random_unit(3, rng));
        const SliceCertificate cert = slice_confinement_certificate(p, x0, r, 10000);
        EXPECT_LE(cert.max_residual, 1e-9);
        EXPECT_GE(cert.min_distance, cert.slice_distance / 2.0);
    }
}

TEST(SliceCertificate, DegenerateTripleIsRejected) {
    const Pole p{1.0, 0.0, 0.0};
    EXPECT_THROW((void)slice_confinement_certificate(p, Vec{0.0, 1.0, 0.0},
                                                     Vec{0.6, 0.8, 0.0}, 10),
                 DegenerateConfiguration);
    EXPECT_THROW((void)slice_confinement_certificate(Pole{1.0, 0.0}, Vec{0.0, 1.0},
                                                     Vec{0.6, 0.8}, 10),
                 DomainError);
}

// ----------------------------------------------------------------------------
// periodic points

TEST(Periodic, PeriodOneIsAlpha) {
    const Angle alpha = Angle::turns(1, 5);
    const auto points = periodic_points_circle(alpha, 1);
    ASSERT_EQ(points.size(), 1u);
    EXPECT_EQ(points[0], alpha);
}

TEST(Periodic, PeriodTwoAtZero) {
    const auto points = periodic_points_circle(Angle::turns(0, 1), 2);
    ASSERT_EQ(points.size(), 3u);
    EXPECT_EQ(points[0], Angle::turns(0, 1));
    EXPECT_EQ(points[1], Angle::turns(1, 3));
    EXPECT_EQ(points[2], Angle::turns(2, 3));
}

TEST(Periodic, CountsGapsAndExactReturns) {
    const Rational alpha(BigInt(3), BigInt(7));
    for (unsigned k = 1; k <= 12; ++k) {
        const auto points = periodic_points_circle(Angle::turns(alpha), k);
        const std::size_t count = (std::size_t{1} << k) - 1;
        ASSERT_EQ(points.size(), count);
        for (std::size_t i = 0; i < points.size(); ++i) {
            const Rational& t = points[i].exact_turns();
            EXPECT_EQ(exact_orbit(t, alpha, k), t);
            if (i > 0) {
                EXPECT_LT(points[i - 1].exact_turns(), t);
            }
        }
        EXPECT_EQ(max_circular_gap(points), Rational(BigInt(1), BigInt(count)));
    }
}

TEST(Periodic, RequiresExactAlpha) {
    EXPECT_THROW((void)periodic_points_circle(Angle::radians(0.5), 3), MixedRepresentation);
    EXPECT_THROW((void)periodic_points_circle(Angle::turns(0, 1), 0), DomainError);
}

// ----------------------------------------------------------------------------
// Lyapunov

TEST(Lyapunov, CircleIsLogTwo) {
    EXPECT_NEAR(lyapunov_circle(0.0, 0.1, 1000), std::log(2.0), 1e-12);
    EXPECT_NEAR(lyapunov_circle(1.3, 4.0, 5000), std::log(2.0), 1e-12);
}

TEST(Lyapunov, FixedPointExpandsByTwo) {
    EXPECT_NEAR(lyapunov_circle(0.7, 0.7, 1000), std::log(2.0), 1e-12);
}

TEST(Lyapunov, SphereSliceIsLogTwo) {
    const Pole p{0.0, 0.6, 0.8};
    EXPECT_NEAR(lyapunov_sphere_slice(p, SpherePoint::project(Vec{0.3, -0.2, 0.9}), 2000),
                std::log(2.0), 1e-12);
}

TEST(Lyapunov, LogisticFactorConverges) {
    for (double sign : {1.0, -1.0}) {
        EXPECT_NEAR(lyapunov_logistic(Pole{sign}, 0.123, 1000000), std::log(2.0), 2e-3);
    }
}

TEST(Lyapunov, CriticalPointIsSingular) {
    EXPECT_THROW((void)lyapunov_logistic(Pole{1.0}, 0.5, 1000), DerivativeSingular);
}

TEST(Lyapunov, NeedsEnoughSteps) {
    EXPECT_THROW((void)lyapunov_circle(0.0, 0.1, 999), DomainError);
}

// ----------------------------------------------------------------------------
// mixing

TEST(Mixing, ArcsMixAtTheCoverageStep) {
    const Rational r(BigInt(1), BigInt(100));
    const Arc u = Arc::around(Rational(0), r);
    const Arc v = Arc::around(Rational(BigInt(1), BigInt(2)), r);
    const MixingResult m = mixing_probe(Angle::turns(0, 1), u, v, 100);
    const std::size_t expected = oracle::arc_coverage_step(1.0L / 50.0L, 1.0L);
    ASSERT_TRUE(m.k.has_value());
    EXPECT_EQ(*m.k, expected);
    EXPECT_EQ(*m.k, 6u);
    ASSERT_TRUE(m.coverage_step.has_value());
    EXPECT_EQ(*m.coverage_step, expected);
}

TEST(Mixing, FullArcsMixImmediately) {
    const Arc full{Rational(0), Rational(1)};
    const Arc small = Arc::around(Rational(BigInt(1), BigInt(3)), Rational(BigInt(1), BigInt(1000)));
    EXPECT_EQ(mixing_probe(Angle::turns(0, 1), full, small, 10).k, std::optional<std::size_t>(1));
    EXPECT_EQ(mixing_probe(Angle::turns(0, 1), small, full, 10).k, std::optional<std::size_t>(1));
}

TEST(Mixing, ShortHorizonBeforeCoverageCanMiss) {
    const Rational r(BigInt(1), BigInt(100));
    const Arc u = Arc::around(Rational(0), r);
    const Arc v = Arc::around(Rational(BigInt(1), BigInt(2)), r);
    const MixingResult m = mixing_probe(Angle::turns(0, 1), u, v, 3);
    EXPECT_FALSE(m.k.has_value());
    EXPECT_FALSE(m.coverage_step.has_value());
}

TEST(Arc, WrapAroundIntersection) {
    const Arc a = Arc::around(Rational(0), Rational(BigInt(1), BigInt(20)));
    const Arc b = Arc::around(Rational(BigInt(19), BigInt(20)), Rational(BigInt(1), BigInt(20)));
    const Arc c = Arc::around(Rational(BigInt(1), BigInt(2)), Rational(BigInt(1), BigInt(20)));
    EXPECT_TRUE(a.intersects(b));
    EXPECT_TRUE(b.intersects(a));
    EXPECT_FALSE(a.intersects(c));
}

// ----------------------------------------------------------------------------
// reports

TEST(Report, CircleIsDevaneyAndKato) {
    const ChaosReport r = analyze(SystemKind::Circle, Pole::from_angle(0.3));
    EXPECT_EQ(r.classification, Classification::Devaney);
    EXPECT_TRUE(r.devaney);
    EXPECT_TRUE(r.kato);
    EXPECT_EQ(r.transitive.holds, std::optional<bool>(true));
    ASSERT_TRUE(r.periodic_gap.has_value());
    EXPECT_NEAR(*r.periodic_gap, 2.0 * M_PI / 4095.0, 1e-15);
}

TEST(Report, IntervalIsDevaney) {
    const ChaosReport r = analyze(SystemKind::Interval, Pole{-1.0});
    EXPECT_EQ(r.classification, Classification::Devaney);
    EXPECT_TRUE(r.kato);
}

TEST(Report, SphereIsKatoButNotTransitive) {
    ReportOptions opt;
    opt.samples = 64;
    const ChaosReport r = analyze(SystemKind::Sphere, Pole{0.0, 0.0, 1.0}, opt);
    EXPECT_EQ(r.classification, Classification::Kato);
    EXPECT_FALSE(r.devaney);
    EXPECT_EQ(r.transitive.holds, std::optional<bool>(false));
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_TRUE(r.certificate->certified);
}

TEST(Report, DiskIsKatoButNotTransitive) {
    ReportOptions opt;
    opt.samples = 64;
    opt.horizon = 2000;
    const ChaosReport r = analyze(SystemKind::Disk, Pole{0.0, 1.0, 0.0, 0.0}, opt);
    EXPECT_EQ(r.classification, Classification::Kato);
    EXPECT_EQ(r.transitive.holds, std::optional<bool>(false));
}

TEST(Report, ClassificationFollowsVerdicts) {
    ChaosReport r;
    r.system = SystemKind::Sphere;
    r.sensitive.holds = true;
    r.accessible.holds = true;
    EXPECT_EQ(classify(r), Classification::Kato);
    r.transitive.holds = true;
    r.periodic_dense.holds = true;
    EXPECT_EQ(classify(r), Classification::Kato);
    r.accessible.holds = std::nullopt;
    EXPECT_EQ(classify(r), Classification::Inconclusive);
    r.accessible.holds = false;
    EXPECT_EQ(classify(r), Classification::Neither);
    r.system = SystemKind::Circle;
    r.accessible.holds = true;
    EXPECT_EQ(classify(r), Classification::Devaney);
}

TEST(Report, SameSeedSameWitnesses) {
    ReportOptions opt;
    opt.samples = 32;
    opt.horizon = 500;
    const ChaosReport a = analyze(SystemKind::Sphere, Pole{1.0, 0.0, 0.0}, opt);
    const ChaosReport b = analyze(SystemKind::Sphere, Pole{1.0, 0.0, 0.0}, opt);
    ASSERT_TRUE(a.sensitivity && b.sensitivity && a.accessibility && b.accessibility);
    EXPECT_EQ(a.sensitivity->points, b.sensitivity->points);
    EXPECT_EQ(a.accessibility->points, b.accessibility->points);
    EXPECT_EQ(a.probe->min_distance, b.probe->min_distance);
}

TEST(Report, DimensionMustMatchSystem) {
    EXPECT_THROW((void)analyze(SystemKind::Circle, Pole{1.0, 0.0, 0.0}), DomainError);
    EXPECT_THROW((void)analyze(SystemKind::Sphere, Pole{1.0, 0.0}), DomainError);
}
