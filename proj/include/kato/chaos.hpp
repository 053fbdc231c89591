#pragma once

// Executable versions of the chaos properties (sensitivity, accessibility,
// transitivity, mixing, dense periodic points) for Phi_P on spheres and disks.
//
// Constructive routes return replayable witnesses. Probes that can only give
// bounded-horizon evidence say so in their result types.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "kato/angle.hpp"
#include "kato/dynamics.hpp"
#include "kato/geometry.hpp"

namespace kato {

inline constexpr std::uint64_t kDefaultSeed = 42;

/// Gram determinant of (P, x0, R) below this rejects a confinement certificate.
inline constexpr double kGramThreshold = 1e-9;

/// Slice residual accepted as "stayed on the invariant circle".
inline constexpr double kConfinementTolerance = 1e-9;

enum class StateSpace { Sphere, Disk };

[[nodiscard]] const char* to_string(StateSpace space) noexcept;

/// Metric ball (chord distance) inside S^n or D^{n+1}.
class OpenBall {
public:
    static OpenBall on_sphere(const SpherePoint& center, double radius);
    static OpenBall in_disk(const DiskPoint& center, double radius);

    [[nodiscard]] const Vec& center() const noexcept { return center_; }
    [[nodiscard]] double radius() const noexcept { return radius_; }
    [[nodiscard]] StateSpace space() const noexcept { return space_; }
    [[nodiscard]] std::size_t dim() const noexcept { return center_.dim(); }

    /// Strict containment, plus membership in the state space.
    [[nodiscard]] bool contains(const Vec& x) const;

private:
    OpenBall(Vec center, double radius, StateSpace space);

    Vec center_;
    double radius_;
    StateSpace space_;
};

/// One or two state points, the step k and the distance reached at step k.
struct Witness {
    StateSpace space = StateSpace::Sphere;
    std::vector<Vec> points;
    std::size_t step = 0;
    double separation = 0.0;
};

/// Renormalizes on the sphere, not in the disk.
[[nodiscard]] Vec iterate_point(const Pole& p, const Vec& x, std::size_t k, StateSpace space);

/// y within delta of x on the slice circle through x whose orbit separates
/// from x's by more than lambda. Throws BudgetExceeded past max_k.
[[nodiscard]] Witness sensitivity_witness(const Pole& p, const SpherePoint& x, double delta,
                                          double lambda, std::size_t max_k);

/// Disk variant: perturbs the Chebyshev coordinate x.P.
[[nodiscard]] Witness sensitivity_witness_disk(const Pole& p, const DiskPoint& x, double delta,
                                               double lambda, std::size_t max_k);

/// u in U, v in V and k > 0 with Phi^k(u), Phi^k(v) within lambda.
/// Built so that both k-th iterates equal P.
[[nodiscard]] Witness accessibility_witness(const Pole& p, const OpenBall& u, const OpenBall& v,
                                            double lambda);

/// Re-simulates a witness from its stored points.
[[nodiscard]] bool replay_sensitivity(const Pole& p, const Witness& w, double delta,
                                      double lambda);
[[nodiscard]] bool replay_accessibility(const Pole& p, const OpenBall& u, const OpenBall& v,
                                        const Witness& w, double lambda);

struct TransitivityProbe {
    /// First k in [1, max_k] at which a sample of U lands in V.
    std::optional<std::size_t> first_hit;
    std::size_t horizon = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    /// Closest approach of any sample to V's center over the steps run.
    double min_distance = 0.0;
    /// Largest distance of any sample from the plane span(P, its start point).
    double max_slice_residual = 0.0;
};

/// Samples U (seed-deterministic, one RNG stream per sample) and iterates
/// every sample up to max_k steps with the batch kernels.
[[nodiscard]] TransitivityProbe transitivity_probe(const Pole& p, const OpenBall& u,
                                                   const OpenBall& v, std::size_t max_k,
                                                   std::size_t samples,
                                                   std::uint64_t seed = kDefaultSeed);

/// RNG stream for sample `index` under `seed`.
[[nodiscard]] std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index);

/// Random point of the ball (and of its state space).
[[nodiscard]] Vec sample_in_ball(const OpenBall& ball, std::mt19937_64& rng);

struct SliceCertificate {
    std::size_t steps = 0;
    double max_residual = 0.0;
    /// min_k ||x_k - R||
    double min_distance = 0.0;
    /// Distance from R to the invariant circle (sphere) or planar disk through P and x0.
    double slice_distance = 0.0;
    bool certified = false;
};

/// Evidence that the orbit of x0 never approaches R: it stays in span(P, x0).
/// Needs dim >= 3 and P, x0, R linearly independent (DegenerateConfiguration).
[[nodiscard]] SliceCertificate slice_confinement_certificate(const Pole& p, const Vec& x0,
                                                             const Vec& r, std::size_t k,
                                                             StateSpace space = StateSpace::Sphere);

/// All theta with Phi^k(theta) = theta, theta = alpha + j/(2^k - 1) turns,
/// ascending in [0, 1). Each one is checked by k exact angle steps.
[[nodiscard]] std::vector<Angle> periodic_points_circle(const Angle& alpha, unsigned k);

/// Largest circular gap between consecutive exact angles, in turns.
[[nodiscard]] Rational max_circular_gap(const std::vector<Angle>& sorted_angles);

/// Mean of log|d Phi| along a renormalized slice orbit of S^1 at angle theta0.
[[nodiscard]] double lyapunov_circle(double alpha, double theta0, std::size_t k);
/// Same along the slice circle of a sphere orbit.
[[nodiscard]] double lyapunov_sphere_slice(const Pole& p, const SpherePoint& x0, std::size_t k);
/// Logistic factor h_P^{-1} Phi_P h_P on [0, 1], P = ±1. Throws DerivativeSingular
/// if the orbit hits the critical point.
[[nodiscard]] double lyapunov_logistic(const Pole& p, double x0, std::size_t k);

inline constexpr std::size_t kMinLyapunovSteps = 1000;

/// Open arc (start, start + length) of S^1 in turns. length >= 1 is the full circle.
struct Arc {
    Rational start;
    Rational length;

    static Arc around(const Rational& center, const Rational& radius);
    [[nodiscard]] bool full() const { return length >= 1; }
    [[nodiscard]] bool intersects(const Arc& other) const;
    /// Image under theta -> 2 theta - alpha.
    [[nodiscard]] Arc doubled(const Rational& alpha) const;
};

struct MixingResult {
    /// Least k with Phi^m(U) meeting V for every m in [k, horizon].
    std::optional<std::size_t> k;
    /// First step at which Phi^m(U) is the whole circle.
    std::optional<std::size_t> coverage_step;
    std::size_t horizon = 0;
};

[[nodiscard]] MixingResult mixing_probe(const Angle& alpha, const Arc& u, const Arc& v,
                                        std::size_t horizon);

// ---------------------------------------------------------------------------
// Reports

enum class SystemKind { Circle, Interval, Sphere, Disk };

[[nodiscard]] const char* to_string(SystemKind kind) noexcept;

enum class Evidence { Constructive, BoundedHorizon, Exact, None };

[[nodiscard]] const char* to_string(Evidence e) noexcept;

struct Verdict {
    /// nullopt: undetermined.
    std::optional<bool> holds;
    Evidence evidence = Evidence::None;
    std::string note;
};

enum class Classification { Devaney, Kato, Neither, Inconclusive };

[[nodiscard]] const char* to_string(Classification c) noexcept;

struct ReportOptions {
    std::uint64_t seed = kDefaultSeed;
    double delta = 1e-6;
    double lambda = 1.0;
    double access_lambda = 1e-10;
    double ball_radius = 0.05;
    std::size_t max_k = 200;
    std::size_t horizon = 10000;
    std::size_t samples = 256;
    unsigned periodic_depth = 12;
};

struct ChaosReport {
    SystemKind system = SystemKind::Circle;
    Vec pole = Vec{1.0};
    ReportOptions options;

    Verdict sensitive;
    std::optional<Witness> sensitivity;
    Verdict accessible;
    std::optional<Witness> accessibility;
    std::optional<OpenBall> access_u;
    std::optional<OpenBall> access_v;
    Verdict transitive;
    std::optional<TransitivityProbe> probe;
    std::optional<SliceCertificate> certificate;
    Verdict periodic_dense;
    /// Max gap between periodic points of period dividing periodic_depth.
    std::optional<double> periodic_gap;

    Classification classification = Classification::Inconclusive;
    bool devaney = false;
    bool kato = false;
};

/// Classification implied by the component verdicts.
[[nodiscard]] Classification classify(const ChaosReport& report);

/// Runs every check for the given system. Circle needs dim 2, Interval dim 1,
/// Sphere and Disk dim >= 3.
[[nodiscard]] ChaosReport analyze(SystemKind kind, const Pole& p, const ReportOptions& options = {});

} // namespace kato
