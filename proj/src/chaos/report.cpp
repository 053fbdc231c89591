#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "kato/chaos.hpp"

namespace kato {

const char* to_string(SystemKind kind) noexcept {
    switch (kind) {
    case SystemKind::Circle:
        return "circle";
    case SystemKind::Interval:
        return "interval";
    case SystemKind::Sphere:
        return "sphere";
    case SystemKind::Disk:
        return "disk";
    }
    return "unknown";
}

const char* to_string(Evidence e) noexcept {
    switch (e) {
    case Evidence::Constructive:
        return "constructive";
    case Evidence::BoundedHorizon:
        return "bounded-horizon";
    case Evidence::Exact:
        return "exact";
    case Evidence::None:
        return "none";
    }
    return "unknown";
}

const char* to_string(Classification c) noexcept {
    switch (c) {
    case Classification::Devaney:
        return "Devaney";
    case Classification::Kato:
        return "Kato";
    case Classification::Neither:
        return "neither";
    case Classification::Inconclusive:
        return "inconclusive";
    }
    return "unknown";
}

Classification classify(const ChaosReport& report) {
    const auto yes = [](const Verdict& v) { return v.holds.has_value() && *v.holds; };
    const bool one_dimensional =
        report.system == SystemKind::Circle || report.system == SystemKind::Interval;
    if (one_dimensional && yes(report.sensitive) && yes(report.transitive) &&
        yes(report.periodic_dense)) {
        return Classification::Devaney;
    }
    if (yes(report.sensitive) && yes(report.accessible)) {
        return Classification::Kato;
    }
    if (!report.sensitive.holds.has_value() || !report.accessible.holds.has_value()) {
        return Classification::Inconclusive;
    }
    return Classification::Neither;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

Vec random_on_sphere(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        std::vector<double> g(dim);
        for (double& c : g) {
            c = normal(rng);
        }
        Vec v(std::move(g));
        if (v.norm() > 1e-3) {
            return v.normalized();
        }
    }
}

struct Placement {
    Vec base;
    Vec q;
    Vec r;
};

/// Base point for sensitivity and two ball centers. For m >= 2 the centers
/// are placed so R sits well away from every slice circle through the ball at Q.
Placement place(SystemKind kind, const Pole& p, std::mt19937_64& rng) {
    const std::size_t dim = p.dim();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    switch (kind) {
    case SystemKind::Interval: {
        auto pick = [&] { return Vec{-0.9 + 1.8 * unit(rng)}; };
        Vec base = pick();
        Vec q = pick();
        Vec r = pick();
        return {base, q, r};
    }
    case SystemKind::Circle:
        return {random_on_sphere(dim, rng), random_on_sphere(dim, rng), random_on_sphere(dim, rng)};
    case SystemKind::Sphere:
    case SystemKind::Disk: {
        const Vec base = random_on_sphere(dim, rng);
        Vec q = random_on_sphere(dim, rng);
        while (std::abs(q.dot(p.vec())) > 0.5) {
            q = random_on_sphere(dim, rng);
        }
        const SliceFrame frame = slice_frame_through(p.point(), q);
        Vec r = random_on_sphere(dim, rng);
        for (;;) {
            const std::vector<Vec> triple{p.vec(), q, r};
            const Vec in_plane = frame.pole().vec().dot(r) * frame.pole().vec() +
                                 frame.complement().vec().dot(r) * frame.complement().vec();
            if (gram_determinant(triple) > 0.1 && (r - in_plane).norm() > 0.5) {
                break;
            }
            r = random_on_sphere(dim, rng);
        }
        if (kind == SystemKind::Disk) {
            return {0.6 * base, 0.5 * q, 0.5 * r};
        }
        return {base, q, r};
    }
    }
    throw DomainError("unknown system");
}

void check_dimension(SystemKind kind, std::size_t dim) {
    const bool ok = (kind == SystemKind::Circle && dim == 2) ||
                    (kind == SystemKind::Interval && dim == 1) ||
                    ((kind == SystemKind::Sphere || kind == SystemKind::Disk) && dim >= 3);
    if (!ok) {
        throw DomainError(std::string("system '") + to_string(kind) +
                          "' does not match pole dimension " + std::to_string(dim));
    }
}

} // namespace

ChaosReport analyze(SystemKind kind, const Pole& p, const ReportOptions& options) {
    check_dimension(kind, p.dim());
    ChaosReport report;
    report.system = kind;
    report.pole = p.vec();
    report.options = options;

    const StateSpace space =
        (kind == SystemKind::Circle || kind == SystemKind::Sphere) ? StateSpace::Sphere
                                                                   : StateSpace::Disk;
    std::mt19937_64 rng = sample_stream(options.seed, 0);
    const Placement at = place(kind, p, rng);

    // Sensitivity.
    try {
        Witness w = space == StateSpace::Sphere
                        ? sensitivity_witness(p, SpherePoint::project(at.base), options.delta,
                                              options.lambda, options.max_k)
                        : sensitivity_witness_disk(p, DiskPoint(at.base), options.delta,
                                                   options.lambda, options.max_k);
        const bool replayed = replay_sensitivity(p, w, options.delta, options.lambda);
        report.sensitive = {replayed ? std::optional<bool>(true) : std::nullopt,
                            Evidence::Constructive,
                            "lambda = " + fmt(options.lambda) + " (chord), delta = " +
                                fmt(options.delta) + ", separated at k = " +
                                std::to_string(w.step) + (replayed ? "" : "; replay FAILED")};
        report.sensitivity = std::move(w);
    } catch (const BudgetExceeded& e) {
        report.sensitive = {std::nullopt, Evidence::None, e.what()};
    }

    // Accessibility.
    const OpenBall u = space == StateSpace::Sphere
                           ? OpenBall::on_sphere(SpherePoint::project(at.q), options.ball_radius)
                           : OpenBall::in_disk(DiskPoint(at.q), options.ball_radius);
    const OpenBall v = space == StateSpace::Sphere
                           ? OpenBall::on_sphere(SpherePoint::project(at.r), options.ball_radius)
                           : OpenBall::in_disk(DiskPoint(at.r), options.ball_radius);
    report.access_u = u;
    report.access_v = v;
    try {
        Witness w = accessibility_witness(p, u, v, options.access_lambda);
        const bool replayed = replay_accessibility(p, u, v, w, options.access_lambda);
        report.accessible = {replayed ? std::optional<bool>(true) : std::nullopt,
                             Evidence::Constructive,
                             "both k-th iterates land on P; k = " + std::to_string(w.step) +
                                 ", separation " + fmt(w.separation) +
                                 (replayed ? "" : "; replay FAILED")};
        report.accessibility = std::move(w);
    } catch (const BudgetExceeded& e) {
        report.accessible = {std::nullopt, Evidence::None, e.what()};
    }

    // Transitivity.
    const bool one_dimensional = kind == SystemKind::Circle || kind == SystemKind::Interval;
    const std::size_t horizon = one_dimensional ? std::min<std::size_t>(options.horizon, 64)
                                                : options.horizon;
    TransitivityProbe probe =
        transitivity_probe(p, u, v, horizon, options.samples, options.seed);
    if (one_dimensional) {
        if (probe.first_hit) {
            report.transitive = {true, Evidence::BoundedHorizon,
                                 "a sample of U entered V at k = " +
                                     std::to_string(*probe.first_hit)};
        } else {
            report.transitive = {std::nullopt, Evidence::BoundedHorizon,
                                 "no hit within k <= " + std::to_string(horizon)};
        }
    } else {
        const SliceCertificate cert =
            slice_confinement_certificate(p, at.q, at.r, options.horizon, space);
        if (!probe.first_hit && cert.certified) {
            report.transitive = {false, Evidence::BoundedHorizon,
                                 "no sample of U entered V within k <= " +
                                     std::to_string(horizon) +
                                     "; orbits stay in span(P, x0) (max residual " +
                                     fmt(std::max(probe.max_slice_residual, cert.max_residual)) +
                                     ")"};
        } else {
            report.transitive = {std::nullopt, Evidence::BoundedHorizon,
                                 probe.first_hit ? "unexpected hit at k = " +
                                                       std::to_string(*probe.first_hit)
                                                 : "slice confinement not certified"};
        }
        report.certificate = cert;
    }
    report.probe = probe;

    // Dense periodic points.
    const unsigned depth = options.periodic_depth;
    if (kind == SystemKind::Circle) {
        // theta -> theta - alpha conjugates 2 theta - alpha to plain doubling,
        // so the gap statistic is computed on the alpha = 0 enumeration.
        const auto points = periodic_points_circle(Angle::turns(0, 1), depth);
        const double gap = kTwoPi * max_circular_gap(points).convert_to<double>();
        report.periodic_gap = gap;
        report.periodic_dense = {true, Evidence::Exact,
                                 std::to_string(points.size()) + " points of period dividing " +
                                     std::to_string(depth) + ", max gap " + fmt(gap) + " rad"};
    } else if (kind == SystemKind::Interval) {
        // Phi_P is semi-conjugate to doubling through t = sign(P) cos(theta).
        const auto points = periodic_points_circle(Angle::turns(0, 1), depth);
        const double sign = p.vec()[0] > 0.0 ? 1.0 : -1.0;
        std::vector<double> ts{-1.0, 1.0};
        for (const Angle& a : points) {
            ts.push_back(sign * std::cos(a.to_radians()));
        }
        std::sort(ts.begin(), ts.end());
        double gap = 0.0;
        for (std::size_t i = 1; i < ts.size(); ++i) {
            gap = std::max(gap, ts[i] - ts[i - 1]);
        }
        report.periodic_gap = gap;
        report.periodic_dense = {true, Evidence::Exact,
                                 "projected circle periodic points, max gap " + fmt(gap)};
    } else {
        report.periodic_dense = {std::nullopt, Evidence::None,
                                 "not evaluated: transitivity already fails for m >= 2"};
    }

    report.classification = classify(report);
    const auto yes = [](const Verdict& v) { return v.holds.has_value() && *v.holds; };
    report.kato = yes(report.sensitive) && yes(report.accessible);
    report.devaney = report.classification == Classification::Devaney;
    return report;
}

} // namespace kato
