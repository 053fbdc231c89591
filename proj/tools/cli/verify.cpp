#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

#include "cli.hpp"
#include "kato/precise.hpp"

namespace kato::cli {

namespace {

constexpr double kIdentityTol = 1e-12;
constexpr double kRoundTripTol = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

Vec random_unit(std::size_t dim, std::mt19937_64& rng) {
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

Vec random_interior(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = std::pow(unit(rng), 1.0 / static_cast<double>(dim)) * (1.0 - 1e-6);
    return r * random_unit(dim, rng);
}

Pole random_pole(std::size_t dim, std::mt19937_64& rng) {
    return Pole(SpherePoint::project(random_unit(dim, rng)));
}

Rotation random_rotation(std::size_t dim, std::mt19937_64& rng) {
    if (dim < 2) {
        return Rotation::identity(dim);
    }
    const Rotation a = rotate_pole_to_axis(SpherePoint::project(random_unit(dim, rng)));
    const Rotation b = rotate_pole_to_axis(SpherePoint::project(random_unit(dim, rng)));
    return a.transposed().compose(b);
}

/// Runs check(rng) `samples` times and keeps the largest error.
InvariantResult measure(std::string name, double tolerance, std::size_t samples,
                        std::mt19937_64 rng, const std::function<double(std::mt19937_64&)>& check) {
    InvariantResult r{std::move(name), samples, 0.0, tolerance, false};
    for (std::size_t i = 0; i < samples; ++i) {
        const double e = check(rng);
        if (!(e <= r.max_error)) {
            r.max_error = std::isnan(e) ? kInf : e;
        }
    }
    r.passed = r.max_error <= tolerance;
    return r;
}

} // namespace

std::vector<InvariantResult> run_invariants(std::size_t m, std::uint64_t seed) {
    const std::size_t n = m + 1;
    std::vector<InvariantResult> out;
    std::uint64_t stream = 1000;
    auto next = [&] { return sample_stream(seed, stream++); };

    out.push_back(measure("norm preservation", kIdentityTol, 10000, next(), [&](auto& rng) {
        const Pole p = random_pole(n, rng);
        return std::abs(phi(p, random_unit(n, rng)).norm() - 1.0);
    }));

    out.push_back(measure("disk invariance", kIdentityTol, 10000, next(), [&](auto& rng) {
        const Pole p = random_pole(n, rng);
        return std::max(0.0, phi(p, random_interior(n, rng)).norm() - 1.0);
    }));

    std::size_t index = 0;
    out.push_back(measure("sphere preimage round trip", kRoundTripTol, 10000, next(),
                          [&](auto& rng) {
        const Pole p = random_pole(n, rng);
        const std::size_t i = index++;
        Vec y = random_unit(n, rng);
        if (m == 0) {
            if (i % 2 == 1) {
                try {
                    (void)preimage_sphere(p, SpherePoint::project(-1.0 * p.vec()));
                    return kInf;
                } catch (const NoPreimage&) {
                    return 0.0;
                }
            }
            y = p.vec();
        } else if (i % 100 == 0) {
            y = -1.0 * p.vec();
        } else if (i % 10 == 0) {
            std::uniform_real_distribution<double> expo(-12.0, -1.0);
            y = (-1.0 * p.vec() + std::pow(10.0, expo(rng)) * y).normalized();
        }
        const SpherePoint target = SpherePoint::project(y);
        const SpherePoint x = preimage_sphere(p, target);
        return distance(phi(p, x.vec()), target.vec());
    }));

    out.push_back(measure("disk preimage round trip", kRoundTripTol, 10000, next(),
                          [&](auto& rng) {
        const Pole p = random_pole(n, rng);
        const Vec y = random_interior(n, rng);
        return distance(phi(p, preimage_disk(p, y)), y);
    }));

    {
        InvariantResult r{"logistic conjugacy", 200000, 0.0, kIdentityTol, false};
        const std::size_t grid = 100000;
        for (const double sign : {1.0, -1.0}) {
            const Pole p{sign};
            for (std::size_t i = 0; i < grid; ++i) {
                const double x = static_cast<double>(i) / static_cast<double>(grid - 1);
                r.max_error =
                    std::max(r.max_error, std::abs(interval_conjugacy(p, x) - 4.0 * x * (1.0 - x)));
            }
        }
        r.passed = r.max_error <= r.tolerance;
        out.push_back(r);
    }

    out.push_back(measure("chebyshev factor", kIdentityTol, 10000, next(), [&](auto& rng) {
        const Pole p = random_pole(n, rng);
        const Vec x = random_unit(n, rng);
        const double t = chebyshev_projection(p, x);
        return std::abs(chebyshev_projection(p, phi(p, x)) - (2.0 * t * t - 1.0));
    }));

    out.push_back(measure("equivariance", kIdentityTol, 1000, next(), [&](auto& rng) {
        const Rotation r = random_rotation(n, rng);
        const Pole p = random_pole(n, rng);
        const auto [a, b] = equivariance_conjugate(r, p, random_unit(n, rng));
        return distance(a, b);
    }));

    if (m >= 1) {
        out.push_back(measure("slice closure", kIdentityTol, 10000, next(), [&](auto& rng) {
            const Pole p = random_pole(n, rng);
            const Vec x = random_unit(n, rng);
            return span_residual(p, x, phi(p, x));
        }));

        // Per step: theta_k read back from x_k, then one ambient step against
        // one angle step. Rounding is re-synchronized every step.
        const SliceFrame plane(SpherePoint{1.0, 0.0}, SpherePoint{0.0, 1.0});
        out.push_back(measure("angle reduction (per step)", kIdentityTol, 1000, next(),
                              [&](auto& rng) {
            std::uniform_real_distribution<double> angle(0.0, kTwoPi);
            const Angle alpha = Angle::radians(angle(rng));
            const Pole p = Pole::from_angle(alpha.float_radians());
            Vec x = slice_embed(plane, angle(rng)).vec();
            double worst = 0.0;
            for (int k = 0; k < 50; ++k) {
                const Angle theta = Angle::radians(slice_angle(plane, x));
                x = phi(p, x).normalized();
                worst = std::max(worst,
                                 distance(x, slice_embed(plane, angle_step(alpha, theta).float_radians()).vec()));
            }
            return worst;
        }));

        // Whole orbit: exact angles against an extended-precision ambient orbit.
        out.push_back(measure("angle reduction (orbit)", kIdentityTol, 100, next(),
                              [&](auto& rng) {
            std::uniform_int_distribution<long long> den(1000000, 2000000);
            const long long qa = den(rng);
            const long long qt = den(rng);
            std::uniform_int_distribution<long long> na(0, qa - 1);
            std::uniform_int_distribution<long long> nt(0, qt - 1);
            const Angle alpha = Angle::turns(na(rng), qa);
            Angle theta = Angle::turns(nt(rng), qt);
            const PreciseVec pole = circle_point(alpha.exact_turns());
            PreciseVec x = circle_point(theta.exact_turns());
            double worst = 0.0;
            for (int k = 0; k < 50; ++k) {
                x = normalized(phi_precise(pole, x));
                theta = angle_step(alpha, theta);
                worst = std::max(
                    worst, distance(x, circle_point(theta.exact_turns())).convert_to<double>());
            }
            return worst;
        }));
    }
    return out;
}

namespace {

nlohmann::ordered_json coords_json(const Vec& v) {
    auto a = nlohmann::ordered_json::array();
    for (double c : v.coords()) {
        a.push_back(c);
    }
    return a;
}

nlohmann::ordered_json verdict_json(const Verdict& v) {
    nlohmann::ordered_json j;
    j["holds"] = v.holds ? nlohmann::ordered_json(*v.holds) : nlohmann::ordered_json(nullptr);
    j["evidence"] = to_string(v.evidence);
    j["note"] = v.note;
    return j;
}

nlohmann::ordered_json ball_json(const OpenBall& b) {
    return {{"center", coords_json(b.center())}, {"radius", b.radius()}};
}

nlohmann::ordered_json system_json(const ChaosReport& r) {
    nlohmann::ordered_json j;
    j["system"] = to_string(r.system);
    j["pole"] = coords_json(r.pole);
    j["classification"] = to_string(r.classification);
    j["kato"] = r.kato;
    j["devaney"] = r.devaney;
    j["sensitive"] = verdict_json(r.sensitive);
    j["accessible"] = verdict_json(r.accessible);
    j["transitive"] = verdict_json(r.transitive);
    j["periodic_dense"] = verdict_json(r.periodic_dense);
    if (r.periodic_gap) {
        j["periodic_gap"] = *r.periodic_gap;
    }
    if (r.probe) {
        const TransitivityProbe& p = *r.probe;
        j["probe"] = {{"first_hit", p.first_hit ? nlohmann::ordered_json(*p.first_hit)
                                                : nlohmann::ordered_json(nullptr)},
                      {"horizon", p.horizon},
                      {"samples", p.samples},
                      {"min_distance", p.min_distance},
                      {"max_slice_residual", p.max_slice_residual}};
    }
    if (r.certificate) {
        const SliceCertificate& c = *r.certificate;
        j["certificate"] = {{"steps", c.steps},
                            {"max_residual", c.max_residual},
                            {"min_distance", c.min_distance},
                            {"slice_distance", c.slice_distance},
                            {"certified", c.certified}};
    }
    return j;
}

bool meets_expectation(const ChaosReport& r) {
    if (!r.kato) {
        return false;
    }
    if (r.system == SystemKind::Circle || r.system == SystemKind::Interval) {
        return r.devaney;
    }
    return r.transitive.holds == std::optional<bool>(false);
}

} // namespace

VerifyOutcome verify(const VerifyConfig& config) {
    const std::size_t n = config.m + 1;
    VerifyOutcome out;
    out.invariants = run_invariants(config.m, config.seed);

    Pole pole = Pole{1.0};
    if (config.pole) {
        if (config.pole->dim() != n) {
            throw UsageError("--P has dimension " + std::to_string(config.pole->dim()) +
                             ", expected " + std::to_string(n) + " for --dim " +
                             std::to_string(config.m));
        }
        pole = Pole(SpherePoint::project(*config.pole));
    } else {
        std::mt19937_64 rng = sample_stream(config.seed, 7);
        pole = random_pole(n, rng);
    }

    ReportOptions options = config.options;
    options.seed = config.seed;
    std::vector<SystemKind> systems;
    if (config.m == 0) {
        systems = {SystemKind::Interval};
    } else if (config.m == 1) {
        systems = {SystemKind::Circle};
    } else {
        systems = {SystemKind::Sphere, SystemKind::Disk};
    }
    for (SystemKind kind : systems) {
        out.reports.push_back(analyze(kind, pole, options));
    }

    out.passed = std::all_of(out.invariants.begin(), out.invariants.end(),
                             [](const InvariantResult& r) { return r.passed; }) &&
                 std::all_of(out.reports.begin(), out.reports.end(), meets_expectation);

    nlohmann::ordered_json& j = out.report;
    j["config"] = {{"command", "verify"},
                   {"dim", config.m},
                   {"ambient_dim", n},
                   {"pole", coords_json(pole.vec())},
                   {"seed", config.seed},
                   {"delta", options.delta},
                   {"lambda", options.lambda},
                   {"access_lambda", options.access_lambda},
                   {"ball_radius", options.ball_radius},
                   {"max_k", options.max_k},
                   {"horizon", options.horizon},
                   {"samples", options.samples},
                   {"periodic_depth", options.periodic_depth},
                   {"tolerances",
                    {{"unit_norm", tol::kUnitNorm},
                     {"identity", kIdentityTol},
                     {"round_trip", kRoundTripTol},
                     {"confinement", kConfinementTolerance},
                     {"gram", kGramThreshold}}}};

    auto invariants = nlohmann::ordered_json::array();
    for (const InvariantResult& r : out.invariants) {
        invariants.push_back({{"name", r.name},
                              {"samples", r.samples},
                              {"max_error", r.max_error},
                              {"tolerance", r.tolerance},
                              {"passed", r.passed}});
    }
    auto systems_json = nlohmann::ordered_json::array();
    auto witnesses = nlohmann::ordered_json::array();
    for (const ChaosReport& r : out.reports) {
        systems_json.push_back(system_json(r));
        if (r.sensitivity) {
            const Witness& w = *r.sensitivity;
            witnesses.push_back({{"kind", "sensitivity"},
                                 {"system", to_string(r.system)},
                                 {"space", to_string(w.space)},
                                 {"pole", coords_json(r.pole)},
                                 {"points", {coords_json(w.points[0]), coords_json(w.points[1])}},
                                 {"step", w.step},
                                 {"separation", w.separation},
                                 {"delta", options.delta},
                                 {"lambda", options.lambda}});
        }
        if (r.accessibility) {
            const Witness& w = *r.accessibility;
            witnesses.push_back({{"kind", "accessibility"},
                                 {"system", to_string(r.system)},
                                 {"space", to_string(w.space)},
                                 {"pole", coords_json(r.pole)},
                                 {"points", {coords_json(w.points[0]), coords_json(w.points[1])}},
                                 {"step", w.step},
                                 {"separation", w.separation},
                                 {"U", ball_json(*r.access_u)},
                                 {"V", ball_json(*r.access_v)},
                                 {"lambda", options.access_lambda}});
        }
    }
    j["verdicts"] = {{"passed", out.passed}, {"invariants", invariants}, {"systems", systems_json}};
    j["witnesses"] = witnesses;
    j["seed"] = config.seed;
    return out;
}

namespace {

Vec vec_from(const nlohmann::json& a) {
    std::vector<double> c;
    for (const auto& v : a) {
        c.push_back(v.get<double>());
    }
    return Vec(std::move(c));
}

OpenBall ball_from(const nlohmann::json& b, StateSpace space) {
    const Vec c = vec_from(b.at("center"));
    const double r = b.at("radius").get<double>();
    return space == StateSpace::Sphere ? OpenBall::on_sphere(SpherePoint::project(c), r)
                                       : OpenBall::in_disk(DiskPoint(c), r);
}

} // namespace

bool replay_report(const nlohmann::json& report, std::ostream& out) {
    bool all = true;
    const auto& witnesses = report.at("witnesses");
    if (witnesses.empty()) {
        out << "no witnesses to replay\n";
        return false;
    }
    std::size_t i = 0;
    for (const auto& w : witnesses) {
        const std::string kind = w.at("kind").get<std::string>();
        const StateSpace space =
            w.at("space").get<std::string>() == "disk" ? StateSpace::Disk : StateSpace::Sphere;
        const Pole p(SpherePoint::project(vec_from(w.at("pole"))));
        Witness wit;
        wit.space = space;
        for (const auto& pt : w.at("points")) {
            wit.points.push_back(vec_from(pt));
        }
        wit.step = w.at("step").get<std::size_t>();
        wit.separation = w.at("separation").get<double>();
        bool ok = false;
        if (kind == "sensitivity") {
            ok = replay_sensitivity(p, wit, w.at("delta").get<double>(), w.at("lambda").get<double>());
        } else if (kind == "accessibility") {
            ok = replay_accessibility(p, ball_from(w.at("U"), space), ball_from(w.at("V"), space),
                                      wit, w.at("lambda").get<double>());
        }
        out << "witness " << i++ << " (" << kind << ", " << w.value("system", "?")
            << ", k = " << wit.step << "): " << (ok ? "PASS" : "FAIL") << '\n';
        all = all && ok;
    }
    return all;
}

} // namespace kato::cli
