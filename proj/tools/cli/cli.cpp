#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "kato/kernels.hpp"
#include "kato/precise.hpp"

namespace kato::cli {

std::uint64_t default_seed() {
    const char* env = std::getenv("KATO_SEED");
    if (env == nullptr || *env == '\0') {
        return kDefaultSeed;
    }
    const std::string text(env);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || text.front() == '-') {
        throw UsageError("KATO_SEED is not an unsigned integer: '" + text + "'");
    }
    return v;
}

Vec parse_coords(const std::string& text, const std::string& flag) {
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size() || !std::isfinite(v)) {
            throw UsageError(flag + ": cannot parse coordinate '" + item + "'");
        }
        coords.push_back(v);
    }
    if (coords.empty() || text.back() == ',') {
        throw UsageError(flag + ": expected comma-separated coordinates, got '" + text + "'");
    }
    return Vec(std::move(coords));
}

Pole make_pole(const Vec& raw, bool allow_normalize) {
    const double n = raw.norm();
    if (n == 0.0) {
        throw UsageError("--P: the pole cannot be the zero vector");
    }
    if (std::abs(n - 1.0) > 1e-6 && !allow_normalize) {
        throw UsageError("--P: norm is " + fmt17(n) +
                         ", more than 1e-6 away from 1; pass --normalize-pole to rescale it");
    }
    return Pole(SpherePoint::project(raw));
}

BallSpec parse_ball(const std::string& text, const std::string& flag) {
    const auto colon = text.rfind(':');
    if (colon == std::string::npos) {
        throw UsageError(flag + ": expected center:radius, got '" + text + "'");
    }
    const Vec center = parse_coords(text.substr(0, colon), flag);
    const std::string rtext = text.substr(colon + 1);
    std::size_t used = 0;
    double r = 0.0;
    try {
        r = std::stod(rtext, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != rtext.size() || !(r > 0.0) || !std::isfinite(r)) {
        throw UsageError(flag + ": radius must be a positive number, got '" + rtext + "'");
    }
    return {center, r};
}

namespace {

// ---------------------------------------------------------------------------
// option storage shared by the subcommands

struct Options {
    std::string pole;
    std::string alpha;
    bool normalize_pole = false;
    std::string theta;
    std::string x0;
    std::string y;
    std::string x;
    std::string r;
    std::string u;
    std::string v;
    std::string space = "sphere";
    std::string format;
    std::string out;
    std::string system = "circle";
    std::string builtin;
    std::string input;
    std::string kind = "plane";
    std::string report;
    bool exact = false;
    bool no_renormalize = false;
    bool json = false;
    std::size_t iterate_steps = 10;
    std::size_t lyapunov_steps = 100000;
    std::size_t cert_steps = 10000;
    std::size_t sensitivity_max_k = 200;
    std::size_t transitivity_max_k = 10000;
    std::size_t transitivity_samples = 256;
    std::size_t curve_samples = 1000;
    std::size_t verify_samples = 0;
    std::size_t mixing_horizon = 64;
    std::size_t verify_horizon = 0;
    std::size_t dim = 2;
    unsigned k = 3;
    double delta = 1e-6;
    double sensitivity_lambda = 1.0;
    double access_lambda = 1e-10;
    double beta = 0.5;
    std::optional<std::uint64_t> seed;
};

std::uint64_t seed_of(const Options& o) { return o.seed ? *o.seed : default_seed(); }

StateSpace space_of(const Options& o) {
    if (o.space == "sphere") {
        return StateSpace::Sphere;
    }
    if (o.space == "disk") {
        return StateSpace::Disk;
    }
    throw UsageError("--space must be 'sphere' or 'disk', got '" + o.space + "'");
}

Angle parse_float_angle(const std::string& text, const std::string& flag) {
    try {
        const Angle a = parse_angle(text);
        return a.is_exact() ? Angle::radians(a.to_radians()) : a;
    } catch (const DomainError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

/// Exact angle; a decimal is only accepted when it is zero.
Angle parse_exact_angle(const std::string& text, const std::string& flag) {
    Angle a = Angle::turns(0, 1);
    try {
        a = parse_angle(text);
    } catch (const DomainError& e) {
        throw UsageError(flag + ": " + e.what());
    }
    if (a.is_exact()) {
        return a;
    }
    if (a.float_radians() == 0.0) {
        return Angle::turns(0, 1);
    }
    throw UsageError(flag + ": exact mode needs a rational angle p/q (meaning 2*pi*p/q), got '" +
                     text + "'");
}

Rational parse_rational(const std::string& text, const std::string& flag) {
    try {
        const auto slash = text.find('/');
        if (slash == std::string::npos) {
            return Rational(BigInt(text));
        }
        const BigInt den(text.substr(slash + 1));
        if (den == 0) {
            throw UsageError(flag + ": zero denominator");
        }
        return Rational(BigInt(text.substr(0, slash)), den);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError(flag + ": expected an integer or p/q, got '" + text + "'");
    }
}

Pole resolve_pole(const Options& o, std::optional<std::size_t> expected_dim = std::nullopt) {
    std::optional<Pole> p;
    if (!o.pole.empty()) {
        p = make_pole(parse_coords(o.pole, "--P"), o.normalize_pole);
    } else if (!o.alpha.empty()) {
        p = Pole::from_angle(parse_float_angle(o.alpha, "--alpha").to_radians());
    } else if (expected_dim) {
        p = Pole(SpherePoint::project(Vec::basis(*expected_dim, 0)));
    } else {
        throw UsageError("a pole is required: pass --P c0,c1,... or --alpha <angle>");
    }
    if (expected_dim && p->dim() != *expected_dim) {
        throw UsageError("--P has " + std::to_string(p->dim()) + " coordinates, expected " +
                         std::to_string(*expected_dim));
    }
    return *p;
}

SpherePoint sphere_point(const Vec& v, const std::string& flag) {
    if (std::abs(v.norm() - 1.0) > tol::kUnitNorm) {
        throw UsageError(flag + ": point is not on the unit sphere (norm " + fmt17(v.norm()) + ")");
    }
    return SpherePoint(v);
}

DiskPoint disk_point(const Vec& v, const std::string& flag) {
    if (v.norm() > 1.0 + tol::kUnitNorm) {
        throw UsageError(flag + ": point is outside the unit disk (norm " + fmt17(v.norm()) + ")");
    }
    return DiskPoint(v);
}

OpenBall make_ball(const BallSpec& b, StateSpace space, const std::string& flag) {
    return space == StateSpace::Sphere ? OpenBall::on_sphere(sphere_point(b.center, flag), b.radius)
                                       : OpenBall::in_disk(disk_point(b.center, flag), b.radius);
}

/// Writes to --out when given, else to the command's stdout.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) {
                throw UsageError("--out: cannot open '" + path + "' for writing");
            }
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

nlohmann::ordered_json coords_json(const Vec& v) {
    auto a = nlohmann::ordered_json::array();
    for (double c : v.coords()) {
        a.push_back(c);
    }
    return a;
}

std::string join(const Vec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        s += (i ? "," : "") + fmt17(v[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// commands

int cmd_iterate(const Options& o, std::ostream& out) {
    if (o.format != "" && o.format != "csv" && o.format != "svg") {
        throw UsageError("--format must be csv or svg for iterate");
    }
    const std::size_t steps = o.iterate_steps;
    if (o.exact) {
        if (o.alpha.empty() || o.theta.empty()) {
            throw UsageError("--exact needs --alpha and --theta");
        }
        const Angle alpha = parse_exact_angle(o.alpha, "--alpha");
        Angle theta = parse_exact_angle(o.theta, "--theta");
        const PreciseVec pp = circle_point(alpha.exact_turns());
        const Pole p(SpherePoint::project(to_double(pp)));
        Orbit orbit;
        std::vector<Angle> angles;
        const Vec start = to_double(circle_point(theta.exact_turns()));
        for (std::size_t k = 0; k <= steps; ++k) {
            const Vec x = to_double(circle_point(theta.exact_turns()));
            orbit.norm_drift.push_back(std::abs(x.norm() - 1.0));
            orbit.slice_residual.push_back(span_residual(p, start, x));
            orbit.points.push_back(x);
            angles.push_back(theta);
            theta = angle_step(alpha, theta);
        }
        Sink sink(o.out, out);
        if (o.format == "svg") {
            write_orbit_svg(*sink, orbit, slice_frame_through(p.point(), start));
            return kExitOk;
        }
        *sink << "step,theta,x0,x1,norm_drift,slice_residual\n";
        for (std::size_t k = 0; k < orbit.size(); ++k) {
            *sink << k << ',' << angles[k].to_string() << ',' << fmt17(orbit.points[k][0]) << ','
                  << fmt17(orbit.points[k][1]) << ',' << fmt17(orbit.norm_drift[k]) << ','
                  << fmt17(orbit.slice_residual[k]) << '\n';
        }
        return kExitOk;
    }

    const Pole p = resolve_pole(o);
    Vec x0 = Vec::zeros(p.dim());
    if (!o.x0.empty()) {
        x0 = parse_coords(o.x0, "--x0");
    } else if (!o.theta.empty()) {
        if (p.dim() != 2) {
            throw UsageError("--theta only applies on the circle; use --x0");
        }
        const double t = parse_float_angle(o.theta, "--theta").to_radians();
        x0 = Vec{std::cos(t), std::sin(t)};
    } else {
        throw UsageError("iterate needs --x0 or --theta");
    }
    if (x0.dim() != p.dim()) {
        throw UsageError("--x0 has " + std::to_string(x0.dim()) + " coordinates, the pole has " +
                         std::to_string(p.dim()));
    }
    const StateSpace space = space_of(o);
    Renormalize policy = Renormalize::EveryStep;
    if (space == StateSpace::Sphere) {
        (void)sphere_point(x0, "--x0");
        if (o.no_renormalize) {
            policy = Renormalize::Off;
        }
    } else {
        (void)disk_point(x0, "--x0");
        policy = Renormalize::Off;
    }
    const Orbit orbit = iterate(p, x0, steps, policy);
    Sink sink(o.out, out);
    if (o.format == "svg") {
        write_orbit_svg(*sink, orbit, slice_frame_through(p.point(), x0));
    } else {
        write_orbit_csv(*sink, orbit);
    }
    return kExitOk;
}

int cmd_preimage(const Options& o, std::ostream& out) {
    const Pole p = resolve_pole(o);
    if (o.y.empty()) {
        throw UsageError("preimage needs --y");
    }
    const Vec y = parse_coords(o.y, "--y");
    if (y.dim() != p.dim()) {
        throw UsageError("--y and the pole differ in dimension");
    }
    if (space_of(o) == StateSpace::Sphere) {
        const SpherePoint x = preimage_sphere(p, sphere_point(y, "--y"));
        out << "x: " << join(x.vec()) << '\n';
        out << "residual: " << fmt17(distance(phi(p, x.vec()), y)) << '\n';
    } else {
        (void)disk_point(y, "--y");
        const Vec x = preimage_disk(p, y);
        out << "x: " << join(x) << '\n';
        out << "scale: " << fmt17(preimage_disk_scale(p, y)) << '\n';
        out << "residual: " << fmt17(distance(phi(p, x), y)) << '\n';
    }
    return kExitOk;
}

Vec point_arg(const Options& o, const Pole& p) {
    Vec x = Vec::zeros(p.dim());
    if (!o.x.empty()) {
        x = parse_coords(o.x, "--x");
    } else if (!o.theta.empty() && p.dim() == 2) {
        const double t = parse_float_angle(o.theta, "--theta").to_radians();
        x = Vec{std::cos(t), std::sin(t)};
    } else {
        throw UsageError("a base point is required: pass --x (or --theta on the circle)");
    }
    if (x.dim() != p.dim()) {
        throw UsageError("--x and the pole differ in dimension");
    }
    return x;
}

nlohmann::ordered_json witness_json(const char* kind, const Pole& p, const Witness& w) {
    return {{"kind", kind},
            {"space", to_string(w.space)},
            {"pole", coords_json(p.vec())},
            {"points", {coords_json(w.points[0]), coords_json(w.points[1])}},
            {"step", w.step},
            {"separation", w.separation}};
}

int cmd_sensitivity(const Options& o, std::ostream& out) {
    const Pole p = resolve_pole(o);
    const Vec x = point_arg(o, p);
    const StateSpace space = space_of(o);
    const Witness w = space == StateSpace::Sphere
                          ? sensitivity_witness(p, sphere_point(x, "--x"), o.delta, o.sensitivity_lambda,
                                                o.sensitivity_max_k)
                          : sensitivity_witness_disk(p, disk_point(x, "--x"), o.delta,
                                                     o.sensitivity_lambda, o.sensitivity_max_k);
    const bool replayed = replay_sensitivity(p, w, o.delta, o.sensitivity_lambda);
    nlohmann::ordered_json j = witness_json("sensitivity", p, w);
    j["delta"] = o.delta;
    j["lambda"] = o.sensitivity_lambda;
    j["replayed"] = replayed;
    Sink sink(o.out, out);
    *sink << j.dump(2) << '\n';
    return replayed ? kExitOk : kExitInvariant;
}

int cmd_accessibility(const Options& o, std::ostream& out) {
    const Pole p = resolve_pole(o);
    if (o.u.empty() || o.v.empty()) {
        throw UsageError("accessibility needs --U and --V (center:radius)");
    }
    const StateSpace space = space_of(o);
    const OpenBall u = make_ball(parse_ball(o.u, "--U"), space, "--U");
    const OpenBall v = make_ball(parse_ball(o.v, "--V"), space, "--V");
    if (u.dim() != p.dim() || v.dim() != p.dim()) {
        throw UsageError("--U, --V and the pole differ in dimension");
    }
    const Witness w = accessibility_witness(p, u, v, o.access_lambda);
    const bool replayed = replay_accessibility(p, u, v, w, o.access_lambda);
    nlohmann::ordered_json j = witness_json("accessibility", p, w);
    j["U"] = {{"center", coords_json(u.center())}, {"radius", u.radius()}};
    j["V"] = {{"center", coords_json(v.center())}, {"radius", v.radius()}};
    j["lambda"] = o.access_lambda;
    j["replayed"] = replayed;
    Sink sink(o.out, out);
    *sink << j.dump(2) << '\n';
    return replayed ? kExitOk : kExitInvariant;
}

int cmd_transitivity(const Options& o, std::ostream& out, bool dim_given) {
    const Pole p = dim_given ? resolve_pole(o, o.dim + 1) : resolve_pole(o);
    if (o.u.empty() || o.v.empty()) {
        throw UsageError("transitivity needs --U and --V (center:radius)");
    }
    const StateSpace space = space_of(o);
    const OpenBall u = make_ball(parse_ball(o.u, "--U"), space, "--U");
    const OpenBall v = make_ball(parse_ball(o.v, "--V"), space, "--V");
    if (u.dim() != p.dim() || v.dim() != p.dim()) {
        throw UsageError("--U, --V and the pole differ in dimension");
    }
    const std::uint64_t seed = seed_of(o);
    const TransitivityProbe probe = transitivity_probe(p, u, v, o.transitivity_max_k,
                                                          o.transitivity_samples, seed);
    if (probe.first_hit) {
        out << "result: hit at k = " << *probe.first_hit << '\n';
    } else {
        out << "result: no hit within k <= " << probe.horizon << '\n';
    }
    out << "samples: " << probe.samples << '\n';
    out << "seed: " << probe.seed << '\n';
    out << "min_distance_to_V_center: " << fmt17(probe.min_distance) << '\n';
    out << "max_slice_residual: " << fmt17(probe.max_slice_residual) << '\n';
    out << "kernels: " << kernels::isa_name(kernels::active().isa) << '\n';
    if (!probe.first_hit && p.dim() >= 3) {
        try {
            const SliceCertificate c =
                slice_confinement_certificate(p, u.center(), v.center(),
                                              o.transitivity_max_k, space);
            out << "slice confinement: orbits stay in span(P, x0); max residual "
                << fmt17(c.max_residual) << ", min distance to V center " << fmt17(c.min_distance)
                << ", V center is " << fmt17(c.slice_distance) << " from the slice"
                << (c.certified ? " (certified)" : " (not certified)") << '\n';
        } catch (const DegenerateConfiguration&) {
            out << "slice confinement: not applicable, P and the ball centers are dependent\n";
        }
    }
    return kExitOk;
}

int cmd_periodic(const Options& o, std::ostream& out) {
    const Angle alpha = parse_exact_angle(o.alpha.empty() ? "0" : o.alpha, "--alpha");
    const auto points = periodic_points_circle(alpha, o.k);
    Sink sink(o.out, out);
    if (o.format == "csv") {
        *sink << "j,theta_turns,theta_radians\n";
        for (std::size_t j = 0; j < points.size(); ++j) {
            *sink << j << ',' << points[j].to_string() << ',' << fmt17(points[j].to_radians())
                  << '\n';
        }
        return kExitOk;
    }
    const Rational gap = max_circular_gap(points);
    *sink << "alpha: " << alpha.to_string() << '\n';
    *sink << "period: " << o.k << '\n';
    *sink << "count: " << points.size() << '\n';
    *sink << "max_gap_turns: " << boost::multiprecision::numerator(gap).str() << '/'
          << boost::multiprecision::denominator(gap).str() << '\n';
    *sink << "max_gap_radians: " << fmt17(kTwoPi * gap.convert_to<double>()) << '\n';
    for (const Angle& a : points) {
        *sink << "theta: " << a.to_string() << '\n';
    }
    return kExitOk;
}

int cmd_lyapunov(const Options& o, std::ostream& out) {
    double estimate = 0.0;
    if (o.system == "circle") {
        const double alpha = o.alpha.empty() ? 0.0 : parse_float_angle(o.alpha, "--alpha").to_radians();
        const double theta = o.theta.empty() ? 0.1 : parse_float_angle(o.theta, "--theta").to_radians();
        estimate = lyapunov_circle(alpha, theta, o.lyapunov_steps);
    } else if (o.system == "logistic") {
        const Pole p = o.pole.empty() ? Pole{1.0} : resolve_pole(o, 1);
        const double x0 = o.x0.empty() ? 0.123 : parse_coords(o.x0, "--x0")[0];
        estimate = lyapunov_logistic(p, x0, o.lyapunov_steps);
    } else if (o.system == "sphere") {
        const Pole p = resolve_pole(o);
        if (o.x0.empty()) {
            throw UsageError("--system sphere needs --x0");
        }
        estimate = lyapunov_sphere_slice(p, sphere_point(parse_coords(o.x0, "--x0"), "--x0"),
                                         o.lyapunov_steps);
    } else {
        throw UsageError("--system must be circle, logistic or sphere");
    }
    out << "system: " << o.system << '\n';
    out << "steps: " << o.lyapunov_steps << '\n';
    out << "estimate: " << fmt17(estimate) << '\n';
    out << "ln2: " << fmt17(std::log(2.0)) << '\n';
    out << "difference: " << fmt17(estimate - std::log(2.0)) << '\n';
    return kExitOk;
}

Arc parse_arc(const std::string& text, const std::string& flag) {
    if (text == "full") {
        return Arc{Rational(0), Rational(1)};
    }
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw UsageError(flag + ": expected center:radius in turns (p/q:p/q) or 'full'");
    }
    const Rational r = parse_rational(text.substr(colon + 1), flag);
    if (r <= 0) {
        throw UsageError(flag + ": radius must be positive");
    }
    return Arc::around(parse_rational(text.substr(0, colon), flag), r);
}

int cmd_mixing(const Options& o, std::ostream& out) {
    const Angle alpha = parse_exact_angle(o.alpha.empty() ? "0" : o.alpha, "--alpha");
    if (o.u.empty() || o.v.empty()) {
        throw UsageError("mixing needs --U and --V (center:radius in turns)");
    }
    const MixingResult m = mixing_probe(alpha, parse_arc(o.u, "--U"), parse_arc(o.v, "--V"),
                                        o.mixing_horizon);
    out << "mixing_k: " << (m.k ? std::to_string(*m.k) : "none") << '\n';
    out << "coverage_step: " << (m.coverage_step ? std::to_string(*m.coverage_step) : "none")
        << '\n';
    out << "horizon: " << m.horizon << '\n';
    return kExitOk;
}

int cmd_slice_cert(const Options& o, std::ostream& out) {
    const Pole p = resolve_pole(o);
    if (o.x0.empty() || o.r.empty()) {
        throw UsageError("slice-cert needs --x0 and --R");
    }
    const StateSpace space = space_of(o);
    const Vec x0 = parse_coords(o.x0, "--x0");
    const Vec r = parse_coords(o.r, "--R");
    if (space == StateSpace::Sphere) {
        (void)sphere_point(x0, "--x0");
    } else {
        (void)disk_point(x0, "--x0");
    }
    const SliceCertificate c = slice_confinement_certificate(p, x0, r, o.cert_steps, space);
    out << "steps: " << c.steps << '\n';
    out << "max_residual: " << fmt17(c.max_residual) << '\n';
    out << "min_distance: " << fmt17(c.min_distance) << '\n';
    out << "slice_distance: " << fmt17(c.slice_distance) << '\n';
    out << "certified: " << (c.certified ? "yes" : "no") << '\n';
    return c.certified ? kExitOk : kExitInvariant;
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("--input: cannot open '" + path + "'");
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            std::size_t used = 0;
            try {
                row.push_back(std::stod(cell, &used));
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != cell.size()) {
                numeric = false;
                break;
            }
        }
        if (!numeric) {
            if (lineno == 1) {
                continue; // header
            }
            throw UsageError("--input: line " + std::to_string(lineno) + " is not numeric");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_curves(const Options& o, std::ostream& out, std::ostream& err) {
    if (o.builtin.empty() == o.input.empty()) {
        throw UsageError("curves needs exactly one of --builtin or --input");
    }
    if (o.format != "" && o.format != "csv" && o.format != "svg") {
        throw UsageError("--format must be csv or svg for curves");
    }
    std::string kind = o.kind;
    if (!o.builtin.empty()) {
        if (o.builtin == "circle" || o.builtin == "line") {
            kind = "plane";
        } else if (o.builtin == "small-circle") {
            kind = "sphere";
        } else {
            throw UsageError("--builtin must be circle, line or small-circle");
        }
    }
    const std::size_t n = o.curve_samples;

    if (kind == "plane") {
        Vec2 p{0.0, 0.0};
        if (!o.pole.empty()) {
            const Vec pv = parse_coords(o.pole, "--P");
            if (pv.dim() != 2) {
                throw UsageError("--P must have two coordinates for plane curves");
            }
            p = {pv[0], pv[1]};
        }
        PlaneCurveOutput c;
        if (o.builtin == "circle") {
            c.samples = builtin::unit_circle(n);
        } else if (o.builtin == "line") {
            c.samples = builtin::horizontal_line(n);
        } else {
            for (const auto& row : read_csv_rows(o.input)) {
                if (row.size() != 5) {
                    throw UsageError("--input: plane rows need s,gamma_x,gamma_y,normal_x,normal_y");
                }
                c.samples.emplace_back(row[0], Vec2{row[1], row[2]}, Vec2{row[3], row[4]});
            }
        }
        c.pedal = plane_pedal(c.samples, p);
        c.orthotomic = plane_orthotomic(c.samples, p);
        double worst = 0.0;
        for (std::size_t i = 0; i < c.samples.size(); ++i) {
            const Vec2 f = reflect_through(c.pedal[i], p);
            worst = std::max(worst, std::hypot(c.orthotomic[i][0] - f[0], c.orthotomic[i][1] - f[1]));
        }
        Sink sink(o.out, out);
        if (o.format == "svg") {
            write_curve_svg(*sink, c, p);
        } else {
            write_curve_csv(*sink, c);
        }
        if (worst > 1e-12) {
            err << "invariant violated: orthotomic differs from 2 ped - P by " << fmt17(worst) << '\n';
            return kExitInvariant;
        }
        return kExitOk;
    }
    if (kind != "sphere") {
        throw UsageError("--kind must be plane or sphere");
    }
    SphereCurveOutput c;
    Pole p = Pole{0.0, 0.0, 1.0};
    if (!o.builtin.empty()) {
        p = o.pole.empty() ? p : resolve_pole(o);
        c.samples = builtin::small_circle(p, o.beta, n);
    } else {
        p = resolve_pole(o);
        for (const auto& row : read_csv_rows(o.input)) {
            if (row.size() != p.dim() + 1) {
                throw UsageError("--input: sphere rows need s followed by " +
                                 std::to_string(p.dim()) + " pedal coordinates");
            }
            c.samples.push_back(
                {row[0], sphere_point(Vec(std::vector<double>(row.begin() + 1, row.end())),
                                      "--input")});
        }
    }
    c.orthotomic = sphere_orthotomic_from_pedal(c.samples, p);
    double worst = 0.0;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        c.midpoint_defect.push_back(midpoint_defect(c.orthotomic[i].vec(), c.samples[i].pedal.vec(), p));
        worst = std::max(worst, c.midpoint_defect.back());
    }
    Sink sink(o.out, out);
    if (o.format == "svg") {
        write_curve_svg(*sink, c, p);
    } else {
        write_curve_csv(*sink, c);
    }
    if (worst > 1e-12) {
        err << "invariant violated: midpoint identity off by " << fmt17(worst) << '\n';
        return kExitInvariant;
    }
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, bool horizon_given, bool samples_given) {
    VerifyConfig config;
    config.m = o.dim;
    config.seed = seed_of(o);
    if (!o.pole.empty()) {
        config.pole = make_pole(parse_coords(o.pole, "--P"), o.normalize_pole).vec();
    }
    if (horizon_given) {
        config.options.horizon = o.verify_horizon;
    }
    if (samples_given) {
        config.options.samples = o.verify_samples;
    }
    const VerifyOutcome v = verify(config);
    if (!o.report.empty()) {
        std::ofstream file(o.report, std::ios::binary);
        if (!file) {
            throw UsageError("--report: cannot open '" + o.report + "' for writing");
        }
        file << v.report.dump(2) << '\n';
    }
    if (o.json) {
        out << v.report.dump(2) << '\n';
        return v.passed ? kExitOk : kExitInvariant;
    }
    char line[160];
    std::snprintf(line, sizeof line, "%-28s %8s %12s %10s  %s\n", "invariant", "samples",
                  "max_error", "tolerance", "result");
    out << line;
    for (const InvariantResult& r : v.invariants) {
        std::snprintf(line, sizeof line, "%-28s %8zu %12.3e %10.0e  %s\n", r.name.c_str(),
                      r.samples, r.max_error, r.tolerance, r.passed ? "PASS" : "FAIL");
        out << line;
    }
    const auto yn = [](const Verdict& x) {
        return x.holds ? (*x.holds ? "yes" : "no") : "undetermined";
    };
    for (const ChaosReport& r : v.reports) {
        out << "system " << to_string(r.system) << ": " << to_string(r.classification)
            << " (sensitive " << yn(r.sensitive) << ", accessible " << yn(r.accessible)
            << ", transitive " << yn(r.transitive) << ", periodic-dense " << yn(r.periodic_dense)
            << ", kato " << (r.kato ? "yes" : "no") << ")\n";
    }
    out << "seed: " << config.seed << '\n';
    out << (v.passed ? "all checks passed" : "CHECKS FAILED") << '\n';
    return v.passed ? kExitOk : kExitInvariant;
}

int cmd_replay(const Options& o, std::ostream& out) {
    if (o.report.empty()) {
        throw UsageError("replay needs --report <file>");
    }
    std::ifstream in(o.report);
    if (!in) {
        throw UsageError("--report: cannot open '" + o.report + "'");
    }
    nlohmann::json report;
    try {
        report = nlohmann::json::parse(in);
        const bool ok = replay_report(report, out);
        out << (ok ? "all witnesses replayed" : "REPLAY FAILED") << '\n';
        return ok ? kExitOk : kExitInvariant;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("--report: malformed report: ") + e.what());
    }
}

// ---------------------------------------------------------------------------

void add_pole(CLI::App* c, Options& o) {
    c->add_option("--P", o.pole, "pole coordinates, comma separated");
    c->add_option("--alpha", o.alpha, "pole angle on the circle: radians or p/q turns");
    c->add_flag("--normalize-pole", o.normalize_pole, "rescale a pole that is not unit length");
}

void add_space(CLI::App* c, Options& o) {
    c->add_option("--space", o.space, "state space: sphere or disk")->capture_default_str();
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Quadratic sphere map Phi_P(x) = 2(x.P)x - P: orbits, chaos witnesses, curves"};
    app.name("kato");
    app.require_subcommand(1);

    auto* it = app.add_subcommand("iterate", "iterate Phi_P and print the orbit");
    add_pole(it, o);
    add_space(it, o);
    it->add_option("--x0", o.x0, "start point coordinates");
    it->add_option("--theta", o.theta, "start angle on the circle");
    it->add_option("--steps", o.iterate_steps, "number of steps")->capture_default_str();
    it->add_flag("--exact", o.exact, "exact rational angle iteration on the circle");
    it->add_flag("--no-renormalize", o.no_renormalize, "do not re-project sphere iterates");
    it->add_option("--format", o.format, "csv (default) or svg");
    it->add_option("--out", o.out, "output file (default stdout)");

    auto* pre = app.add_subcommand("preimage", "a point x with Phi_P(x) = y");
    add_pole(pre, o);
    add_space(pre, o);
    pre->add_option("--y", o.y, "target coordinates");

    auto* sen = app.add_subcommand("sensitivity", "sensitivity witness near a base point");
    add_pole(sen, o);
    add_space(sen, o);
    sen->add_option("--x", o.x, "base point coordinates");
    sen->add_option("--theta", o.theta, "base angle on the circle");
    sen->add_option("--delta", o.delta, "initial distance bound")->capture_default_str();
    sen->add_option("--lambda", o.sensitivity_lambda, "separation to exceed")->capture_default_str();
    sen->add_option("--max-k", o.sensitivity_max_k, "step budget")->capture_default_str();
    sen->add_option("--out", o.out, "output file (default stdout)");

    auto* acc = app.add_subcommand("accessibility", "accessibility witness for two balls");
    add_pole(acc, o);
    add_space(acc, o);
    acc->add_option("--U", o.u, "first ball, center:radius");
    acc->add_option("--V", o.v, "second ball, center:radius");
    acc->add_option("--lambda", o.access_lambda, "closeness to reach")->capture_default_str();
    acc->add_option("--out", o.out, "output file (default stdout)");

    auto* tra = app.add_subcommand("transitivity", "sampled transitivity probe");
    add_pole(tra, o);
    add_space(tra, o);
    auto* tra_dim = tra->add_option("--dim", o.dim, "sphere dimension m (pole in R^{m+1})");
    tra->add_option("--U", o.u, "source ball, center:radius");
    tra->add_option("--V", o.v, "target ball, center:radius");
    tra->add_option("--max-k", o.transitivity_max_k, "horizon")->capture_default_str();
    tra->add_option("--samples", o.transitivity_samples, "sample count")->capture_default_str();
    tra->add_option("--seed", o.seed, "RNG seed (default KATO_SEED or 42)");

    auto* per = app.add_subcommand("periodic", "exact periodic points of the circle map");
    per->add_option("--alpha", o.alpha, "pole angle, p/q turns");
    per->add_option("--k", o.k, "period")->capture_default_str();
    per->add_option("--format", o.format, "text (default) or csv");
    per->add_option("--out", o.out, "output file (default stdout)");

    auto* lya = app.add_subcommand("lyapunov", "Lyapunov exponent estimate");
    lya->add_option("--system", o.system, "circle, logistic or sphere")->capture_default_str();
    add_pole(lya, o);
    lya->add_option("--theta", o.theta, "start angle (circle)");
    lya->add_option("--x0", o.x0, "start point (logistic: x in [0,1]; sphere: coordinates)");
    lya->add_option("--steps", o.lyapunov_steps, "orbit length")->capture_default_str();

    auto* mix = app.add_subcommand("mixing", "exact arc-image mixing probe on the circle");
    mix->add_option("--alpha", o.alpha, "pole angle, p/q turns");
    mix->add_option("--U", o.u, "arc center:radius in turns, or 'full'");
    mix->add_option("--V", o.v, "arc center:radius in turns, or 'full'");
    mix->add_option("--horizon", o.mixing_horizon, "last step examined")->capture_default_str();

    auto* sc = app.add_subcommand("slice-cert", "slice confinement certificate");
    add_pole(sc, o);
    add_space(sc, o);
    sc->add_option("--x0", o.x0, "orbit start");
    sc->add_option("--R", o.r, "point the orbit should avoid");
    sc->add_option("--steps", o.cert_steps, "orbit length")->capture_default_str();

    auto* cur = app.add_subcommand("curves", "pedal and orthotomic curves");
    cur->add_option("--builtin", o.builtin, "circle, line or small-circle");
    cur->add_option("--input", o.input, "CSV of samples");
    cur->add_option("--kind", o.kind, "plane or sphere (for --input)")->capture_default_str();
    add_pole(cur, o);
    cur->add_option("--beta", o.beta, "colatitude of the small circle")->capture_default_str();
    cur->add_option("--samples", o.curve_samples, "builtin sample count")->capture_default_str();
    cur->add_option("--format", o.format, "csv (default) or svg");
    cur->add_option("--out", o.out, "output file (default stdout)");

    auto* ver = app.add_subcommand("verify", "run the invariant suite and chaos checks");
    ver->add_option("--dim", o.dim, "sphere dimension m")->capture_default_str();
    ver->add_option("--seed", o.seed, "RNG seed (default KATO_SEED or 42)");
    ver->add_option("--P", o.pole, "pole for the chaos checks (default: drawn from the seed)");
    ver->add_flag("--normalize-pole", o.normalize_pole, "rescale a pole that is not unit length");
    ver->add_option("--report", o.report, "write the JSON report here");
    ver->add_flag("--json", o.json, "print the JSON report instead of the table");
    auto* ver_horizon = ver->add_option("--horizon", o.verify_horizon, "transitivity horizon");
    auto* ver_samples = ver->add_option("--samples", o.verify_samples, "transitivity samples");

    auto* rep = app.add_subcommand("replay", "re-simulate the witnesses of a report");
    rep->add_option("--report", o.report, "report file")->required();

    std::vector<std::string> argv_store{"kato"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (it->parsed()) {
            return cmd_iterate(o, out);
        }
        if (pre->parsed()) {
            return cmd_preimage(o, out);
        }
        if (sen->parsed()) {
            return cmd_sensitivity(o, out);
        }
        if (acc->parsed()) {
            return cmd_accessibility(o, out);
        }
        if (tra->parsed()) {
            return cmd_transitivity(o, out, tra_dim->count() > 0);
        }
        if (per->parsed()) {
            return cmd_periodic(o, out);
        }
        if (lya->parsed()) {
            return cmd_lyapunov(o, out);
        }
        if (mix->parsed()) {
            return cmd_mixing(o, out);
        }
        if (sc->parsed()) {
            return cmd_slice_cert(o, out);
        }
        if (cur->parsed()) {
            return cmd_curves(o, out, err);
        }
        if (ver->parsed()) {
            return cmd_verify(o, out, ver_horizon->count() > 0, ver_samples->count() > 0);
        }
        if (rep->parsed()) {
            return cmd_replay(o, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExceeded& e) {
        err << "failed: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const DerivativeSingular& e) {
        err << "failed: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const PedalDegenerate& e) {
        err << "failed: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace kato::cli
