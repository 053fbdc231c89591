#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kato/chaos.hpp"
#include "kato/curves.hpp"
#include "kato/dynamics.hpp"

namespace kato::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitUsage = 2;

/// Bad command-line input; maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Entry point. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// KATO_SEED if set and valid, else the library default.
[[nodiscard]] std::uint64_t default_seed();

// ---------------------------------------------------------------------------
// parsing

[[nodiscard]] Vec parse_coords(const std::string& text, const std::string& flag);

/// Normalizes; rejects ||P|| off by more than 1e-6 unless allow_normalize.
[[nodiscard]] Pole make_pole(const Vec& raw, bool allow_normalize);

struct BallSpec {
    Vec center;
    double radius;
};

/// "c0,c1,...:r"
[[nodiscard]] BallSpec parse_ball(const std::string& text, const std::string& flag);

// ---------------------------------------------------------------------------
// invariant suite

struct InvariantResult {
    std::string name;
    std::size_t samples = 0;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Sphere dimension m: ambient R^{m+1}.
[[nodiscard]] std::vector<InvariantResult> run_invariants(std::size_t m, std::uint64_t seed);

struct VerifyConfig {
    std::size_t m = 2;
    std::uint64_t seed = kDefaultSeed;
    std::optional<Vec> pole;
    ReportOptions options;
};

struct VerifyOutcome {
    std::vector<InvariantResult> invariants;
    std::vector<ChaosReport> reports;
    nlohmann::ordered_json report;
    bool passed = false;
};

[[nodiscard]] VerifyOutcome verify(const VerifyConfig& config);

/// Re-simulates every witness of a report. One line per witness on out.
[[nodiscard]] bool replay_report(const nlohmann::json& report, std::ostream& out);

// ---------------------------------------------------------------------------
// output

[[nodiscard]] std::string fmt17(double v);

void write_orbit_csv(std::ostream& os, const Orbit& orbit);
/// Orbit projected onto the slice plane (P, W) over the unit circle.
void write_orbit_svg(std::ostream& os, const Orbit& orbit, const SliceFrame& frame);

struct PlaneCurveOutput {
    std::vector<PlaneCurveSample> samples;
    std::vector<Vec2> pedal;
    std::vector<Vec2> orthotomic;
};

struct SphereCurveOutput {
    std::vector<SphereCurveSample> samples;
    std::vector<SpherePoint> orthotomic;
    std::vector<double> midpoint_defect;
};

void write_curve_csv(std::ostream& os, const PlaneCurveOutput& c);
void write_curve_csv(std::ostream& os, const SphereCurveOutput& c);
void write_curve_svg(std::ostream& os, const PlaneCurveOutput& c, Vec2 p);
void write_curve_svg(std::ostream& os, const SphereCurveOutput& c, const Pole& p);

} // namespace kato::cli
