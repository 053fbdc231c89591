#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "cli.hpp"

namespace kato::cli {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_orbit_csv(std::ostream& os, const Orbit& orbit) {
    const std::size_t dim = orbit.points.empty() ? 0 : orbit.points.front().dim();
    os << "step";
    for (std::size_t j = 0; j < dim; ++j) {
        os << ",x" << j;
    }
    os << ",norm_drift,slice_residual\n";
    for (std::size_t k = 0; k < orbit.size(); ++k) {
        os << k;
        for (double c : orbit.points[k].coords()) {
            os << ',' << fmt17(c);
        }
        os << ',' << fmt17(orbit.norm_drift[k]) << ',' << fmt17(orbit.slice_residual[k]) << '\n';
    }
}

namespace {

constexpr double kCanvas = 400.0;

/// Maps [-extent, extent]^2 onto the canvas, y up.
struct Viewport {
    double extent;

    [[nodiscard]] std::string point(double x, double y) const {
        const double scale = kCanvas / (2.0 * extent);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f,%.3f", (x + extent) * scale,
                      (extent - y) * scale);
        return buf;
    }
};

void svg_open(std::ostream& os) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
       << kCanvas << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void svg_polyline(std::ostream& os, const Viewport& vp, const std::vector<Vec2>& pts,
                  const char* color, bool closed) {
    os << (closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        os << (i ? " " : "") << vp.point(pts[i][0], pts[i][1]);
    }
    os << "\"/>\n";
}

void svg_dot(std::ostream& os, const Viewport& vp, Vec2 at, const char* color) {
    const std::string xy = vp.point(at[0], at[1]);
    const auto comma = xy.find(',');
    os << "<circle cx=\"" << xy.substr(0, comma) << "\" cy=\"" << xy.substr(comma + 1)
       << "\" r=\"3\" fill=\"" << color << "\"/>\n";
}

std::vector<Vec2> unit_circle_points() {
    std::vector<Vec2> pts;
    for (int i = 0; i < 256; ++i) {
        const double t = kTwoPi * i / 256.0;
        pts.push_back({std::cos(t), std::sin(t)});
    }
    return pts;
}

double extent_of(const std::vector<std::vector<Vec2>>& sets) {
    double e = 1.0;
    for (const auto& set : sets) {
        for (const Vec2& v : set) {
            e = std::max({e, std::abs(v[0]), std::abs(v[1])});
        }
    }
    return 1.1 * e;
}

} // namespace

void write_orbit_svg(std::ostream& os, const Orbit& orbit, const SliceFrame& frame) {
    const Vec& pv = frame.pole().vec();
    const Vec& wv = frame.complement().vec();
    std::vector<Vec2> pts;
    pts.reserve(orbit.size());
    for (const Vec& x : orbit.points) {
        pts.push_back({x.dot(pv), x.dot(wv)});
    }
    const Viewport vp{extent_of({pts})};
    svg_open(os);
    svg_polyline(os, vp, unit_circle_points(), "#bbbbbb", true);
    svg_polyline(os, vp, pts, "#1f77b4", false);
    svg_dot(os, vp, {1.0, 0.0}, "#d62728");
    os << "</svg>\n";
}

void write_curve_csv(std::ostream& os, const PlaneCurveOutput& c) {
    os << "s,gamma_x,gamma_y,normal_x,normal_y,pedal_x,pedal_y,orthotomic_x,orthotomic_y\n";
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        const PlaneCurveSample& s = c.samples[i];
        os << fmt17(s.s) << ',' << fmt17(s.position[0]) << ',' << fmt17(s.position[1]) << ','
           << fmt17(s.unit_normal[0]) << ',' << fmt17(s.unit_normal[1]) << ','
           << fmt17(c.pedal[i][0]) << ',' << fmt17(c.pedal[i][1]) << ','
           << fmt17(c.orthotomic[i][0]) << ',' << fmt17(c.orthotomic[i][1]) << '\n';
    }
}

void write_curve_csv(std::ostream& os, const SphereCurveOutput& c) {
    const std::size_t dim = c.samples.empty() ? 0 : c.samples.front().pedal.dim();
    os << 's';
    for (std::size_t j = 0; j < dim; ++j) {
        os << ",pedal" << j;
    }
    for (std::size_t j = 0; j < dim; ++j) {
        os << ",orthotomic" << j;
    }
    os << ",midpoint_defect\n";
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        os << fmt17(c.samples[i].s);
        for (double v : c.samples[i].pedal.vec().coords()) {
            os << ',' << fmt17(v);
        }
        for (double v : c.orthotomic[i].vec().coords()) {
            os << ',' << fmt17(v);
        }
        os << ',' << fmt17(c.midpoint_defect[i]) << '\n';
    }
}

void write_curve_svg(std::ostream& os, const PlaneCurveOutput& c, Vec2 p) {
    std::vector<Vec2> source;
    for (const PlaneCurveSample& s : c.samples) {
        source.push_back(s.position);
    }
    const Viewport vp{extent_of({source, c.pedal, c.orthotomic})};
    svg_open(os);
    svg_polyline(os, vp, source, "#333333", false);
    svg_polyline(os, vp, c.pedal, "#1f77b4", false);
    svg_polyline(os, vp, c.orthotomic, "#ff7f0e", false);
    svg_dot(os, vp, p, "#d62728");
    os << "</svg>\n";
}

void write_curve_svg(std::ostream& os, const SphereCurveOutput& c, const Pole& p) {
    // Orthographic view from P: drop the P coordinate after rotating P to e_1.
    const Rotation r = p.dim() >= 2 ? rotate_pole_to_axis(p.point()) : Rotation::identity(p.dim());
    auto view = [&](const Vec& x) -> Vec2 {
        const Vec y = r.apply(x);
        return {y.dim() > 1 ? y[1] : 0.0, y.dim() > 2 ? y[2] : 0.0};
    };
    std::vector<Vec2> ped;
    std::vector<Vec2> ort;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        ped.push_back(view(c.samples[i].pedal.vec()));
        ort.push_back(view(c.orthotomic[i].vec()));
    }
    const Viewport vp{1.1};
    svg_open(os);
    svg_polyline(os, vp, unit_circle_points(), "#bbbbbb", true);
    svg_polyline(os, vp, ped, "#1f77b4", false);
    svg_polyline(os, vp, ort, "#ff7f0e", false);
    svg_dot(os, vp, {0.0, 0.0}, "#d62728");
    os << "</svg>\n";
}

} // namespace kato::cli
