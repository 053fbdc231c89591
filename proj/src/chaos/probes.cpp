#include <algorithm>
#include <cmath>
#include <limits>

#include "kato/chaos.hpp"
#include "kato/kernels.hpp"

namespace kato {

std::mt19937_64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

namespace {

Vec gaussian_direction(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (;;) {
        std::vector<double> g(dim);
        for (double& c : g) {
            c = normal(rng);
        }
        Vec v(std::move(g));
        if (v.norm() > 1e-6) {
            return v.normalized();
        }
    }
}

} // namespace

Vec sample_in_ball(const OpenBall& ball, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Vec& c = ball.center();
    const std::size_t dim = c.dim();
    if (ball.space() == StateSpace::Sphere) {
        if (dim == 1) {
            return c;
        }
        const double rho = 2.0 * std::asin(std::min(ball.radius(), 2.0) / 2.0);
        for (int attempt = 0; attempt < 1000; ++attempt) {
            Vec g = gaussian_direction(dim, rng);
            Vec tangent = g - c.dot(g) * c;
            if (tangent.norm() < 1e-6) {
                continue;
            }
            tangent = tangent.normalized();
            const double psi = unit(rng) * rho;
            Vec u = (std::cos(psi) * c + std::sin(psi) * tangent).normalized();
            if (ball.contains(u)) {
                return u;
            }
        }
    } else {
        for (int attempt = 0; attempt < 1000; ++attempt) {
            const Vec dir = gaussian_direction(dim, rng);
            Vec u = c + (unit(rng) * ball.radius()) * dir;
            if (ball.contains(u)) {
                return u;
            }
        }
    }
    throw DomainError("could not sample the ball; it barely meets the state space");
}

TransitivityProbe transitivity_probe(const Pole& p, const OpenBall& u, const OpenBall& v,
                                     std::size_t max_k, std::size_t samples, std::uint64_t seed) {
    if (max_k == 0 || samples == 0) {
        throw DomainError("transitivity probe needs max_k > 0 and samples > 0");
    }
    if (u.dim() != p.dim() || v.dim() != p.dim()) {
        throw DimensionMismatch(p.dim(), u.dim() != p.dim() ? u.dim() : v.dim());
    }
    const std::size_t dim = p.dim();
    const bool sphere = u.space() == StateSpace::Sphere;

    PointBatch batch(dim, samples);
    PointBatch complements(dim, samples);
    for (std::size_t i = 0; i < samples; ++i) {
        std::mt19937_64 rng = sample_stream(seed, i);
        const Vec x = sample_in_ball(u, rng);
        batch.set(i, x);
        if (dim >= 2) {
            complements.set(i, slice_frame_through(p.point(), x).complement().vec());
        }
    }

    const kernels::KernelTable& k = kernels::active();
    const std::vector<double> pole(p.vec().coords().begin(), p.vec().coords().end());
    const std::vector<double> target(v.center().coords().begin(), v.center().coords().end());
    std::vector<double> dist(samples);
    std::vector<double> resid(samples);

    TransitivityProbe out;
    out.horizon = max_k;
    out.samples = samples;
    out.seed = seed;
    out.min_distance = std::numeric_limits<double>::infinity();
    for (std::size_t step = 1; step <= max_k; ++step) {
        k.phi_step(pole, batch, sphere);
        k.distance(batch, target, dist);
        if (dim >= 2) {
            k.slice_residual(batch, pole, complements, resid);
            out.max_slice_residual =
                std::max(out.max_slice_residual, *std::max_element(resid.begin(), resid.end()));
        }
        const double closest = *std::min_element(dist.begin(), dist.end());
        out.min_distance = std::min(out.min_distance, closest);
        if (closest < v.radius()) {
            // Confirm against the state-space membership test as well.
            for (std::size_t i = 0; i < samples; ++i) {
                if (dist[i] < v.radius() && v.contains(batch.get(i))) {
                    out.first_hit = step;
                    return out;
                }
            }
        }
    }
    return out;
}

SliceCertificate slice_confinement_certificate(const Pole& p, const Vec& x0, const Vec& r,
                                               std::size_t k, StateSpace space) {
    if (p.dim() < 3) {
        throw DomainError("slice confinement needs m >= 2 (ambient dimension >= 3)");
    }
    if (x0.dim() != p.dim() || r.dim() != p.dim()) {
        throw DimensionMismatch(p.dim(), x0.dim() != p.dim() ? x0.dim() : r.dim());
    }
    const std::vector<Vec> triple{p.vec(), x0, r};
    if (gram_determinant(triple) < kGramThreshold) {
        throw DegenerateConfiguration("P, x0, R are not linearly independent");
    }
    const Orbit orbit = iterate(p, x0, k,
                                space == StateSpace::Sphere ? Renormalize::EveryStep
                                                            : Renormalize::Off);
    SliceCertificate cert;
    cert.steps = k;
    cert.max_residual = orbit.max_slice_residual();
    cert.min_distance = std::numeric_limits<double>::infinity();
    for (const Vec& x : orbit.points) {
        cert.min_distance = std::min(cert.min_distance, distance(x, r));
    }

    const SliceFrame frame = slice_frame_through(p.point(), x0);
    const Vec& pv = frame.pole().vec();
    const Vec& wv = frame.complement().vec();
    const Vec in_plane = pv.dot(r) * pv + wv.dot(r) * wv;
    const double off = (r - in_plane).norm();
    const double radial = in_plane.norm();
    if (space == StateSpace::Disk && radial <= 1.0) {
        cert.slice_distance = off;
    } else {
        cert.slice_distance = std::sqrt(off * off + (radial - 1.0) * (radial - 1.0));
    }
    cert.certified = cert.max_residual <= kConfinementTolerance &&
                     cert.min_distance >= cert.slice_distance / 2.0;
    return cert;
}

Arc Arc::around(const Rational& center, const Rational& radius) {
    if (radius <= 0) {
        throw DomainError("arc radius must be positive");
    }
    return Arc{wrap_unit(center - radius), 2 * radius};
}

bool Arc::intersects(const Arc& other) const {
    if (full() || other.full()) {
        return true;
    }
    const Rational d = wrap_unit(other.start - start);
    return d < length || d + other.length > 1;
}

Arc Arc::doubled(const Rational& alpha) const {
    if (full()) {
        return *this;
    }
    return Arc{wrap_unit(2 * start - alpha), 2 * length};
}

MixingResult mixing_probe(const Angle& alpha, const Arc& u, const Arc& v, std::size_t horizon) {
    if (horizon == 0) {
        throw DomainError("mixing probe needs horizon > 0");
    }
    if (u.length <= 0 || v.length <= 0) {
        throw DomainError("mixing probe needs nonempty arcs");
    }
    const Rational& a = alpha.exact_turns();
    MixingResult out;
    out.horizon = horizon;
    std::vector<bool> meets;
    meets.reserve(horizon);
    Arc image = u;
    for (std::size_t m = 1; m <= horizon; ++m) {
        image = image.doubled(a);
        meets.push_back(image.intersects(v));
        if (image.full()) {
            // Full images stay full: every later step meets V.
            out.coverage_step = m;
            break;
        }
    }
    if (!meets.back()) {
        return out;
    }
    std::size_t k = meets.size();
    while (k > 1 && meets[k - 2]) {
        --k;
    }
    out.k = k;
    return out;
}

} // namespace kato
