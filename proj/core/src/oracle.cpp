#include "gwdecohere/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <thread>

#include "gwdecohere/errors.hpp"
#include "gwdecohere/rng.hpp"
#include "gwdecohere/spectral.hpp"

namespace gwd {

using detail::require;

namespace {

struct Segment {
    double start;     // s, relative to launch
    double duration;  // s
    double sign;      // sign of v_x v_y on this leg
};

// int_{t_a}^{t_b} cos(omega t + psi) dt = 2 cos(mid) sin(half) / omega, avoiding
// the cancellation in sin(B) - sin(A).
double cos_integral(double omega, double psi, double t_a, double t_b) {
    const double mid = 0.5 * omega * (t_a + t_b) + psi;
    const double half = 0.5 * omega * (t_b - t_a);
    return 2.0 * std::cos(mid) * std::sin(half) / omega;
}

struct PathGeometry {
    double coupling;  // m v^2 sin(alpha) cos(alpha) / hbar
    double tau;
};

double two_path_phase(const PathGeometry& geo, double omega, double h0, double psi) {
    const std::array<Segment, 2> path1{{{0.0, geo.tau, +1.0}, {geo.tau, geo.tau, -1.0}}};
    const std::array<Segment, 2> path2{{{0.0, geo.tau, -1.0}, {geo.tau, geo.tau, +1.0}}};
    auto action = [&](const std::array<Segment, 2>& path) {
        double phase = 0.0;
        for (const auto& seg : path) {
            phase += seg.sign * geo.coupling * h0 *
                     cos_integral(omega, psi, seg.start, seg.start + seg.duration);
        }
        return phase;
    };
    return action(path1) - action(path2);
}

PathGeometry geometry(const SphereSpec& sphere, const InterferometerConfig& cfg,
                      const PhysicalConstants& consts) {
    return {sphere.mass() * cfg.v * cfg.v * std::sin(cfg.alpha) * std::cos(cfg.alpha) / consts.hbar,
            cfg.tau()};
}

}  // namespace

double timedomain_phase(const MonochromaticWave& w, const SphereSpec& sphere,
                        const InterferometerConfig& cfg, const PhysicalConstants& consts, double t0) {
    sphere.validate();
    cfg.validate();
    consts.validate();
    require(w.omega > 0.0, "timedomain_phase: omega must be positive");
    require(w.h0 >= 0.0, "timedomain_phase: h0 must be >= 0");
    return two_path_phase(geometry(sphere, cfg, consts), w.omega, w.h0, w.phase0 + w.omega * t0);
}

void ModeEnsemble::validate() const {
    require(!omega_grid.empty(), "ModeEnsemble: empty frequency grid");
    require(omega_grid.size() == amplitudes.size(),
            "ModeEnsemble: grid and amplitudes differ in length");
    require(omega_grid.front() > 0.0, "ModeEnsemble: frequencies must be positive");
    for (std::size_t k = 1; k < omega_grid.size(); ++k) {
        require(omega_grid[k] > omega_grid[k - 1], "ModeEnsemble: grid must be strictly ascending");
    }
    for (double a : amplitudes) require(a >= 0.0, "ModeEnsemble: amplitudes must be >= 0");
    require(n_realizations >= 2, "ModeEnsemble: need at least two realizations");
}

ModeEnsemble make_log_ensemble(double omega_min, double omega_max, std::size_t n_modes,
                               const GWBackground& bg, const PhysicalConstants& consts,
                               std::uint64_t seed, std::size_t n_realizations) {
    require(omega_min > 0.0 && omega_max > omega_min,
            "make_log_ensemble: need 0 < omega_min < omega_max");
    require(n_modes >= 2, "make_log_ensemble: need at least two modes");
    ModeEnsemble ens;
    ens.seed = seed;
    ens.n_realizations = n_realizations;
    ens.omega_grid.resize(n_modes);
    const double step = std::log(omega_max / omega_min) / static_cast<double>(n_modes - 1);
    for (std::size_t k = 0; k < n_modes; ++k) {
        ens.omega_grid[k] = omega_min * std::exp(step * static_cast<double>(k));
    }
    ens.omega_grid.back() = omega_max;
    ens.amplitudes.resize(n_modes);
    for (std::size_t k = 0; k < n_modes; ++k) {
        const double left = k == 0 ? ens.omega_grid[0] : ens.omega_grid[k - 1];
        const double right = k + 1 == n_modes ? ens.omega_grid[k] : ens.omega_grid[k + 1];
        const double dw = 0.5 * (right - left);
        ens.amplitudes[k] =
            std::sqrt(strain_psd(ens.omega_grid[k], bg, consts) * dw / std::numbers::pi);
    }
    return ens;
}

std::vector<double> mc_phase_samples(const ModeEnsemble& ens, const SphereSpec& sphere,
                                     const InterferometerConfig& cfg,
                                     const PhysicalConstants& consts, unsigned threads) {
    ens.validate();
    sphere.validate();
    cfg.validate();
    consts.validate();

    const auto geo = geometry(sphere, cfg, consts);
    const FilterKind filt{cfg.filter, resolve_gamma(cfg, consts)};
    const std::size_t modes = ens.omega_grid.size();
    std::vector<double> weighted(modes);
    for (std::size_t k = 0; k < modes; ++k) {
        weighted[k] = std::sqrt(filter(ens.omega_grid[k], filt)) * ens.amplitudes[k];
    }

    std::vector<double> samples(ens.n_realizations);
    auto work = [&](std::size_t begin, std::size_t end) {
        std::vector<double> contrib(modes);
        for (std::size_t r = begin; r < end; ++r) {
            auto rng = SplitMix64::substream(ens.seed, r);
            for (std::size_t k = 0; k < modes; ++k) {
                const double psi = 2.0 * std::numbers::pi * rng.uniform01();
                contrib[k] = two_path_phase(geo, ens.omega_grid[k], weighted[k], psi);
            }
            samples[r] = pairwise_sum(contrib);
        }
    };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, ens.n_realizations));
    if (threads <= 1) {
        work(0, ens.n_realizations);
        return samples;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (ens.n_realizations + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(ens.n_realizations, begin + chunk);
        if (begin < end) pool.emplace_back(work, begin, end);
    }
    pool.clear();  // joins
    return samples;
}

McStatistics sample_statistics(std::span<const double> samples) {
    require(samples.size() >= 2, "sample_statistics: need at least two samples");
    const auto n = static_cast<double>(samples.size());
    McStatistics out;
    out.mean = pairwise_sum(samples) / n;
    std::vector<double> sq(samples.size());
    std::vector<double> quad(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double d = samples[i] - out.mean;
        sq[i] = d * d;
        quad[i] = sq[i] * sq[i];
    }
    const double m2 = pairwise_sum(sq) / n;
    const double m4 = pairwise_sum(quad) / n;
    out.variance = m2 * n / (n - 1.0);
    out.std_error = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
    return out;
}

McStatistics mc_phase_variance(const ModeEnsemble& ens, const SphereSpec& sphere,
                               const InterferometerConfig& cfg, const GWBackground& bg,
                               const PhysicalConstants& consts, unsigned threads) {
    bg.validate();
    ens.validate();
    require(ens.omega_grid.back() <= bg.omega_c,
            "mc_phase_variance: mode grid extends past the background cut-off");
    const auto samples = mc_phase_samples(ens, sphere, cfg, consts, threads);
    return sample_statistics(samples);
}

double pairwise_sum(std::span<const double> xs) {
    if (xs.size() <= 8) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

}  // namespace gwd
