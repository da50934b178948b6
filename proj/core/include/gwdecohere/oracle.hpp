#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gwdecohere/model.hpp"

namespace gwd {

enum class Polarization { Cross };

/// Plane wave h(t) = h0 cos(omega t + phase0), normally incident on the
/// interferometer plane.
struct MonochromaticWave {
    double omega = 1.0;   ///< rad/s
    double h0 = 0.0;      ///< strain amplitude
    double phase0 = 0.0;  ///< rad
    Polarization polarization = Polarization::Cross;
};

/// Phase difference between the two Mach-Zehnder paths accumulated from the
/// perturbed action (m/hbar) h(t) v_x v_y. Path 1 flies at +alpha for tau then
/// -alpha for tau, path 2 is its mirror image; the launch happens at t0. Each
/// segment uses the closed-form integral of the cosine, so no step error.
[[nodiscard]] double timedomain_phase(const MonochromaticWave& w, const SphereSpec& sphere,
                                      const InterferometerConfig& cfg,
                                      const PhysicalConstants& consts, double t0 = 0.0);

/// Discretized random-phase background: one cosine mode per grid frequency.
struct ModeEnsemble {
    std::vector<double> omega_grid;  ///< strictly ascending, rad/s
    std::vector<double> amplitudes;  ///< strain amplitude of each mode
    std::uint64_t seed = 0;
    std::size_t n_realizations = 0;

    void validate() const;
};

/// Log-spaced grid on [omega_min, omega_max] with a_k = sqrt(S_h(omega_k) dw_k / pi),
/// dw_k the trapezoid weight, so sum_k a_k^2/2 A f reproduces int dw/2pi S_h A f.
[[nodiscard]] ModeEnsemble make_log_ensemble(double omega_min, double omega_max,
                                             std::size_t n_modes, const GWBackground& bg,
                                             const PhysicalConstants& consts, std::uint64_t seed,
                                             std::size_t n_realizations);

struct McStatistics {
    double mean = 0.0;       ///< rad
    double variance = 0.0;   ///< rad^2
    double std_error = 0.0;  ///< standard error of the variance estimate, rad^2
};

/// Per-realization phases: uniform random phase for every mode, each mode's
/// time-domain response scaled by sqrt(f(omega_k)). Realizations are spread over
/// `threads` workers (0 picks hardware concurrency); output order is fixed.
[[nodiscard]] std::vector<double> mc_phase_samples(const ModeEnsemble& ens,
                                                   const SphereSpec& sphere,
                                                   const InterferometerConfig& cfg,
                                                   const PhysicalConstants& consts,
                                                   unsigned threads = 0);

/// Sample mean, variance and standard error of the variance.
[[nodiscard]] McStatistics sample_statistics(std::span<const double> samples);

/// Monte-Carlo estimate of the phase variance. The background enters through the
/// ensemble amplitudes; the grid must stay below bg.omega_c.
[[nodiscard]] McStatistics mc_phase_variance(const ModeEnsemble& ens, const SphereSpec& sphere,
                                             const InterferometerConfig& cfg,
                                             const GWBackground& bg,
                                             const PhysicalConstants& consts,
                                             unsigned threads = 0);

/// Pairwise summation with a fixed tree shape.
[[nodiscard]] double pairwise_sum(std::span<const double> xs);

}  // namespace gwd
