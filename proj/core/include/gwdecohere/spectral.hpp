#pragma once

#include "gwdecohere/model.hpp"

namespace gwd {

/// High-pass filter applied to the phase noise spectrum.
struct FilterKind {
    FilterShape shape = FilterShape::Lorentzian;
    double gamma = 0.0;  ///< bandwidth, rad/s
};

/// One-sided strain spectral density of a flat-Omega background,
/// S_h = 3 H0^2 Omega_GW / omega^3 below the cut-off and zero above it.
[[nodiscard]] double strain_psd(double omega, const GWBackground& bg, const PhysicalConstants& consts);

/// Phase response of the interferometer to a unit-amplitude strain wave:
///   A(omega) = (4 m v^2 / (hbar omega))^2 sin^2(2 alpha) sin^4(omega tau / 2)
/// Valid for v << c and omega R << c; checking that is up to the caller.
[[nodiscard]] double response_A(double omega, double mass, double v, double tau, double alpha,
                                const PhysicalConstants& consts);

/// Filter weight in [0, 1].
[[nodiscard]] double filter(double omega, const FilterKind& f);

/// Dimensionless integrand in x = omega * tau.
///   Lorentzian:  sin^4(x/2) / (x^3 (x^2 + (gamma tau)^2))
///   SharpCutoff: sin^4(x/2) / x^5 for x >= gamma tau, otherwise 0
[[nodiscard]] double integrand(double x, double gamma_tau, FilterShape shape);

}  // namespace gwd
