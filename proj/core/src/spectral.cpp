#include "gwdecohere/spectral.hpp"

#include <cmath>

#include "gwdecohere/errors.hpp"

namespace gwd {

using detail::require;

double strain_psd(double omega, const GWBackground& bg, const PhysicalConstants& consts) {
    require(omega > 0.0, "strain_psd: omega must be positive");
    bg.validate();
    if (omega > bg.omega_c) return 0.0;
    return 3.0 * consts.hubble * consts.hubble * bg.omega_gw / (omega * omega * omega);
}

double response_A(double omega, double mass, double v, double tau, double alpha,
                  const PhysicalConstants& consts) {
    require(omega > 0.0, "response_A: omega must be positive");
    const double amp = 4.0 * mass * v * v / (consts.hbar * omega);
    const double s2a = std::sin(2.0 * alpha);
    const double s = std::sin(0.5 * omega * tau);
    const double s2 = s * s;
    return amp * amp * s2a * s2a * s2 * s2;
}

double filter(double omega, const FilterKind& f) {
    require(omega >= 0.0, "filter: omega must be non-negative");
    require(f.gamma >= 0.0, "filter: gamma must be non-negative");
    if (f.gamma == 0.0) return 1.0;
    switch (f.shape) {
    case FilterShape::Lorentzian: {
        const double w2 = omega * omega;
        return w2 / (w2 + f.gamma * f.gamma);
    }
    case FilterShape::SharpCutoff:
        return omega < f.gamma ? 0.0 : 1.0;
    }
    return 1.0;
}

double integrand(double x, double gamma_tau, FilterShape shape) {
    require(x > 0.0, "integrand: x must be positive");
    const double b2 = gamma_tau * gamma_tau;
    if (shape == FilterShape::SharpCutoff) {
        if (x < gamma_tau) return 0.0;
        const double s = std::sin(0.5 * x);
        const double x2 = x * x;
        return (s * s) * (s * s) / (x2 * x2 * x);
    }
    if (x < 1e-4) {
        // sin^4(x/2) = x^4/16 (1 - x^2/24)^4 + O(x^8); keeps x^3 from underflowing
        const double t = 1.0 - x * x / 24.0;
        const double t2 = t * t;
        return x * t2 * t2 / (16.0 * (x * x + b2));
    }
    const double s = std::sin(0.5 * x);
    return (s * s) * (s * s) / (x * x * x * (x * x + b2));
}

}  // namespace gwd
