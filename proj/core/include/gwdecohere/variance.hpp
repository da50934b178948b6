#pragma once

#include <cstddef>
#include <variant>

#include "gwdecohere/model.hpp"

namespace gwd {

enum class TailPolicy {
    /// Integrate panel by panel all the way to the cut-off. Cost grows with omega_c*tau.
    ExplicitToCutoff,
    /// Integrate the first ten periods adaptively, then close the remainder analytically.
    AsymptoticTail,
};

struct QuadratureSettings {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    std::size_t max_subdivisions = 200000;
    TailPolicy tail_policy = TailPolicy::AsymptoticTail;

    void validate() const;
};

struct IntegralResult {
    double value = 0.0;
    double abs_error = 0.0;
};

/// Dimensionless phase-variance integral
///   I = int_0^{cutoff_tau} sin^4(x/2) / (x^3 (x^2 + (gamma tau)^2)) dx
/// (or the sharp high-pass version). Depends only on (gamma_tau, cutoff_tau, shape).
/// Throws DivergentIntegral when gamma_tau == 0.
[[nodiscard]] IntegralResult dimensionless_integral(double gamma_tau, double cutoff_tau,
                                                    FilterShape shape,
                                                    const QuadratureSettings& settings = {});

/// 1 + 20 (gamma tau)^{1/4} + 10 (gamma tau)^n
[[nodiscard]] double approx_denominator(double gamma_tau, double n);

/// sqrt(3) / approx_denominator(gamma_tau, n). Finite at gamma_tau = 0.
[[nodiscard]] double approx_integral(double gamma_tau, double n);

/// True for the two exponents with a known filter interpretation (2: Lorentzian, 4: sharp).
[[nodiscard]] constexpr bool is_standard_exponent(double n) { return n == 2.0 || n == 4.0; }

struct ExactMethod {
    QuadratureSettings settings{};
};
struct ApproxMethod {
    double n = 2.0;
};
using VarianceMethod = std::variant<ExactMethod, ApproxMethod>;

struct ExactQuadrature {};
struct Approximation {
    double n = 2.0;
};
using VarianceMethodTag = std::variant<ExactQuadrature, Approximation>;

struct VarianceResult {
    double delta_phi_sq = 0.0;      ///< rad^2
    VarianceMethodTag method{};
    double abs_error_estimate = 0.0;  ///< rad^2; zero for the approximation
    double gamma_tau = 0.0;
    double tau = 0.0;  ///< s
};

/// 24 H0^2 Omega_GW m^2 (v tau)^4 sin^2(2 alpha) / (pi hbar^2): converts the
/// dimensionless integral into a phase variance.
[[nodiscard]] double variance_prefactor(const SphereSpec& sphere, const InterferometerConfig& cfg,
                                        const GWBackground& bg, const PhysicalConstants& consts);

[[nodiscard]] VarianceResult phase_variance(const SphereSpec& sphere,
                                            const InterferometerConfig& cfg,
                                            const GWBackground& bg,
                                            const PhysicalConstants& consts,
                                            const VarianceMethod& method = ExactMethod{});

/// Gaussian dephasing fringe visibility exp(-dphi^2 / 2).
[[nodiscard]] double visibility(const VarianceResult& r);

}  // namespace gwd
