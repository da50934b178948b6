#pragma once

#include <numbers>
#include <string_view>
#include <variant>
#include <vector>

#include "gwdecohere/model.hpp"
#include "gwdecohere/variance.hpp"

namespace gwd {

struct ClosedForm {};

/// Solve dphi(R) = pi numerically using the chosen variance method.
struct RootFind {
    VarianceMethod variance = ExactMethod{};
};

using CriticalRadiusMethod = std::variant<ClosedForm, RootFind>;

struct CriticalRadiusRequest {
    double density = 2329.0;  ///< kg/m^3
    GWBackground background{};
    double v = 1.0;                          ///< m/s
    double alpha = std::numbers::pi / 4.0;   ///< rad
    BandwidthModel bandwidth = FixedGammaTau{1.0};
    FilterShape filter = FilterShape::Lorentzian;  ///< used by exact quadrature
    double n = 2.0;                                ///< exponent of the approximation
    CriticalRadiusMethod method = ClosedForm{};

    void validate() const;
    /// Interferometer with R_arm equal to the sphere radius.
    [[nodiscard]] InterferometerConfig interferometer(double radius) const;
};

enum class ValidityWarning {
    PointLikeLimit,  ///< R exceeds c / omega_c; the long-wavelength treatment breaks down
    BandwidthLimit,  ///< gamma exceeds pi c / (10 R)
};

[[nodiscard]] std::string_view to_string(ValidityWarning w);

struct CriticalRadiusResult {
    double radius = 0.0;     ///< m
    double gamma_tau = 0.0;
    double mass = 0.0;       ///< kg, sphere mass at the critical radius
    std::vector<ValidityWarning> warnings;
};

/// Closed-form critical radius
///   R_c^10 = sqrt(3) pi hbar^2 D / (512 H0^2 rho^2 Omega_GW) * tan^2(alpha)
/// with D = 1 + 20 (gamma tau)^{1/4} + 10 (gamma tau)^n. The tan^2(alpha) factor is 1
/// at alpha = pi/4. Throws NoDecoherence when Omega_GW = 0.
[[nodiscard]] CriticalRadiusResult critical_radius_closed(const CriticalRadiusRequest& req,
                                                          const PhysicalConstants& consts = {});

/// Radius at which the phase standard deviation reaches pi, found by a decade
/// scan over [1e-9, 1e3] m followed by Brent refinement in log R.
[[nodiscard]] CriticalRadiusResult critical_radius_solve(const CriticalRadiusRequest& req,
                                                         const PhysicalConstants& consts = {});

/// Dispatches on req.method.
[[nodiscard]] CriticalRadiusResult critical_radius(const CriticalRadiusRequest& req,
                                                   const PhysicalConstants& consts = {});

/// Standard deviation of the phase for a sphere of the given radius.
[[nodiscard]] double phase_std_at_radius(double radius, const CriticalRadiusRequest& req,
                                         const PhysicalConstants& consts,
                                         const VarianceMethod& method);

/// (fraction * pi * c / v)^{n/10}: the factor by which
/// cross-correlation raises R_c once the (gamma tau)^n term dominates.
[[nodiscard]] double cross_correlation_multiplier(double v, double n,
                                                  const PhysicalConstants& consts = {},
                                                  double fraction = 0.1);

[[nodiscard]] std::vector<ValidityWarning> validity_warnings(double radius,
                                                             const CriticalRadiusRequest& req,
                                                             const PhysicalConstants& consts);

}  // namespace gwd
