#include "gwdecohere/model.hpp"

#include <cmath>
#include <string>

#include "gwdecohere/errors.hpp"

namespace gwd {

using detail::require;

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void PhysicalConstants::validate() const {
    require(positive_finite(hubble), "PhysicalConstants: hubble must be positive");
    require(positive_finite(hbar), "PhysicalConstants: hbar must be positive");
    require(positive_finite(c), "PhysicalConstants: c must be positive");
}

void SphereSpec::validate() const {
    require(positive_finite(radius), "SphereSpec: radius must be positive");
    require(positive_finite(density), "SphereSpec: density must be positive");
}

double SphereSpec::mass() const {
    return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius * density;
}

void InterferometerConfig::validate() const {
    require(positive_finite(v), "InterferometerConfig: v must be positive");
    require(std::isfinite(alpha) && alpha > 0.0 && alpha < std::numbers::pi / 2.0,
            "InterferometerConfig: alpha must lie in (0, pi/2)");
    require(positive_finite(arm_half_separation),
            "InterferometerConfig: arm_half_separation must be positive");
    if (const auto* fixed = std::get_if<FixedGammaTau>(&bandwidth)) {
        require(std::isfinite(fixed->value) && fixed->value >= 0.0,
                "FixedGammaTau: value must be non-negative");
    } else if (const auto* cross = std::get_if<CrossCorrelated>(&bandwidth)) {
        require(positive_finite(cross->fraction), "CrossCorrelated: fraction must be positive");
    }
}

double InterferometerConfig::tau() const {
    return arm_half_separation / (v * std::sin(alpha));
}

void GWBackground::validate() const {
    require(std::isfinite(omega_gw) && omega_gw >= 0.0, "GWBackground: omega_gw must be >= 0");
    require(positive_finite(omega_c), "GWBackground: omega_c must be positive");
}

double sphere_mass(const SphereSpec& s) {
    s.validate();
    return s.mass();
}

double traversal_time(const InterferometerConfig& cfg) {
    cfg.validate();
    return cfg.tau();
}

double resolve_gamma_tau(const BandwidthModel& model, double v, double alpha,
                         const PhysicalConstants& consts) {
    const double sin_alpha = std::sin(alpha);
    return std::visit(
        [&](const auto& m) -> double {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, FixedGammaTau>) {
                require(std::isfinite(m.value) && m.value >= 0.0,
                        "FixedGammaTau: value must be non-negative");
                return m.value;
            } else if constexpr (std::is_same_v<T, SingleInterferometer>) {
                // gamma = v / 2R and tau = R / (v sin alpha)
                return 1.0 / (2.0 * sin_alpha);
            } else {
                require(positive_finite(m.fraction), "CrossCorrelated: fraction must be positive");
                return m.fraction * std::numbers::pi * consts.c / (v * sin_alpha);
            }
        },
        model);
}

double resolve_gamma_tau(const InterferometerConfig& cfg, const PhysicalConstants& consts) {
    cfg.validate();
    consts.validate();
    return resolve_gamma_tau(cfg.bandwidth, cfg.v, cfg.alpha, consts);
}

double resolve_gamma(const InterferometerConfig& cfg, const PhysicalConstants& consts) {
    return resolve_gamma_tau(cfg, consts) / cfg.tau();
}

}  // namespace gwd
