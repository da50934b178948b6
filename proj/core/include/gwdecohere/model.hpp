#pragma once

#include <numbers>
#include <variant>

namespace gwd {

/// Physical constants in SI units. Defaults match the values used throughout
/// the library; override individual fields for sensitivity studies.
struct PhysicalConstants {
    double hubble = 2.4e-18;          ///< H0, 1/s
    double hbar = 1.054571817e-34;    ///< J s
    double c = 299792458.0;           ///< m/s

    void validate() const;
};

/// Uniform solid sphere.
struct SphereSpec {
    double radius = 0.0;   ///< m
    double density = 0.0;  ///< kg/m^3

    void validate() const;
    [[nodiscard]] double mass() const;
};

/// Filter bandwidth given directly as the dimensionless product gamma*tau.
struct FixedGammaTau {
    double value = 1.0;
};

/// Bandwidth limited by the data rate of one interferometer, gamma = v/(2 R_arm).
struct SingleInterferometer {};

/// Bandwidth opened up by cross-correlating many interferometers,
/// gamma = fraction * pi * c / R_arm.
struct CrossCorrelated {
    double fraction = 0.1;
};

using BandwidthModel = std::variant<FixedGammaTau, SingleInterferometer, CrossCorrelated>;

enum class FilterShape { Lorentzian, SharpCutoff };

/// Two-path Mach-Zehnder geometry for the interfering sphere.
struct InterferometerConfig {
    double v = 1.0;                            ///< group velocity, m/s
    double alpha = std::numbers::pi / 4.0;     ///< half-opening angle, rad
    double arm_half_separation = 0.0;          ///< R_arm, m
    BandwidthModel bandwidth = FixedGammaTau{1.0};
    FilterShape filter = FilterShape::Lorentzian;

    void validate() const;
    /// Time to traverse half of one arm, R_arm / (v sin alpha).
    [[nodiscard]] double tau() const;
};

/// Scale-invariant stochastic background: flat Omega_GW up to a hard cut-off.
struct GWBackground {
    double omega_gw = 0.0;                              ///< dimensionless
    double omega_c = 2.0 * std::numbers::pi * 1e9;      ///< rad/s

    void validate() const;
};

[[nodiscard]] double sphere_mass(const SphereSpec& s);
[[nodiscard]] double traversal_time(const InterferometerConfig& cfg);

/// Dimensionless gamma*tau for a bandwidth model. None of the models depend on
/// R_arm, so only the velocity and opening angle are needed.
[[nodiscard]] double resolve_gamma_tau(const BandwidthModel& model, double v, double alpha,
                                       const PhysicalConstants& consts);
[[nodiscard]] double resolve_gamma_tau(const InterferometerConfig& cfg,
                                       const PhysicalConstants& consts);

/// Filter bandwidth gamma in rad/s.
[[nodiscard]] double resolve_gamma(const InterferometerConfig& cfg, const PhysicalConstants& consts);

}  // namespace gwd
