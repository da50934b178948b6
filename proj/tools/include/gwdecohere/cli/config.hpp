#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gwdecohere/model.hpp"
#include "gwdecohere/variance.hpp"
#include "gwdecohere/cli/table.hpp"

namespace gwd::cli {

/// Malformed or inconsistent run configuration (exit code 1).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Output file could not be written (exit code 3).
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Job { Variance, CriticalRadius, Fig3, PaperTable, Oracle, Sweep };

[[nodiscard]] std::optional<Job> parse_job(std::string_view name);
[[nodiscard]] std::string_view job_name(Job job);

enum class MethodChoice { Exact, Approx, ClosedForm };

struct Fig3Options {
    double gamma_tau_min = 1e-2;
    double gamma_tau_max = 1e3;
    std::size_t points = 61;
    double cutoff_tau = 1e5;
    /// Explicit grid; overrides min/max/points when non-empty.
    std::vector<double> gamma_tau_values;
};

struct OracleOptions {
    std::size_t modes = 1000;
    std::size_t realizations = 10000;
    double x_min = 1e-4;        ///< lowest mode, in units of 1/tau
    double cutoff_tau = 1e4;    ///< omega_c * tau for the Monte-Carlo comparison
    std::size_t transfer_points = 200;
    unsigned threads = 0;
};

struct SweepAxis {
    std::string parameter;
    double min = 0.0;
    double max = 0.0;
    std::size_t points = 0;
    bool log_spacing = true;
    std::string quantity = "critical_radius";  ///< or "variance"
};

/// Everything a CLI run needs. Physical inputs are SI; the JSON keys carry the unit.
struct RunConfig {
    PhysicalConstants constants{};
    double radius = 3e-3;                     ///< radius_m
    double density = 2329.0;                  ///< density_kg_m3
    std::optional<double> arm_half_separation;  ///< defaults to radius
    double v = 1.0;                           ///< v_m_s
    double alpha = 0.78539816339744831;       ///< alpha_rad
    BandwidthModel bandwidth = FixedGammaTau{1.0};
    FilterShape filter = FilterShape::Lorentzian;
    double approx_n = 2.0;
    MethodChoice method = MethodChoice::Exact;
    QuadratureSettings quadrature{};
    GWBackground background{1e-15};
    Fig3Options fig3{};
    OracleOptions oracle{};
    std::optional<SweepAxis> sweep;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::Csv;

    [[nodiscard]] SphereSpec sphere() const { return {radius, density}; }
    [[nodiscard]] InterferometerConfig interferometer() const;
};

/// Names accepted by the sweep axis.
[[nodiscard]] const std::vector<std::string>& sweep_parameters();

/// Apply one named parameter value to a config (used by sweeps).
void set_parameter(RunConfig& cfg, std::string_view name, double value);

/// Parses a JSON document. Unknown keys, wrong types and invariant violations
/// raise ConfigError.
[[nodiscard]] RunConfig parse_config(std::string_view json_text);
[[nodiscard]] RunConfig load_config(const std::string& path);

}  // namespace gwd::cli
