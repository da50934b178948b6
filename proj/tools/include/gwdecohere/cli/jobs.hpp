#pragma once

#include <ostream>

#include "gwdecohere/cli/config.hpp"
#include "gwdecohere/cli/table.hpp"

namespace gwd::cli {

/// Validity-bound warning codes shared by every job that emits physical rows.
inline constexpr const char* kWarnPointLike = "point_like_limit";
inline constexpr const char* kWarnBandwidth = "bandwidth_limit";
inline constexpr const char* kWarnExponent = "nonstandard_exponent";

[[nodiscard]] Table run_variance(const RunConfig& cfg);
[[nodiscard]] Table run_critical_radius(const RunConfig& cfg);

/// gamma_tau, i_exact, i_exact_abs_error, i_approx_n2, ratio. Non-positive
/// gamma_tau entries are skipped with a message on `log`.
[[nodiscard]] Table run_fig3(const RunConfig& cfg, std::ostream& log);

/// Silica and neutron-star critical radii: closed form, exact solve and masses.
[[nodiscard]] Table run_paper_table(const RunConfig& cfg);

/// Transfer-function and Monte-Carlo cross-checks.
[[nodiscard]] Table run_oracle(const RunConfig& cfg);

/// Rows in grid order; grid points are evaluated concurrently.
[[nodiscard]] Table run_sweep(const RunConfig& cfg);

[[nodiscard]] Table run_job(Job job, const RunConfig& cfg, std::ostream& log);

}  // namespace gwd::cli
