#include "gwdecohere/cli/jobs.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "gwdecohere/critical_radius.hpp"
#include "gwdecohere/errors.hpp"
#include "gwdecohere/oracle.hpp"
#include "gwdecohere/spectral.hpp"
#include "gwdecohere/variance.hpp"

namespace gwd::cli {

namespace {

constexpr double kSilica = 2329.0;

// Evaluates fn(0..n-1) on a small thread pool; results come back in index order
// and the first failing index's exception is rethrown.
template <class Fn>
auto parallel_map(std::size_t n, Fn fn) {
    using T = decltype(fn(std::size_t{0}));
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency())));
    auto body = [&](unsigned w) {
        for (std::size_t i = w; i < n; i += workers) {
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers <= 1) {
        body(0);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<double> grid(double lo, double hi, std::size_t points, bool log_spacing) {
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        out[i] = log_spacing ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                             : lo + t * (hi - lo);
    }
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::string filter_name(FilterShape s) {
    return s == FilterShape::Lorentzian ? "lorentzian" : "sharp";
}

std::string bandwidth_name(const BandwidthModel& m) {
    if (std::holds_alternative<FixedGammaTau>(m)) return "fixed";
    if (std::holds_alternative<SingleInterferometer>(m)) return "single";
    return "cross_correlated";
}

std::string method_name(MethodChoice m) {
    switch (m) {
    case MethodChoice::Exact:
        return "exact";
    case MethodChoice::Approx:
        return "approx";
    case MethodChoice::ClosedForm:
        return "closed_form";
    }
    return "unknown";
}

Warnings physical_warnings(double arm, const InterferometerConfig& icfg, const GWBackground& bg,
                           const PhysicalConstants& consts) {
    Warnings w;
    if (arm > consts.c / bg.omega_c) w.emplace_back(kWarnPointLike);
    const double gamma = resolve_gamma(icfg, consts);
    if (gamma > std::numbers::pi * consts.c / (10.0 * arm) * (1.0 + 1e-9)) {
        w.emplace_back(kWarnBandwidth);
    }
    return w;
}

Warnings to_codes(const std::vector<ValidityWarning>& ws) {
    Warnings out;
    for (auto w : ws) out.emplace_back(to_string(w));
    return out;
}

CriticalRadiusRequest request_from(const RunConfig& cfg) {
    CriticalRadiusRequest req;
    req.density = cfg.density;
    req.background = cfg.background;
    req.v = cfg.v;
    req.alpha = cfg.alpha;
    req.bandwidth = cfg.bandwidth;
    req.filter = cfg.filter;
    req.n = cfg.approx_n;
    switch (cfg.method) {
    case MethodChoice::ClosedForm:
        req.method = ClosedForm{};
        break;
    case MethodChoice::Exact:
        req.method = RootFind{ExactMethod{cfg.quadrature}};
        break;
    case MethodChoice::Approx:
        req.method = RootFind{ApproxMethod{cfg.approx_n}};
        break;
    }
    return req;
}

VarianceMethod variance_method(const RunConfig& cfg) {
    if (cfg.method == MethodChoice::Exact) return ExactMethod{cfg.quadrature};
    return ApproxMethod{cfg.approx_n};
}

struct VariancePoint {
    VarianceResult result;
    Warnings warnings;
};

VariancePoint evaluate_variance(const RunConfig& cfg) {
    const auto icfg = cfg.interferometer();
    VariancePoint p;
    p.result = phase_variance(cfg.sphere(), icfg, cfg.background, cfg.constants, variance_method(cfg));
    p.warnings = physical_warnings(icfg.arm_half_separation, icfg, cfg.background, cfg.constants);
    if (cfg.method != MethodChoice::Exact && !is_standard_exponent(cfg.approx_n)) {
        p.warnings.emplace_back(kWarnExponent);
    }
    return p;
}

CriticalRadiusResult evaluate_radius(const RunConfig& cfg, Warnings& warnings) {
    const auto res = critical_radius(request_from(cfg), cfg.constants);
    warnings = to_codes(res.warnings);
    if (cfg.method != MethodChoice::Exact && !is_standard_exponent(cfg.approx_n)) {
        warnings.emplace_back(kWarnExponent);
    }
    return res;
}

}  // namespace

Table run_variance(const RunConfig& cfg) {
    Table t;
    t.name = "variance";
    t.columns = {"radius_m",  "density_kg_m3", "v_m_s",        "alpha_rad",  "omega_gw",
                 "gamma_tau", "tau_s",         "cutoff_tau",   "mass_kg",    "method",
                 "approx_n",  "delta_phi_sq",  "delta_phi",    "abs_error",  "visibility",
                 "warnings"};
    const auto p = evaluate_variance(cfg);
    const auto& r = p.result;
    t.add_row({cfg.radius, cfg.density, cfg.v, cfg.alpha, cfg.background.omega_gw, r.gamma_tau, r.tau,
               cfg.background.omega_c * r.tau, cfg.sphere().mass(), method_name(cfg.method),
               cfg.approx_n, r.delta_phi_sq, std::sqrt(r.delta_phi_sq), r.abs_error_estimate,
               visibility(r), p.warnings});
    return t;
}

Table run_critical_radius(const RunConfig& cfg) {
    Table t;
    t.name = "critical-radius";
    t.columns = {"density_kg_m3", "omega_gw", "v_m_s",    "alpha_rad", "bandwidth", "gamma_tau",
                 "approx_n",      "filter",   "method",   "radius_m",  "mass_kg",   "warnings"};
    Warnings w;
    const auto res = evaluate_radius(cfg, w);
    t.add_row({cfg.density, cfg.background.omega_gw, cfg.v, cfg.alpha, bandwidth_name(cfg.bandwidth),
               res.gamma_tau, cfg.approx_n, filter_name(cfg.filter), method_name(cfg.method),
               res.radius, res.mass, w});
    return t;
}

Table run_fig3(const RunConfig& cfg, std::ostream& log) {
    const auto& f = cfg.fig3;
    std::vector<double> values = f.gamma_tau_values.empty()
                                     ? grid(f.gamma_tau_min, f.gamma_tau_max, f.points, true)
                                     : f.gamma_tau_values;
    std::vector<double> kept;
    for (double g : values) {
        if (g > 0.0 && std::isfinite(g)) {
            kept.push_back(g);
        } else {
            log << "warning: fig3 skips gamma_tau = " << format_double(g)
                << " (exact integral diverges; approximation alone would read "
                << format_double(approx_integral(std::max(g, 0.0), 2.0)) << ")\n";
        }
    }
    const auto exact = parallel_map(kept.size(), [&](std::size_t i) {
        return dimensionless_integral(kept[i], f.cutoff_tau, FilterShape::Lorentzian, cfg.quadrature);
    });

    Table t;
    t.name = "fig3";
    t.columns = {"gamma_tau", "i_exact", "i_exact_abs_error", "i_approx_n2", "ratio"};
    for (std::size_t i = 0; i < kept.size(); ++i) {
        const double approx = approx_integral(kept[i], 2.0);
        t.add_row({kept[i], exact[i].value, exact[i].abs_error, approx, exact[i].value / approx});
    }
    return t;
}

Table run_paper_table(const RunConfig& cfg) {
    struct Scenario {
        std::string name;
        CriticalRadiusRequest req;
    };
    auto base = [](double omega_gw) {
        CriticalRadiusRequest r;
        r.density = kSilica;
        r.background.omega_gw = omega_gw;
        r.v = 1.0;
        r.bandwidth = FixedGammaTau{1.0};
        r.n = 2.0;
        r.filter = FilterShape::Lorentzian;
        return r;
    };
    std::vector<Scenario> scenarios;
    scenarios.push_back({"silica_single_omega1e-15", base(1e-15)});
    scenarios.push_back({"silica_single_omega1e-19", base(1e-19)});
    {
        auto r = base(1e-15);
        r.bandwidth = SingleInterferometer{};
        scenarios.push_back({"silica_single_resolved_omega1e-15", r});
    }
    {
        auto r = base(1e-15);
        r.bandwidth = CrossCorrelated{0.1};
        scenarios.push_back({"silica_cross_n2_v1", r});
        r.n = 4.0;
        r.filter = FilterShape::SharpCutoff;
        scenarios.push_back({"silica_cross_n4_v1", r});
    }
    for (double rho : {1e15, 1e16, 1e17, 1e18}) {
        auto r = base(1e-15);
        r.density = rho;
        char name[48];
        std::snprintf(name, sizeof name, "neutron_star_rho%.0e", rho);
        scenarios.push_back({name, r});
    }
    {
        // Density at which the closed form gives R_c = 10 um; R_c scales as rho^{-1/5}.
        auto r = base(1e-15);
        const double rc_silica = critical_radius_closed(r, cfg.constants).radius;
        r.density = kSilica * std::pow(rc_silica / 1e-5, 5.0);
        scenarios.push_back({"neutron_star_implied_density", r});
    }

    struct Row {
        CriticalRadiusResult closed;
        CriticalRadiusResult exact;
    };
    const auto rows = parallel_map(scenarios.size(), [&](std::size_t i) {
        auto req = scenarios[i].req;
        Row row;
        req.method = ClosedForm{};
        row.closed = critical_radius_closed(req, cfg.constants);
        req.method = RootFind{ExactMethod{cfg.quadrature}};
        row.exact = critical_radius_solve(req, cfg.constants);
        return row;
    });

    Table t;
    t.name = "paper-table";
    t.columns = {"scenario",    "density_kg_m3", "omega_gw",       "v_m_s",          "bandwidth",
                 "approx_n",    "filter",        "gamma_tau",      "rc_closed_m",    "rc_exact_m",
                 "mass_closed_kg", "mass_exact_kg", "warnings"};
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
        const auto& s = scenarios[i];
        t.add_row({s.name, s.req.density, s.req.background.omega_gw, s.req.v,
                   bandwidth_name(s.req.bandwidth), s.req.n, filter_name(s.req.filter),
                   rows[i].closed.gamma_tau, rows[i].closed.radius, rows[i].exact.radius,
                   rows[i].closed.mass, rows[i].exact.mass, to_codes(rows[i].closed.warnings)});
    }
    return t;
}

Table run_oracle(const RunConfig& cfg) {
    Table t;
    t.name = "oracle";
    t.columns = {"check", "omega_tau", "value", "reference", "rel_deviation", "std_error"};

    const auto sphere = cfg.sphere();
    const auto icfg = cfg.interferometer();
    const double tau = icfg.tau();
    const double mass = sphere.mass();
    const auto& o = cfg.oracle;

    for (double x : grid(1e-2, 1e2, o.transfer_points, true)) {
        const double omega = x / tau;
        MonochromaticWave w{omega, 1.0, 0.0};
        const double in_phase = timedomain_phase(w, sphere, icfg, cfg.constants);
        w.phase0 = 0.5 * std::numbers::pi;
        const double quadrature = timedomain_phase(w, sphere, icfg, cfg.constants);
        const double amplitude = std::hypot(in_phase, quadrature);
        const double reference =
            std::sqrt(response_A(omega, mass, icfg.v, tau, icfg.alpha, cfg.constants));
        const double dev = reference > 0.0 ? amplitude / reference - 1.0 : 0.0;
        t.add_row({std::string("transfer_function"), x, amplitude, reference, dev, 0.0});
    }

    GWBackground bg = cfg.background;
    bg.omega_c = o.cutoff_tau / tau;
    const auto exact = phase_variance(sphere, icfg, bg, cfg.constants, ExactMethod{cfg.quadrature});
    const auto ens = make_log_ensemble(o.x_min / tau, bg.omega_c, o.modes, bg, cfg.constants, cfg.seed,
                                       o.realizations);
    const auto samples = mc_phase_samples(ens, sphere, icfg, cfg.constants, o.threads);
    const auto stats = sample_statistics(samples);
    const double dev = exact.delta_phi_sq > 0.0 ? stats.variance / exact.delta_phi_sq - 1.0 : 0.0;
    t.add_row({std::string("monte_carlo_variance"), o.cutoff_tau, stats.variance, exact.delta_phi_sq,
               dev, stats.std_error});
    t.add_row({std::string("monte_carlo_mean"), o.cutoff_tau, stats.mean, 0.0, 0.0,
               std::sqrt(stats.variance / static_cast<double>(samples.size()))});
    return t;
}

Table run_sweep(const RunConfig& cfg) {
    if (!cfg.sweep) throw ConfigError("sweep job needs a 'sweep' section");
    const auto& axis = *cfg.sweep;
    const auto values = grid(axis.min, axis.max, axis.points, axis.log_spacing);
    const bool radius_mode = axis.quantity == "critical_radius";

    struct Point {
        double a = 0.0;
        double b = 0.0;
        double gamma_tau = 0.0;
        Warnings warnings;
    };
    const auto points = parallel_map(values.size(), [&](std::size_t i) {
        RunConfig local = cfg;
        set_parameter(local, axis.parameter, values[i]);
        Point p;
        if (radius_mode) {
            const auto res = evaluate_radius(local, p.warnings);
            p.a = res.radius;
            p.b = res.mass;
            p.gamma_tau = res.gamma_tau;
        } else {
            const auto v = evaluate_variance(local);
            p.a = v.result.delta_phi_sq;
            p.b = visibility(v.result);
            p.gamma_tau = v.result.gamma_tau;
            p.warnings = v.warnings;
        }
        return p;
    });

    Table t;
    t.name = "sweep";
    if (radius_mode) {
        t.columns = {axis.parameter, "radius_m", "mass_kg", "gamma_tau", "warnings"};
    } else {
        t.columns = {axis.parameter, "delta_phi_sq", "visibility", "gamma_tau", "warnings"};
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        t.add_row({values[i], points[i].a, points[i].b, points[i].gamma_tau, points[i].warnings});
    }
    return t;
}

Table run_job(Job job, const RunConfig& cfg, std::ostream& log) {
    switch (job) {
    case Job::Variance:
        return run_variance(cfg);
    case Job::CriticalRadius:
        return run_critical_radius(cfg);
    case Job::Fig3:
        return run_fig3(cfg, log);
    case Job::PaperTable:
        return run_paper_table(cfg);
    case Job::Oracle:
        return run_oracle(cfg);
    case Job::Sweep:
        return run_sweep(cfg);
    }
    throw ConfigError("unknown job");
}

}  // namespace gwd::cli
