#include "gwdecohere/cli/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gwdecohere/errors.hpp"
#include "json.hpp"

namespace gwd::cli {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<std::string_view, Job>, 6> kJobs{{
    {"variance", Job::Variance},
    {"critical-radius", Job::CriticalRadius},
    {"fig3", Job::Fig3},
    {"paper-table", Job::PaperTable},
    {"oracle", Job::Oracle},
    {"sweep", Job::Sweep},
}};

void reject_unknown(const json& obj, std::string_view where, std::initializer_list<const char*> keys) {
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, _] : obj.items()) {
        if (!allowed.count(k)) {
            throw ConfigError("unknown key '" + k + "' in " + std::string(where));
        }
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return v.get<double>();
}

std::size_t get_count(const json& obj, const char* key, std::size_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_number_unsigned()) {
        throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

std::string get_string(const json& obj, const char* key, std::string fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj.at(key);
    if (!v.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
}

const json& get_object(const json& obj, const char* key) {
    const auto& v = obj.at(key);
    if (!v.is_object()) throw ConfigError(std::string("'") + key + "' must be an object");
    return v;
}

BandwidthModel parse_bandwidth(const json& bw) {
    reject_unknown(bw, "bandwidth", {"model", "gamma_tau", "fraction"});
    const auto model = get_string(bw, "model", "fixed");
    if (model == "fixed") return FixedGammaTau{get_number(bw, "gamma_tau", 1.0)};
    if (model == "single") return SingleInterferometer{};
    if (model == "cross_correlated") return CrossCorrelated{get_number(bw, "fraction", 0.1)};
    throw ConfigError("bandwidth.model must be fixed, single or cross_correlated, got '" + model + "'");
}

FilterShape parse_filter(const std::string& s) {
    if (s == "lorentzian") return FilterShape::Lorentzian;
    if (s == "sharp") return FilterShape::SharpCutoff;
    throw ConfigError("filter must be lorentzian or sharp, got '" + s + "'");
}

MethodChoice parse_method(const std::string& s) {
    if (s == "exact") return MethodChoice::Exact;
    if (s == "approx") return MethodChoice::Approx;
    if (s == "closed_form") return MethodChoice::ClosedForm;
    throw ConfigError("method must be exact, approx or closed_form, got '" + s + "'");
}

void validate(const RunConfig& cfg) {
    try {
        cfg.constants.validate();
        cfg.sphere().validate();
        cfg.interferometer().validate();
        cfg.background.validate();
        cfg.quadrature.validate();
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
    if (!std::isfinite(cfg.approx_n)) throw ConfigError("approx_n must be finite");
    const auto& f = cfg.fig3;
    if (f.gamma_tau_values.empty()) {
        if (!(f.gamma_tau_min > 0.0 && f.gamma_tau_max > f.gamma_tau_min) || f.points < 2) {
            throw ConfigError("fig3: need 0 < gamma_tau_min < gamma_tau_max and points >= 2");
        }
    }
    if (!(f.cutoff_tau > 0.0)) throw ConfigError("fig3.cutoff_tau must be positive");
    const auto& o = cfg.oracle;
    if (o.modes < 2 || o.realizations < 2 || !(o.x_min > 0.0) || !(o.cutoff_tau > o.x_min) ||
        o.transfer_points < 2) {
        throw ConfigError("oracle: need modes >= 2, realizations >= 2, 0 < x_min < cutoff_tau");
    }
    if (cfg.sweep) {
        const auto& s = *cfg.sweep;
        const auto& names = sweep_parameters();
        if (std::find(names.begin(), names.end(), s.parameter) == names.end()) {
            throw ConfigError("sweep.parameter '" + s.parameter + "' is not a sweepable parameter");
        }
        if (s.points < 2) throw ConfigError("sweep.points must be >= 2");
        if (!(s.max > s.min) || (s.log_spacing && !(s.min > 0.0))) {
            throw ConfigError("sweep: need min < max (and min > 0 for log spacing)");
        }
        if (s.quantity != "critical_radius" && s.quantity != "variance") {
            throw ConfigError("sweep.quantity must be critical_radius or variance");
        }
    }
}

}  // namespace

std::optional<Job> parse_job(std::string_view name) {
    for (const auto& [n, j] : kJobs) {
        if (n == name) return j;
    }
    return std::nullopt;
}

std::string_view job_name(Job job) {
    for (const auto& [n, j] : kJobs) {
        if (j == job) return n;
    }
    return "unknown";
}

InterferometerConfig RunConfig::interferometer() const {
    InterferometerConfig cfg;
    cfg.v = v;
    cfg.alpha = alpha;
    cfg.arm_half_separation = arm_half_separation.value_or(radius);
    cfg.bandwidth = bandwidth;
    cfg.filter = filter;
    return cfg;
}

const std::vector<std::string>& sweep_parameters() {
    static const std::vector<std::string> names{"density_kg_m3", "radius_m",      "v_m_s",
                                                "alpha_rad",     "omega_gw",      "omega_c_rad_s",
                                                "gamma_tau",     "approx_n"};
    return names;
}

void set_parameter(RunConfig& cfg, std::string_view name, double value) {
    if (name == "density_kg_m3") {
        cfg.density = value;
    } else if (name == "radius_m") {
        cfg.radius = value;
    } else if (name == "v_m_s") {
        cfg.v = value;
    } else if (name == "alpha_rad") {
        cfg.alpha = value;
    } else if (name == "omega_gw") {
        cfg.background.omega_gw = value;
    } else if (name == "omega_c_rad_s") {
        cfg.background.omega_c = value;
    } else if (name == "gamma_tau") {
        cfg.bandwidth = FixedGammaTau{value};
    } else if (name == "approx_n") {
        cfg.approx_n = value;
    } else {
        throw ConfigError("unknown parameter '" + std::string(name) + "'");
    }
}

RunConfig parse_config(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");

    reject_unknown(doc, "config",
                   {"density_kg_m3", "radius_m", "arm_half_separation_m", "v_m_s", "alpha_rad",
                    "omega_gw", "omega_c_rad_s", "bandwidth", "filter", "approx_n", "method",
                    "quadrature", "constants", "fig3", "oracle", "sweep", "seed", "format"});

    RunConfig cfg;
    try {
        cfg.density = get_number(doc, "density_kg_m3", cfg.density);
        cfg.radius = get_number(doc, "radius_m", cfg.radius);
        if (doc.contains("arm_half_separation_m")) {
            cfg.arm_half_separation = get_number(doc, "arm_half_separation_m", 0.0);
        }
        cfg.v = get_number(doc, "v_m_s", cfg.v);
        cfg.alpha = get_number(doc, "alpha_rad", cfg.alpha);
        cfg.background.omega_gw = get_number(doc, "omega_gw", cfg.background.omega_gw);
        cfg.background.omega_c = get_number(doc, "omega_c_rad_s", cfg.background.omega_c);
        if (doc.contains("bandwidth")) cfg.bandwidth = parse_bandwidth(get_object(doc, "bandwidth"));
        cfg.filter = parse_filter(get_string(doc, "filter", "lorentzian"));
        cfg.approx_n = get_number(doc, "approx_n", cfg.approx_n);
        cfg.method = parse_method(get_string(doc, "method", "exact"));

        if (doc.contains("quadrature")) {
            const auto& q = get_object(doc, "quadrature");
            reject_unknown(q, "quadrature", {"rel_tol", "abs_tol", "max_subdivisions", "tail_policy"});
            cfg.quadrature.rel_tol = get_number(q, "rel_tol", cfg.quadrature.rel_tol);
            cfg.quadrature.abs_tol = get_number(q, "abs_tol", cfg.quadrature.abs_tol);
            cfg.quadrature.max_subdivisions =
                get_count(q, "max_subdivisions", cfg.quadrature.max_subdivisions);
            const auto tail = get_string(q, "tail_policy", "asymptotic");
            if (tail == "asymptotic") {
                cfg.quadrature.tail_policy = TailPolicy::AsymptoticTail;
            } else if (tail == "explicit") {
                cfg.quadrature.tail_policy = TailPolicy::ExplicitToCutoff;
            } else {
                throw ConfigError("quadrature.tail_policy must be asymptotic or explicit");
            }
        }
        if (doc.contains("constants")) {
            const auto& c = get_object(doc, "constants");
            reject_unknown(c, "constants", {"hubble_s_inv", "hbar_J_s", "c_m_s"});
            cfg.constants.hubble = get_number(c, "hubble_s_inv", cfg.constants.hubble);
            cfg.constants.hbar = get_number(c, "hbar_J_s", cfg.constants.hbar);
            cfg.constants.c = get_number(c, "c_m_s", cfg.constants.c);
        }
        if (doc.contains("fig3")) {
            const auto& f = get_object(doc, "fig3");
            reject_unknown(f, "fig3",
                           {"gamma_tau_min", "gamma_tau_max", "points", "cutoff_tau", "gamma_tau_values"});
            cfg.fig3.gamma_tau_min = get_number(f, "gamma_tau_min", cfg.fig3.gamma_tau_min);
            cfg.fig3.gamma_tau_max = get_number(f, "gamma_tau_max", cfg.fig3.gamma_tau_max);
            cfg.fig3.points = get_count(f, "points", cfg.fig3.points);
            cfg.fig3.cutoff_tau = get_number(f, "cutoff_tau", cfg.fig3.cutoff_tau);
            if (f.contains("gamma_tau_values")) {
                const auto& vals = f.at("gamma_tau_values");
                if (!vals.is_array()) throw ConfigError("fig3.gamma_tau_values must be an array");
                for (const auto& v : vals) {
                    if (!v.is_number()) throw ConfigError("fig3.gamma_tau_values must hold numbers");
                    cfg.fig3.gamma_tau_values.push_back(v.get<double>());
                }
            }
        }
        if (doc.contains("oracle")) {
            const auto& o = get_object(doc, "oracle");
            reject_unknown(o, "oracle",
                           {"modes", "realizations", "x_min", "cutoff_tau", "transfer_points", "threads"});
            cfg.oracle.modes = get_count(o, "modes", cfg.oracle.modes);
            cfg.oracle.realizations = get_count(o, "realizations", cfg.oracle.realizations);
            cfg.oracle.x_min = get_number(o, "x_min", cfg.oracle.x_min);
            cfg.oracle.cutoff_tau = get_number(o, "cutoff_tau", cfg.oracle.cutoff_tau);
            cfg.oracle.transfer_points = get_count(o, "transfer_points", cfg.oracle.transfer_points);
            cfg.oracle.threads = static_cast<unsigned>(get_count(o, "threads", cfg.oracle.threads));
        }
        if (doc.contains("sweep")) {
            const auto& s = get_object(doc, "sweep");
            reject_unknown(s, "sweep", {"parameter", "min", "max", "points", "spacing", "quantity"});
            SweepAxis axis;
            axis.parameter = get_string(s, "parameter", "");
            axis.min = get_number(s, "min", 0.0);
            axis.max = get_number(s, "max", 0.0);
            axis.points = get_count(s, "points", 0);
            const auto spacing = get_string(s, "spacing", "log");
            if (spacing != "log" && spacing != "linear") {
                throw ConfigError("sweep.spacing must be log or linear");
            }
            axis.log_spacing = spacing == "log";
            axis.quantity = get_string(s, "quantity", axis.quantity);
            cfg.sweep = axis;
        }
        if (doc.contains("seed")) {
            if (!doc.at("seed").is_number_unsigned()) throw ConfigError("seed must be a u64");
            cfg.seed = doc.at("seed").get<std::uint64_t>();
        }
        const auto fmt = get_string(doc, "format", "csv");
        if (fmt == "csv") {
            cfg.format = OutputFormat::Csv;
        } else if (fmt == "json") {
            cfg.format = OutputFormat::Json;
        } else {
            throw ConfigError("format must be csv or json");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace gwd::cli
