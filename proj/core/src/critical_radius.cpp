#include "gwdecohere/critical_radius.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "gwdecohere/errors.hpp"
#include "gwdecohere/root_find.hpp"

namespace gwd {

using detail::require;

namespace {

constexpr double kScanLow = 1e-9;   // m
constexpr double kScanHigh = 1e3;   // m

void require_background(const GWBackground& bg) {
    if (bg.omega_gw == 0.0) {
        throw NoDecoherence("critical radius: Omega_GW = 0 gives no dephasing (R_c is infinite)");
    }
}

CriticalRadiusResult finish(double radius, double gamma_tau, const CriticalRadiusRequest& req,
                            const PhysicalConstants& consts) {
    CriticalRadiusResult out;
    out.radius = radius;
    out.gamma_tau = gamma_tau;
    out.mass = SphereSpec{radius, req.density}.mass();
    out.warnings = validity_warnings(radius, req, consts);
    return out;
}

}  // namespace

void CriticalRadiusRequest::validate() const {
    require(std::isfinite(density) && density > 0.0, "CriticalRadiusRequest: density must be positive");
    require(std::isfinite(v) && v > 0.0, "CriticalRadiusRequest: v must be positive");
    require(std::isfinite(n), "CriticalRadiusRequest: n must be finite");
    background.validate();
    interferometer(1.0).validate();
}

InterferometerConfig CriticalRadiusRequest::interferometer(double radius) const {
    InterferometerConfig cfg;
    cfg.v = v;
    cfg.alpha = alpha;
    cfg.arm_half_separation = radius;
    cfg.bandwidth = bandwidth;
    cfg.filter = filter;
    return cfg;
}

std::string_view to_string(ValidityWarning w) {
    switch (w) {
    case ValidityWarning::PointLikeLimit:
        return "point_like_limit";
    case ValidityWarning::BandwidthLimit:
        return "bandwidth_limit";
    }
    return "unknown";
}

CriticalRadiusResult critical_radius_closed(const CriticalRadiusRequest& req,
                                            const PhysicalConstants& consts) {
    req.validate();
    consts.validate();
    require_background(req.background);

    const double gamma_tau = resolve_gamma_tau(req.bandwidth, req.v, req.alpha, consts);
    const double tan_alpha = std::tan(req.alpha);
    // Summed in logs; the individual factors span ~100 decades.
    const double log_r10 = std::log(std::numbers::sqrt3 * std::numbers::pi) +
                           2.0 * std::log(consts.hbar) - std::log(512.0) -
                           2.0 * std::log(consts.hubble) +
                           std::log(approx_denominator(gamma_tau, req.n)) -
                           2.0 * std::log(req.density) - std::log(req.background.omega_gw) +
                           2.0 * std::log(tan_alpha);
    return finish(std::exp(0.1 * log_r10), gamma_tau, req, consts);
}

double phase_std_at_radius(double radius, const CriticalRadiusRequest& req,
                           const PhysicalConstants& consts, const VarianceMethod& method) {
    const SphereSpec sphere{radius, req.density};
    const auto result =
        phase_variance(sphere, req.interferometer(radius), req.background, consts, method);
    return std::sqrt(result.delta_phi_sq);
}

CriticalRadiusResult critical_radius_solve(const CriticalRadiusRequest& req,
                                           const PhysicalConstants& consts) {
    req.validate();
    consts.validate();
    require_background(req.background);

    VarianceMethod method = ExactMethod{};
    if (const auto* rf = std::get_if<RootFind>(&req.method)) method = rf->variance;

    const auto residual = [&](double log_r) {
        const double dphi = phase_std_at_radius(std::exp(log_r), req, consts, method);
        return std::log(dphi) - std::log(std::numbers::pi);
    };

    double lo = std::log(kScanLow);
    double f_lo = residual(lo);
    double hi = lo;
    bool bracketed = false;
    const int decades = static_cast<int>(std::lround(std::log10(kScanHigh / kScanLow)));
    for (int k = 1; k <= decades; ++k) {
        hi = std::log(kScanLow) + k * std::log(10.0);
        const double f_hi = residual(hi);
        if (f_lo < 0.0 && f_hi >= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        f_lo = f_hi;
    }
    if (!bracketed) {
        char buf[160];
        std::snprintf(buf, sizeof buf,
                      "critical_radius_solve: dphi - pi has no sign change on [%.3g, %.3g] m "
                      "(dphi at upper end: %.6g rad)",
                      kScanLow, kScanHigh, std::exp(f_lo) * std::numbers::pi);
        throw BracketFailure(buf);
    }

    const auto root = brent_root(residual, lo, hi, 1e-12);
    return finish(std::exp(root.root), resolve_gamma_tau(req.bandwidth, req.v, req.alpha, consts),
                  req, consts);
}

CriticalRadiusResult critical_radius(const CriticalRadiusRequest& req,
                                     const PhysicalConstants& consts) {
    if (std::holds_alternative<ClosedForm>(req.method)) return critical_radius_closed(req, consts);
    return critical_radius_solve(req, consts);
}

double cross_correlation_multiplier(double v, double n, const PhysicalConstants& consts,
                                    double fraction) {
    require(std::isfinite(v) && v > 0.0, "cross_correlation_multiplier: v must be positive");
    require(std::isfinite(fraction) && fraction > 0.0,
            "cross_correlation_multiplier: fraction must be positive");
    return std::pow(fraction * std::numbers::pi * consts.c / v, n / 10.0);
}

std::vector<ValidityWarning> validity_warnings(double radius, const CriticalRadiusRequest& req,
                                               const PhysicalConstants& consts) {
    std::vector<ValidityWarning> out;
    if (radius > consts.c / req.background.omega_c) out.push_back(ValidityWarning::PointLikeLimit);
    const auto cfg = req.interferometer(radius);
    const double gamma = resolve_gamma_tau(req.bandwidth, req.v, req.alpha, consts) / cfg.tau();
    // Cross-correlated bandwidth sits exactly on the bound by construction; allow roundoff.
    if (gamma > std::numbers::pi * consts.c / (10.0 * radius) * (1.0 + 1e-9)) {
        out.push_back(ValidityWarning::BandwidthLimit);
    }
    return out;
}

}  // namespace gwd
