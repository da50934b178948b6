#include "gwdecohere/variance.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gwdecohere/errors.hpp"
#include "gwdecohere/quadrature.hpp"
#include "gwdecohere/spectral.hpp"

namespace gwd {

using detail::require;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxTailTerms = 40;

// Antiderivative of g(x) = 1/(x^3 (x^2 + b^2)) that vanishes at infinity.
double tail_antiderivative(double x, double b) {
    const double x2 = x * x;
    const double inv_x4 = 1.0 / (x2 * x2);
    if (b == 0.0) return -0.25 * inv_x4;
    const double y = b * b / x2;
    if (y < 0.05) {
        // -1/(2 b^2 x^2) + log1p(y)/(2 b^4) expanded in y, leading terms cancel.
        double sum = 0.0;
        double yk = 1.0;
        for (int j = 2; j < 40; ++j) {
            const double term = yk / (2.0 * j);
            sum += (j % 2 == 0) ? term : -term;
            if (term < 1e-18 * std::abs(sum)) break;
            yk *= y;
        }
        return -inv_x4 * sum;
    }
    const double b2 = b * b;
    return -0.5 / (b2 * x2) + std::log1p(y) / (2.0 * b2 * b2);
}

// Derivatives g^{(n)}(x), n = 0..order, of g = x^{-3} q(x) with q = 1/(x^2 + b^2).
std::vector<double> tail_kernel_derivatives(double x, double b, int order) {
    const auto count = static_cast<std::size_t>(order) + 1;
    std::vector<double> q(count);
    const double d = x * x + b * b;
    q[0] = 1.0 / d;
    if (order >= 1) q[1] = -2.0 * x * q[0] / d;
    // (x^2 + b^2) q^{(n)} + 2 n x q^{(n-1)} + n (n-1) q^{(n-2)} = 0
    for (std::size_t n = 2; n < count; ++n) {
        const double nn = static_cast<double>(n);
        q[n] = -(2.0 * nn * x * q[n - 1] + nn * (nn - 1.0) * q[n - 2]) / d;
    }
    std::vector<double> p(count);  // derivatives of x^{-3}
    double xp = 1.0 / (x * x * x);
    double coef = 1.0;  // (k+2)!/2 with sign
    for (std::size_t k = 0; k < count; ++k) {
        p[k] = coef * xp;
        xp /= x;
        coef *= -static_cast<double>(k + 3);
    }
    std::vector<double> g(count, 0.0);
    for (std::size_t n = 0; n < count; ++n) {
        double binom = 1.0;
        double acc = 0.0;
        for (std::size_t k = 0; k <= n; ++k) {
            acc += binom * p[k] * q[n - k];
            binom = binom * static_cast<double>(n - k) / static_cast<double>(k + 1);
        }
        g[n] = acc;
    }
    return g;
}

struct TailValue {
    double value = 0.0;
    double abs_error = 0.0;
};

// Re of the asymptotic antiderivative of exp(i k x) g(x):
//   exp(i k x) sum_n (-1)^n g^{(n)}(x) / (i k)^{n+1}
TailValue oscillatory_antiderivative(double x, double b, double k) {
    const auto g = tail_kernel_derivatives(x, b, kMaxTailTerms);
    const std::complex<double> ik(0.0, k);
    std::complex<double> sum = 0.0;
    std::complex<double> denom = ik;
    double last = 0.0;
    double prev_mag = std::numeric_limits<double>::infinity();
    for (int n = 0; n <= kMaxTailTerms; ++n) {
        const std::complex<double> term = ((n % 2 == 0) ? 1.0 : -1.0) * g[static_cast<std::size_t>(n)] / denom;
        const double mag = std::abs(term);
        if (mag > prev_mag) break;  // asymptotic series started to diverge
        sum += term;
        last = mag;
        prev_mag = mag;
        if (mag <= 1e-17 * std::abs(sum)) break;
        denom *= ik;
    }
    const std::complex<double> phase = std::polar(1.0, std::fmod(k * x, 2.0 * kPi));
    return {(phase * sum).real(), last};
}

// int_X^Y sin^4(x/2) g(x) dx using sin^4(x/2) = 3/8 - cos(x)/2 + cos(2x)/8.
TailValue analytic_tail(double X, double Y, double b) {
    const double smooth = tail_antiderivative(Y, b) - tail_antiderivative(X, b);
    const auto c1y = oscillatory_antiderivative(Y, b, 1.0);
    const auto c1x = oscillatory_antiderivative(X, b, 1.0);
    const auto c2y = oscillatory_antiderivative(Y, b, 2.0);
    const auto c2x = oscillatory_antiderivative(X, b, 2.0);
    TailValue out;
    out.value = 0.375 * smooth - 0.5 * (c1y.value - c1x.value) + 0.125 * (c2y.value - c2x.value);
    out.abs_error = 0.5 * (c1y.abs_error + c1x.abs_error) + 0.125 * (c2y.abs_error + c2x.abs_error) +
                    1e-15 * std::abs(0.375 * smooth);
    return out;
}

}  // namespace

void QuadratureSettings::validate() const {
    require(std::isfinite(rel_tol) && rel_tol > 0.0, "QuadratureSettings: rel_tol must be positive");
    require(std::isfinite(abs_tol) && abs_tol >= 0.0, "QuadratureSettings: abs_tol must be >= 0");
    require(max_subdivisions >= 1, "QuadratureSettings: max_subdivisions must be >= 1");
}

IntegralResult dimensionless_integral(double gamma_tau, double cutoff_tau, FilterShape shape,
                                      const QuadratureSettings& settings) {
    settings.validate();
    require(std::isfinite(gamma_tau) && gamma_tau >= 0.0,
            "dimensionless_integral: gamma_tau must be >= 0");
    require(std::isfinite(cutoff_tau) && cutoff_tau > 0.0,
            "dimensionless_integral: cutoff_tau must be positive");
    if (gamma_tau == 0.0) {
        throw DivergentIntegral(
            "dimensionless_integral: gamma_tau = 0 diverges logarithmically at the origin");
    }

    const bool sharp = shape == FilterShape::SharpCutoff;
    const double lower = sharp ? gamma_tau : 0.0;
    if (lower >= cutoff_tau) return {};

    double split = cutoff_tau;
    if (settings.tail_policy == TailPolicy::AsymptoticTail) {
        split = std::min(cutoff_tau, std::max(20.0 * kPi, lower));
    }

    const double panels = (split - lower) / kPi + 2.0;
    if (panels > static_cast<double>(settings.max_subdivisions)) {
        throw QuadratureFailure("dimensionless_integral: " + std::to_string(panels) +
                                " half-period panels exceed max_subdivisions");
    }

    std::vector<double> breaks;
    breaks.reserve(static_cast<std::size_t>(panels) + 2);
    breaks.push_back(lower);
    if (!sharp && gamma_tau < split) breaks.push_back(gamma_tau);
    for (double k = std::floor(lower / kPi) + 1.0; k * kPi < split; k += 1.0) {
        breaks.push_back(k * kPi);
    }
    breaks.push_back(split);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    quad::AdaptiveOptions opts;
    opts.rel_tol = 0.5 * settings.rel_tol;
    opts.abs_tol = settings.abs_tol;
    opts.max_subdivisions = settings.max_subdivisions;
    const auto explicit_part = quad::integrate_adaptive(
        [gamma_tau, shape](double x) { return x > 0.0 ? integrand(x, gamma_tau, shape) : 0.0; },
        breaks, opts);

    IntegralResult out{explicit_part.value, explicit_part.abs_error};
    if (split < cutoff_tau) {
        const auto tail = analytic_tail(split, cutoff_tau, sharp ? 0.0 : gamma_tau);
        out.value += tail.value;
        out.abs_error += tail.abs_error;
    }
    return out;
}

double approx_denominator(double gamma_tau, double n) {
    require(std::isfinite(gamma_tau) && gamma_tau >= 0.0,
            "approx_denominator: gamma_tau must be >= 0");
    return 1.0 + 20.0 * std::pow(gamma_tau, 0.25) + 10.0 * std::pow(gamma_tau, n);
}

double approx_integral(double gamma_tau, double n) {
    return std::numbers::sqrt3 / approx_denominator(gamma_tau, n);
}

double variance_prefactor(const SphereSpec& sphere, const InterferometerConfig& cfg,
                          const GWBackground& bg, const PhysicalConstants& consts) {
    const double m = sphere.mass();
    const double vt = cfg.v * cfg.tau();
    const double vt2 = vt * vt;
    const double s2a = std::sin(2.0 * cfg.alpha);
    const double h0 = consts.hubble;
    return 24.0 * h0 * h0 * bg.omega_gw / (kPi * consts.hbar * consts.hbar) * m * m * vt2 * vt2 *
           s2a * s2a;
}

VarianceResult phase_variance(const SphereSpec& sphere, const InterferometerConfig& cfg,
                              const GWBackground& bg, const PhysicalConstants& consts,
                              const VarianceMethod& method) {
    sphere.validate();
    cfg.validate();
    bg.validate();
    consts.validate();

    VarianceResult out;
    out.tau = cfg.tau();
    out.gamma_tau = resolve_gamma_tau(cfg.bandwidth, cfg.v, cfg.alpha, consts);
    const double prefactor = variance_prefactor(sphere, cfg, bg, consts);

    if (const auto* exact = std::get_if<ExactMethod>(&method)) {
        const auto integral =
            dimensionless_integral(out.gamma_tau, bg.omega_c * out.tau, cfg.filter, exact->settings);
        out.delta_phi_sq = prefactor * integral.value;
        out.abs_error_estimate = prefactor * integral.abs_error;
        out.method = ExactQuadrature{};
    } else {
        const double n = std::get<ApproxMethod>(method).n;
        out.delta_phi_sq = prefactor * approx_integral(out.gamma_tau, n);
        out.method = Approximation{n};
    }
    out.delta_phi_sq = std::max(out.delta_phi_sq, 0.0);
    return out;
}

double visibility(const VarianceResult& r) {
    require(r.delta_phi_sq >= 0.0, "visibility: delta_phi_sq must be >= 0");
    return std::exp(-0.5 * r.delta_phi_sq);
}

}  // namespace gwd
