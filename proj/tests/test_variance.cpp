#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gwdecohere/errors.hpp"
#include "gwdecohere/variance.hpp"
#include "oracles.hpp"

using namespace gwd;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

struct Setup {
    PhysicalConstants consts;
    SphereSpec sphere{2e-3, 2329.0};
    InterferometerConfig cfg;
    GWBackground bg{1e-15};

    Setup() {
        cfg.arm_half_separation = sphere.radius;
        cfg.v = 0.1;
        cfg.bandwidth = FixedGammaTau{1.0};
    }
};

}  // namespace

TEST_CASE("dimensionless_integral against the midpoint oracle, gamma tau = 1, cutoff 1e6") {
    const auto got = dimensionless_integral(1.0, 1e6, FilterShape::Lorentzian);
    // Oracle stops at 200 pi; the remainder is below tail_bound(200 pi) ~ 6e-13.
    const auto ref = testing::refined_midpoint(1.0, 200.0 * kPi, false);
    REQUIRE(ref.last_change <= 1e-7);
    const double slack = testing::tail_bound(200.0 * kPi);
    CHECK(std::abs(got.value - ref.value) <= 1e-6 * ref.value + slack);
    CHECK(got.value == Approx(0.049359067793507).epsilon(1e-10));
    CHECK(got.abs_error >= 0.0);
    CHECK(got.abs_error <= 1e-8 * got.value);
}

TEST_CASE("integral depends only on (gamma tau, cutoff, shape)") {
    Setup s;
    const auto r1 = phase_variance(s.sphere, s.cfg, s.bg, s.consts);
    const double i1 = r1.delta_phi_sq / variance_prefactor(s.sphere, s.cfg, s.bg, s.consts);
    // change everything but gamma tau and omega_c tau
    Setup t;
    t.sphere = {7e-3, 500.0};
    t.cfg.arm_half_separation = 7e-3;
    t.cfg.v = 3.0;
    t.cfg.alpha = 0.4;
    t.bg.omega_gw = 3e-12;
    t.bg.omega_c = s.bg.omega_c * s.cfg.tau() / t.cfg.tau();
    t.consts.hubble = 3e-18;
    const auto r2 = phase_variance(t.sphere, t.cfg, t.bg, t.consts);
    const double i2 = r2.delta_phi_sq / variance_prefactor(t.sphere, t.cfg, t.bg, t.consts);
    CHECK(i1 == Approx(i2).epsilon(1e-12));
}

TEST_CASE("integral decreases with gamma tau") {
    for (auto shape : {FilterShape::Lorentzian, FilterShape::SharpCutoff}) {
        const double a = dimensionless_integral(1.0, 1e5, shape).value;
        const double b = dimensionless_integral(10.0, 1e5, shape).value;
        const double c = dimensionless_integral(100.0, 1e5, shape).value;
        CHECK(a > b);
        CHECK(b > c);
    }
}

TEST_CASE("zero bandwidth diverges") {
    CHECK_THROWS_AS((void)dimensionless_integral(0.0, 1e5, FilterShape::Lorentzian), DivergentIntegral);
    CHECK_THROWS_AS((void)dimensionless_integral(0.0, 1e5, FilterShape::SharpCutoff), DivergentIntegral);
    Setup s;
    s.cfg.bandwidth = FixedGammaTau{0.0};
    CHECK_THROWS_AS((void)phase_variance(s.sphere, s.cfg, s.bg, s.consts), DivergentIntegral);
    // the approximation stays finite at zero bandwidth
    const auto approx = phase_variance(s.sphere, s.cfg, s.bg, s.consts, ApproxMethod{2.0});
    CHECK(approx.delta_phi_sq ==
          Approx(variance_prefactor(s.sphere, s.cfg, s.bg, s.consts) * std::numbers::sqrt3).epsilon(1e-14));
}

TEST_CASE("bad inputs") {
    CHECK_THROWS_AS((void)dimensionless_integral(1.0, 0.0, FilterShape::Lorentzian), InvalidArgument);
    CHECK_THROWS_AS((void)dimensionless_integral(-1.0, 10.0, FilterShape::Lorentzian), InvalidArgument);
    QuadratureSettings bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS((void)dimensionless_integral(1.0, 10.0, FilterShape::Lorentzian, bad), InvalidArgument);
}

TEST_CASE("sharp filter below the cut-on is empty") {
    CHECK(dimensionless_integral(50.0, 40.0, FilterShape::SharpCutoff).value == 0.0);
}

TEST_CASE("asymptotic tail agrees with explicit integration to the cut-off") {
    QuadratureSettings explicit_tail;
    explicit_tail.tail_policy = TailPolicy::ExplicitToCutoff;
    explicit_tail.rel_tol = 1e-11;
    for (auto shape : {FilterShape::Lorentzian, FilterShape::SharpCutoff}) {
        for (double gt : {0.05, 1.0, 30.0, 300.0, 3000.0}) {
            const double a = dimensionless_integral(gt, 2e4, shape).value;
            const double b = dimensionless_integral(gt, 2e4, shape, explicit_tail).value;
            CHECK(a == Approx(b).epsilon(1e-9));
        }
    }
}

TEST_CASE("stable under doubling a large cut-off") {
    for (double gt : {0.1, 1.0, 10.0, 1e3}) {
        const double cut = 100.0 * std::max(2.0 * kPi, gt);
        const auto a = dimensionless_integral(gt, cut, FilterShape::Lorentzian);
        const auto b = dimensionless_integral(gt, 2.0 * cut, FilterShape::Lorentzian);
        CHECK(std::abs(a.value - b.value) <= 1e-8 * b.value);
    }
}

TEST_CASE("huge cut-off and huge gamma tau stay cheap and finite") {
    const auto r = dimensionless_integral(1.3e8, 1e10, FilterShape::Lorentzian);
    // For x << gamma tau the integrand is sin^4(x/2)/(x^3 b^2), so I b^2 -> int sin^4(x/2)/x^3 = ln(2)/4.
    CHECK(r.value * 1.3e8 * 1.3e8 == Approx(0.25 * std::log(2.0)).epsilon(1e-6));
}

TEST_CASE("approximation") {
    CHECK(approx_denominator(0.0, 2.0) == 1.0);
    CHECK(approx_denominator(1.0, 2.0) == 31.0);
    CHECK(approx_denominator(1.0, 4.0) == 31.0);
    CHECK(approx_integral(0.0, 2.0) == Approx(std::numbers::sqrt3).epsilon(1e-15));
    CHECK(approx_integral(1.0, 2.0) == Approx(0.05587260669577024).epsilon(1e-14));
    CHECK(approx_integral(1e12, 2.0) < 1e-24);
    CHECK(is_standard_exponent(2.0));
    CHECK(is_standard_exponent(4.0));
    CHECK_FALSE(is_standard_exponent(3.0));
}

TEST_CASE("phase_variance") {
    Setup s;
    SUBCASE("matches the hand-assembled expression at alpha = pi/4") {
        const auto r = phase_variance(s.sphere, s.cfg, s.bg, s.consts);
        const double m = s.sphere.mass();
        const double vt = s.cfg.v * s.cfg.tau();
        const double integral = dimensionless_integral(1.0, s.bg.omega_c * s.cfg.tau(), FilterShape::Lorentzian).value;
        const double hand = 24.0 * s.consts.hubble * s.consts.hubble * s.bg.omega_gw /
                            (kPi * s.consts.hbar * s.consts.hbar) * m * m * std::pow(vt, 4) * integral;
        CHECK(r.delta_phi_sq == Approx(hand).epsilon(1e-12));
        CHECK(std::holds_alternative<ExactQuadrature>(r.method));
        CHECK(r.abs_error_estimate >= 0.0);
    }
    SUBCASE("zero background gives zero variance") {
        s.bg.omega_gw = 0.0;
        CHECK(phase_variance(s.sphere, s.cfg, s.bg, s.consts).delta_phi_sq == 0.0);
        CHECK(phase_variance(s.sphere, s.cfg, s.bg, s.consts, ApproxMethod{}).delta_phi_sq == 0.0);
    }
    SUBCASE("quadrupole scaling: dphi proportional to m R^2 / sin^2 alpha") {
        const double d0 = std::sqrt(phase_variance(s.sphere, s.cfg, s.bg, s.consts).delta_phi_sq);
        // doubling the mass at fixed geometry (density x2)
        auto heavy = s.sphere;
        heavy.density *= 2.0;
        CHECK(std::sqrt(phase_variance(heavy, s.cfg, s.bg, s.consts).delta_phi_sq) == Approx(2.0 * d0).epsilon(1e-9));
        // doubling R_arm at fixed mass, gamma tau and omega_c tau
        auto wide = s.cfg;
        wide.arm_half_separation *= 2.0;
        auto bg = s.bg;
        bg.omega_c /= 2.0;
        CHECK(std::sqrt(phase_variance(s.sphere, wide, bg, s.consts).delta_phi_sq) == Approx(4.0 * d0).epsilon(1e-9));
        // alpha: dphi ~ sin(2a) / sin^2(a) at fixed R and fixed omega_c tau
        auto tilted = s.cfg;
        tilted.alpha = 0.3;
        auto bg2 = s.bg;
        bg2.omega_c *= s.cfg.tau() / tilted.tau();
        const double expect = d0 * (std::sin(0.6) / std::pow(std::sin(0.3), 2)) / (1.0 / 0.5);
        CHECK(std::sqrt(phase_variance(s.sphere, tilted, bg2, s.consts).delta_phi_sq) == Approx(expect).epsilon(1e-9));
    }
    SUBCASE("exact and approximation agree within the measured band at gamma tau = 1") {
        const auto exact = phase_variance(s.sphere, s.cfg, s.bg, s.consts);
        const auto approx = phase_variance(s.sphere, s.cfg, s.bg, s.consts, ApproxMethod{2.0});
        const double dev = std::abs(exact.delta_phi_sq / approx.delta_phi_sq - 1.0);
        MESSAGE("exact/approx - 1 at gamma tau = 1: " << dev);
        CHECK(dev <= 0.5);
        CHECK(std::get<Approximation>(approx.method).n == 2.0);
    }
}

TEST_CASE("visibility") {
    VarianceResult r;
    CHECK(visibility(r) == 1.0);
    r.delta_phi_sq = kPi * kPi;
    CHECK(visibility(r) == Approx(0.0071918833558263656).epsilon(1e-14));
    double prev = 1.0;
    for (double v = 0.1; v < 50.0; v *= 1.5) {
        r.delta_phi_sq = v;
        const double vis = visibility(r);
        CHECK(vis < prev);
        CHECK(vis > 0.0);
        prev = vis;
    }
}
