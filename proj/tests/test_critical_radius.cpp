#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "gwdecohere/critical_radius.hpp"
#include "gwdecohere/errors.hpp"

using namespace gwd;
using doctest::Approx;
constexpr double kPi = std::numbers::pi;

namespace {

CriticalRadiusRequest silica(double omega_gw) {
    CriticalRadiusRequest r;
    r.density = 2329.0;
    r.background.omega_gw = omega_gw;
    r.bandwidth = FixedGammaTau{1.0};
    r.n = 2.0;
    return r;
}

bool has(const std::vector<ValidityWarning>& ws, ValidityWarning w) {
    return std::find(ws.begin(), ws.end(), w) != ws.end();
}

}  // namespace

TEST_CASE("closed-form critical radius for silica") {
    const auto r15 = critical_radius_closed(silica(1e-15));
    const auto r19 = critical_radius_closed(silica(1e-19));
    CHECK(r15.radius == Approx(3.2130635057331085e-3).epsilon(1e-12));
    CHECK(r19.radius == Approx(8.0708506236295992e-3).epsilon(1e-12));
    CHECK(r19.radius / r15.radius == Approx(std::pow(10.0, 0.4)).epsilon(1e-12));
    CHECK(r15.gamma_tau == 1.0);
    CHECK(r15.mass == Approx(SphereSpec{r15.radius, 2329.0}.mass()).epsilon(1e-15));
    CHECK(r15.warnings.empty());
}

TEST_CASE("closed-form scaling laws") {
    auto req = silica(1e-15);
    const double base = critical_radius_closed(req).radius;
    SUBCASE("rho x 32 halves R_c") {
        req.density *= 32.0;
        CHECK(critical_radius_closed(req).radius == Approx(0.5 * base).epsilon(1e-13));
    }
    SUBCASE("H0^{-1/5}") {
        PhysicalConstants k;
        k.hubble *= 32.0;
        CHECK(critical_radius_closed(req, k).radius == Approx(0.5 * base).epsilon(1e-13));
    }
    SUBCASE("independent of v for fixed and single-interferometer bandwidths") {
        for (BandwidthModel m : {BandwidthModel{FixedGammaTau{1.0}}, BandwidthModel{SingleInterferometer{}}}) {
            req.bandwidth = m;
            req.v = 1.0;
            const double ref = critical_radius_closed(req).radius;
            for (double v : {0.01, 1.0, 100.0}) {
                req.v = v;
                CHECK(critical_radius_closed(req).radius == Approx(ref).epsilon(1e-14));
            }
        }
    }
    SUBCASE("resolved single-interferometer bandwidth is within 3% of gamma tau = 1") {
        req.bandwidth = SingleInterferometer{};
        CHECK(std::abs(critical_radius_closed(req).radius / base - 1.0) < 0.03);
    }
}

TEST_CASE("solve on the approximation inverts the closed form") {
    for (double alpha : {kPi / 4.0, 0.3, 1.2}) {
        for (double n : {2.0, 4.0}) {
            auto req = silica(1e-15);
            req.alpha = alpha;
            req.n = n;
            req.bandwidth = FixedGammaTau{3.0};
            const double closed = critical_radius_closed(req).radius;
            req.method = RootFind{ApproxMethod{n}};
            const double solved = critical_radius_solve(req).radius;
            CHECK(solved == Approx(closed).epsilon(1e-9));
        }
    }
}

TEST_CASE("exact solve") {
    auto req = silica(1e-15);
    req.method = RootFind{};
    const auto exact = critical_radius_solve(req);
    const auto closed = critical_radius_closed(silica(1e-15));
    SUBCASE("agrees with the closed form within 25%") {
        const double dev = std::abs(exact.radius / closed.radius - 1.0);
        MESSAGE("exact vs closed-form R_c deviation at gamma tau = 1: " << dev);
        CHECK(dev < 0.25);
    }
    SUBCASE("dphi(R_c) = pi") {
        CHECK(phase_std_at_radius(exact.radius, req, {}, ExactMethod{}) == Approx(kPi).epsilon(1e-8));
    }
    SUBCASE("dphi scales as R^5") {
        const double d1 = phase_std_at_radius(1e-3, req, {}, ExactMethod{});
        const double d2 = phase_std_at_radius(2e-3, req, {}, ExactMethod{});
        CHECK(d2 / d1 == Approx(32.0).epsilon(1e-6));
    }
    SUBCASE("dispatch") {
        CHECK(critical_radius(req).radius == exact.radius);
        req.method = ClosedForm{};
        CHECK(critical_radius(req).radius == closed.radius);
    }
}

TEST_CASE("zero background has no critical radius") {
    auto req = silica(0.0);
    CHECK_THROWS_AS((void)critical_radius_closed(req), NoDecoherence);
    req.method = RootFind{};
    CHECK_THROWS_AS((void)critical_radius_solve(req), NoDecoherence);
}

TEST_CASE("bracket failure carries the scanned interval") {
    // Vanishingly small background pushes R_c above the 1 km scan ceiling.
    auto req = silica(1e-300);
    req.density = 1e-3;
    req.method = RootFind{ApproxMethod{2.0}};
    try {
        (void)critical_radius_solve(req);
        FAIL("expected BracketFailure");
    } catch (const BracketFailure& e) {
        CHECK(std::string(e.what()).find("1e+03") != std::string::npos);
    }
}

TEST_CASE("invalid requests") {
    auto req = silica(1e-15);
    req.density = 0.0;
    CHECK_THROWS_AS((void)critical_radius_closed(req), InvalidArgument);
    req = silica(1e-15);
    req.v = -1.0;
    CHECK_THROWS_AS((void)critical_radius_closed(req), InvalidArgument);
}

TEST_CASE("cross_correlation_multiplier") {
    CHECK(cross_correlation_multiplier(1.0, 2.0) == Approx(39.336355039309198).epsilon(1e-12));
    CHECK(cross_correlation_multiplier(1.0, 4.0) == Approx(1547.3488277785861).epsilon(1e-12));
    const PhysicalConstants k;
    CHECK(cross_correlation_multiplier(kPi * k.c / 10.0, 2.0) == Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS((void)cross_correlation_multiplier(0.0, 2.0), InvalidArgument);
}

TEST_CASE("cross-correlated critical radius depends on v only through gamma tau") {
    auto req = silica(1e-15);
    req.bandwidth = CrossCorrelated{0.1};
    for (double n : {2.0, 4.0}) {
        req.n = n;
        req.v = 1.0;
        const double r1 = critical_radius_closed(req).radius;
        req.v = 100.0;
        const double r100 = critical_radius_closed(req).radius;
        const double expected = cross_correlation_multiplier(1.0, n) / cross_correlation_multiplier(100.0, n);
        CHECK(std::abs((r1 / r100) / expected - 1.0) <= 0.02);

        // same gamma tau through a fixed model gives the same radius
        req.v = 1.0;
        const double gt = resolve_gamma_tau(req.bandwidth, req.v, req.alpha, {});
        auto fixed = req;
        fixed.bandwidth = FixedGammaTau{gt};
        CHECK(critical_radius_closed(fixed).radius == Approx(r1).epsilon(1e-14));
    }
}

TEST_CASE("validity warnings") {
    auto req = silica(1e-15);
    CHECK(validity_warnings(1e-3, req, {}).empty());
    CHECK(has(validity_warnings(0.1, req, {}), ValidityWarning::PointLikeLimit));

    req.bandwidth = CrossCorrelated{0.1};
    const auto rc = critical_radius_closed(req);
    CHECK(has(rc.warnings, ValidityWarning::PointLikeLimit));
    CHECK_FALSE(has(rc.warnings, ValidityWarning::BandwidthLimit));

    req.bandwidth = CrossCorrelated{0.5};
    CHECK(has(validity_warnings(1e-3, req, {}), ValidityWarning::BandwidthLimit));
    CHECK(to_string(ValidityWarning::BandwidthLimit) == "bandwidth_limit");
}
