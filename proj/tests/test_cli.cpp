#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gwdecohere/cli/app.hpp"
#include "gwdecohere/cli/config.hpp"
#include "gwdecohere/cli/jobs.hpp"
#include "json.hpp"

using namespace gwd::cli;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

const std::string kData = GWD_TEST_DATA_DIR;

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
    auto dir = fs::temp_directory_path() / "gwd_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string write_config(const std::string& name, const std::string& body) {
    const auto path = scratch_dir() / name;
    std::ofstream(path) << body;
    return path.string();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::string cell;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') {
                quoted = !quoted;
            } else if (ch == ',' && !quoted) {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += ch;
            }
        }
        cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    FAIL("missing column " << name);
    return 0;
}

}  // namespace

TEST_CASE("config parsing") {
    SUBCASE("defaults") {
        const auto cfg = parse_config("{}");
        CHECK(cfg.density == 2329.0);
        CHECK(cfg.background.omega_gw == 1e-15);
        CHECK(cfg.format == OutputFormat::Csv);
        CHECK(cfg.interferometer().arm_half_separation == cfg.radius);
    }
    SUBCASE("sample files load") {
        CHECK_NOTHROW((void)load_config(kData + "/silica_variance.json"));
        const auto cfg = load_config(kData + "/silica_critical_radius.json");
        CHECK(std::holds_alternative<gwd::CrossCorrelated>(cfg.bandwidth));
        const auto sweep = load_config(kData + "/sweep_omega.json");
        REQUIRE(sweep.sweep.has_value());
        CHECK(sweep.sweep->points == 13);
    }
    SUBCASE("unknown keys are rejected") {
        CHECK_THROWS_AS((void)parse_config(R"({"density": 2329})"), ConfigError);
        CHECK_THROWS_AS((void)parse_config(R"({"bandwidth": {"model": "fixed", "gt": 1}})"), ConfigError);
    }
    SUBCASE("type and range errors") {
        CHECK_THROWS_AS((void)parse_config(R"({"density_kg_m3": "heavy"})"), ConfigError);
        CHECK_THROWS_AS((void)parse_config(R"({"density_kg_m3": -1})"), ConfigError);
        CHECK_THROWS_AS((void)parse_config(R"({"alpha_rad": 2.0})"), ConfigError);
        CHECK_THROWS_AS((void)parse_config(R"({"filter": "butterworth"})"), ConfigError);
        CHECK_THROWS_AS((void)parse_config("[1, 2]"), ConfigError);
        CHECK_THROWS_AS((void)parse_config("{not json"), ConfigError);
    }
    SUBCASE("sweep axes must name a known parameter and have two points") {
        CHECK_THROWS_AS(
            (void)parse_config(R"({"sweep": {"parameter": "mass", "min": 1, "max": 2, "points": 3}})"),
            ConfigError);
        CHECK_THROWS_AS(
            (void)parse_config(R"({"sweep": {"parameter": "omega_gw", "min": 1, "max": 2, "points": 1}})"),
            ConfigError);
        CHECK_NOTHROW(
            (void)parse_config(R"({"sweep": {"parameter": "v_m_s", "min": 1, "max": 2, "points": 2, "spacing": "linear"}})"));
    }
}

TEST_CASE("csv number format") {
    CHECK(format_double(1.0) == "1.0000000000000000e+00");
    CHECK(format_double(-2.5e-300) == "-2.5000000000000000e-300");
    Table t;
    t.name = "x";
    t.columns = {"a", "b", "warnings"};
    t.add_row({0.1, std::string("p,q"), Warnings{"w1", "w2"}});
    std::ostringstream os;
    write_csv(t, os);
    CHECK(os.str() == "a,b,warnings\n1.0000000000000001e-01,\"p,q\",w1;w2\n");
    CHECK(std::strtod("1.0000000000000001e-01", nullptr) == 0.1);
    CHECK_THROWS_AS(t.add_row({1.0}), std::logic_error);
}

TEST_CASE("exit codes") {
    SUBCASE("unknown job and missing config are configuration errors") {
        CHECK(run({"launch"}).code == kExitInvalidConfig);
        CHECK(run({"variance"}).code == kExitInvalidConfig);
        CHECK(run({"variance", "--config", write_config("bad.json", "{oops")}).code == kExitInvalidConfig);
        CHECK(run({"fig3", "--format", "xml"}).code == kExitInvalidConfig);
    }
    SUBCASE("numerical failures") {
        const auto zero_bw = write_config("zero_bw.json", R"({"bandwidth": {"model": "fixed", "gamma_tau": 0}})");
        const auto r = run({"variance", "--config", zero_bw});
        CHECK(r.code == kExitNumerical);
        CHECK(r.err.find("diverges") != std::string::npos);
        const auto quiet = write_config("quiet.json", R"({"omega_gw": 0, "method": "closed_form"})");
        CHECK(run({"critical-radius", "--config", quiet}).code == kExitNumerical);
    }
    SUBCASE("I/O failures") {
        CHECK(run({"variance", "--config", "/nonexistent/cfg.json"}).code == kExitIo);
        CHECK(run({"paper-table", "--out", "/nonexistent/dir/out.csv"}).code == kExitIo);
    }
    SUBCASE("help") {
        const auto r = run({"--help"});
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("--config") != std::string::npos);
    }
}

TEST_CASE("variance job") {
    const auto r = run({"variance", "--config", kData + "/silica_variance.json"});
    REQUIRE(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    const double dphi2 = std::stod(rows[1][column(rows[0], "delta_phi_sq")]);
    const double vis = std::stod(rows[1][column(rows[0], "visibility")]);
    CHECK(dphi2 > 0.0);
    CHECK(vis == Approx(std::exp(-0.5 * dphi2)).epsilon(1e-15));
    CHECK(rows[1][column(rows[0], "method")] == "exact");
}

TEST_CASE("paper-table job") {
    const auto r = run({"paper-table"});
    REQUIRE(r.code == kExitOk);
    const auto rows = parse_csv(r.out);
    const auto& h = rows[0];
    auto find_row = [&](const std::string& name) -> const std::vector<std::string>& {
        for (const auto& row : rows) {
            if (row[0] == name) return row;
        }
        FAIL("missing scenario " << name);
        return rows[0];
    };
    const auto& r1 = find_row("silica_single_omega1e-15");
    CHECK(std::stod(r1[column(h, "rc_closed_m")]) == Approx(3e-3).epsilon(0.25));
    CHECK(std::stod(r1[column(h, "mass_closed_kg")]) == Approx(3e-4).epsilon(0.4));
    const auto& r3 = find_row("silica_cross_n2_v1");
    CHECK(std::stod(r3[column(h, "rc_closed_m")]) == Approx(0.12).epsilon(0.25));
    CHECK(r3[column(h, "warnings")].find("point_like_limit") != std::string::npos);
    const auto& r4 = find_row("silica_cross_n4_v1");
    CHECK(std::stod(r4[column(h, "rc_closed_m")]) == Approx(4.7).epsilon(0.25));
    const auto& implied = find_row("neutron_star_implied_density");
    CHECK(std::stod(implied[column(h, "rc_closed_m")]) == Approx(1e-5).epsilon(1e-9));
}

TEST_CASE("json and csv carry identical numbers") {
    const auto csv = run({"paper-table", "--format", "csv"});
    const auto js = run({"paper-table", "--format", "json"});
    REQUIRE(csv.code == 0);
    REQUIRE(js.code == 0);
    const auto rows = parse_csv(csv.out);
    const auto doc = nlohmann::json::parse(js.out);
    REQUIRE(doc["rows"].size() + 1 == rows.size());
    std::size_t compared = 0;
    for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
        for (std::size_t c = 0; c < rows[0].size(); ++c) {
            const auto& value = doc["rows"][i][rows[0][c]];
            if (!value.is_number_float()) continue;
            CHECK(std::strtod(rows[i + 1][c].c_str(), nullptr) == value.get<double>());
            ++compared;
        }
    }
    CHECK(compared > 50);
    CHECK(doc["rows"][3]["warnings"].is_array());
}

TEST_CASE("oracle job is determined by config and seed") {
    const auto cfg = kData + "/oracle_small.json";
    const auto a = run({"oracle", "--config", cfg});
    const auto b = run({"oracle", "--config", cfg});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto c = run({"oracle", "--config", cfg, "--seed", "7"});
    CHECK(c.out != a.out);

    const auto rows = parse_csv(a.out);
    const auto& h = rows[0];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i][0] == "transfer_function") {
            CHECK(std::abs(std::stod(rows[i][column(h, "rel_deviation")])) < 1e-6);
        } else if (rows[i][0] == "monte_carlo_variance") {
            const double value = std::stod(rows[i][column(h, "value")]);
            const double ref = std::stod(rows[i][column(h, "reference")]);
            const double se = std::stod(rows[i][column(h, "std_error")]);
            CHECK(std::abs(value - ref) <= 3.0 * se);
        }
    }
}

TEST_CASE("fig3 job") {
    const auto r = run({"fig3"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 62);
    CHECK(std::stod(rows[1][0]) == 1e-2);
    CHECK(std::stod(rows[61][0]) == 1e3);
    CHECK(std::stod(rows[1][1]) > std::stod(rows[1][3]));

    const auto with_zero = write_config("fig3_zero.json", R"({"fig3": {"gamma_tau_values": [0, 1, 10]}})");
    const auto z = run({"fig3", "--config", with_zero});
    REQUIRE(z.code == 0);
    CHECK(parse_csv(z.out).size() == 3);
    CHECK(z.err.find("skips gamma_tau") != std::string::npos);
    CHECK(z.err.find("1.7320508075688772e+00") != std::string::npos);
}

TEST_CASE("sweep job writes rows in grid order with warnings") {
    const auto r = run({"sweep", "--config", kData + "/sweep_omega.json"});
    REQUIRE(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 14);
    CHECK(rows[0][0] == "omega_gw");
    double prev_omega = 0.0;
    double prev_radius = 1e300;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double omega = std::stod(rows[i][0]);
        const double radius = std::stod(rows[i][1]);
        CHECK(omega > prev_omega);
        CHECK(radius < prev_radius);
        prev_omega = omega;
        prev_radius = radius;
    }
    CHECK(std::stod(rows[1][0]) == 1e-20);

    const auto variance_sweep = write_config(
        "sweep_r.json",
        R"({"sweep": {"parameter": "radius_m", "min": 1e-3, "max": 0.2, "points": 4, "quantity": "variance"}})");
    const auto v = run({"sweep", "--config", variance_sweep, "--format", "json"});
    REQUIRE(v.code == 0);
    const auto doc = nlohmann::json::parse(v.out);
    CHECK(doc["rows"][0]["warnings"].empty());
    CHECK(doc["rows"][3]["warnings"][0] == "point_like_limit");
    CHECK(v.err.find("validity") != std::string::npos);
}

TEST_CASE("installed binary round trip") {
    const auto out = scratch_dir() / "cr.json";
    const std::string cmd = std::string(GWD_CLI_BINARY) + " critical-radius --config " + kData +
                            "/silica_critical_radius.json --format json --out " + out.string() + " 2>/dev/null";
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in(out);
    const auto doc = nlohmann::json::parse(in);
    CHECK(doc["job"] == "critical-radius");
    CHECK(doc["rows"][0]["radius_m"].get<double>() == Approx(0.12).epsilon(0.25));
}
