#include "gwdecohere/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "gwdecohere/cli/config.hpp"
#include "gwdecohere/cli/jobs.hpp"
#include "gwdecohere/errors.hpp"

namespace gwd::cli {

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Matter-wave dephasing by a scale-invariant gravitational-wave background",
                 "gw-decohere"};
    std::string job_arg;
    std::string config_path;
    std::string out_path;
    std::string format_arg;
    std::uint64_t seed = 0;

    app.add_option("job", job_arg,
                   "variance | critical-radius | fig3 | paper-table | oracle | sweep")
        ->required();
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--format", format_arg, "Output format")->check(CLI::IsMember({"csv", "json"}));
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed for the oracle job");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    try {
        const auto job = parse_job(job_arg);
        if (!job) throw ConfigError("unknown job '" + job_arg + "'");

        RunConfig cfg;
        if (!config_path.empty()) {
            cfg = load_config(config_path);
        } else if (*job != Job::Fig3 && *job != Job::PaperTable) {
            throw ConfigError(std::string(job_name(*job)) + " requires --config <file.json>");
        }
        if (*seed_opt) cfg.seed = seed;
        if (!format_arg.empty()) cfg.format = format_arg == "json" ? OutputFormat::Json : OutputFormat::Csv;

        const auto table = run_job(*job, cfg, err);
        std::ostringstream buffer;
        write_table(table, cfg.format, buffer);

        if (out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
            if (!file) throw IoError("cannot open output file '" + out_path + "'");
            file << buffer.str();
            file.flush();
            if (!file) throw IoError("failed writing output file '" + out_path + "'");
        }
        const bool flagged = std::any_of(table.rows.begin(), table.rows.end(), [](const auto& row) {
            return std::any_of(row.begin(), row.end(), [](const Cell& c) {
                const auto* w = std::get_if<Warnings>(&c);
                return w && !w->empty();
            });
        });
        if (flagged) err << "warning: some rows fall outside validity bounds (see warnings column)\n";
        return kExitOk;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}

}  // namespace gwd::cli
