#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "voodb/errors.hpp"
#include "voodb/runner/runner.hpp"
#include "voodb/workload/database.hpp"

namespace {

using namespace voodb;

runner::ExperimentConfig load(const std::string& path, const std::string& preset_name) {
    runner::ExperimentConfig base = preset_name.empty() ? runner::ExperimentConfig{} : runner::preset(preset_name);
    if (path.empty()) return base;
    return runner::load_config(path, base);
}

int cmd_run(const std::string& config_path, const std::string& preset_name, std::optional<std::uint64_t> seed,
            std::optional<std::uint32_t> replications, std::optional<double> adaptive, const std::string& out_path,
            const std::string& format_name, unsigned jobs, const std::string& clusters_path) {
    const auto format = runner::parse_format(format_name);
    const auto config = load(config_path, preset_name);

    runner::RunOptions options;
    options.seed = seed;
    options.replications = replications;
    options.adaptive = adaptive;
    options.jobs = jobs;
    const std::uint32_t reps = replications.value_or(config.setup.replications);
    if (!adaptive && reps < 2) {
        std::cerr << "warning: fewer than 2 replications, confidence intervals skipped\n";
    }

    const auto sections = runner::run_config(config, options);
    for (const auto& s : sections) {
        if (!s.adaptive) continue;
        std::cerr << (s.point.label().empty() ? "" : s.point.label() + ": ") << "pilot io_count "
                  << s.adaptive->pilot_mean << " +/- " << s.adaptive->pilot_half_width << ", target +/- "
                  << s.adaptive->target_half_width << ", " << s.adaptive->required
                  << " replications needed, " << s.adaptive->additional << " added\n";
    }

    if (out_path.empty()) {
        runner::write_sections(std::cout, sections, format);
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write '" + out_path + "'");
        runner::write_sections(out, sections, format);
    }

    if (!clusters_path.empty()) {
        std::ofstream out(clusters_path);
        if (!out) throw Error("cannot write '" + clusters_path + "'");
        const auto& reps_run = sections.front().report.replications;
        if (!reps_run.empty() && reps_run.front().clustering) {
            clustering::write_cluster_dump(out, reps_run.front().clustering->final_clusters);
        }
    }
    return 0;
}

int cmd_dump_db(const std::string& config_path, const std::string& preset_name, const std::string& out_path) {
    const auto config = load(config_path, preset_name);
    if (!config.sweeps.empty()) throw ConfigError("dump-db does not expand SWEEP directives");
    const auto db = workload::generate_database(config.setup.database, config.setup.seed);
    if (out_path.empty()) {
        workload::write_snapshot(std::cout, db);
    } else {
        std::ofstream out(out_path);
        if (!out) throw Error("cannot write '" + out_path + "'");
        workload::write_snapshot(out, db);
    }
    return 0;
}

int cmd_presets(const std::string& show) {
    if (!show.empty()) {
        std::cout << runner::serialize_config(runner::preset(show));
        return 0;
    }
    for (const auto& p : runner::presets()) std::cout << p.name << "\t" << p.description << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete-event simulator for object-oriented database performance"};
    app.require_subcommand(1);

    std::string config_path, preset_name, out_path, format_name = "csv", clusters_path, show;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint32_t> replications;
    std::optional<double> adaptive;
    unsigned jobs = 1;

    auto* run = app.add_subcommand("run", "run a replicated experiment and print its report");
    run->add_option("config", config_path, "configuration file (KEY = value lines)");
    run->add_option("--preset", preset_name, "start from a preset before applying the file")
        ->check(CLI::IsMember({"default", "o2", "texas", "texas-8mb"}, CLI::ignore_case));
    run->add_option("--seed", seed, "root seed (overrides SEED)");
    run->add_option("--replications", replications, "replication count (overrides REPLICATIONS)")
        ->check(CLI::PositiveNumber);
    run->add_option("--adaptive", adaptive,
                    "pilot study of 10 replications, topped up until the io_count half-width is H times its mean")
        ->check(CLI::PositiveNumber);
    run->add_option("--out", out_path, "write the report here instead of stdout");
    run->add_option("--format", format_name, "csv or text")->check(CLI::IsMember({"csv", "text"}));
    run->add_option("--jobs", jobs, "worker threads for independent replications")->check(CLI::PositiveNumber);
    run->add_option("--clusters", clusters_path, "write the first replication's final clusters here");

    auto* dump = app.add_subcommand("dump-db", "print the generated database snapshot");
    dump->add_option("config", config_path, "configuration file");
    dump->add_option("--preset", preset_name, "start from a preset before applying the file");
    dump->add_option("--out", out_path, "write the snapshot here instead of stdout");

    auto* list = app.add_subcommand("presets", "list the built-in presets");
    list->add_option("--show", show, "print every parameter of one preset");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            return cmd_run(config_path, preset_name, seed, replications, adaptive, out_path, format_name, jobs,
                           clusters_path);
        }
        if (dump->parsed()) return cmd_dump_db(config_path, preset_name, out_path);
        return cmd_presets(show);
    } catch (const ConfigError& e) {
        std::cerr << "voodb-sim: configuration error: " << e.what() << '\n';
        return 2;
    } catch (const DeadlockError& e) {
        std::cerr << "voodb-sim: deadlock: " << e.what() << '\n';
        return 3;
    } catch (const Error& e) {
        std::cerr << "voodb-sim: " << e.what() << '\n';
        return 1;
    }
}
