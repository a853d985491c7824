#include "pittlab/cli/app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "pittlab/cli/commands.hpp"
#include "pittlab/cli/output.hpp"
#include "pittlab/parallel.hpp"

namespace pittlab::cli {

namespace {

/// Flags shared by every subcommand; each is optional and overrides the config file.
struct CommonFlags {
    std::string config;
    std::optional<std::string> seed, out, format, jobs, timestamp, schedule, u_max, panels, grid_m;
};

struct GridCommand {
    const Command* command = nullptr;
    CLI::App* app = nullptr;
    CommonFlags flags;
    std::map<std::string, std::optional<std::string>> params;
};

void add_common(CLI::App* sub, CommonFlags& f) {
    sub->add_option("--config", f.config, "config file (key = value lines, [params] and [quadrature] sections)");
    sub->add_option("--seed", f.seed, "random seed (unsigned 64-bit); required by Monte Carlo commands");
    sub->add_option("--out", f.out, "append records to this file instead of stdout");
    sub->add_option("--format", f.format, "csv|jsonl|plotdata (default jsonl)");
    sub->add_option("--jobs", f.jobs, "worker threads (results do not depend on it)");
    sub->add_option("--timestamp", f.timestamp, "timestamp recorded in each record (default: $SOURCE_DATE_EPOCH)");
}

ExperimentConfig merged_config(const GridCommand& gc) {
    const auto& schema = gc.command->params;
    ExperimentConfig cfg = gc.flags.config.empty() ? ExperimentConfig{} : load_config(gc.flags.config, schema);
    if (!cfg.command.empty() && cfg.command != gc.command->name)
        throw ConfigError("config is for '" + cfg.command + "', not '" + gc.command->name + "'");
    cfg.command = gc.command->name;
    const auto& f = gc.flags;
    if (f.seed) cfg.seed = parse_u64(*f.seed, "seed");
    if (f.out) cfg.out = *f.out;
    if (f.format) cfg.format = *f.format;
    if (f.jobs) cfg.jobs = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_u64(*f.jobs, "jobs")));
    if (f.timestamp) cfg.timestamp = *f.timestamp;
    if (f.schedule) {
        cfg.schedule.clear();
        for (const auto& v : expand_values(*f.schedule, "schedule")) cfg.schedule.push_back(parse_real(v, "schedule"));
    }
    if (f.u_max) cfg.quad.u_max = parse_real(*f.u_max, "u_max");
    if (f.panels) cfg.quad.panels = static_cast<int>(parse_u64(*f.panels, "panels"));
    if (f.grid_m) cfg.quad.grid_m = static_cast<int>(parse_u64(*f.grid_m, "grid_m"));
    for (const auto& [name, value] : gc.params)
        if (value) cfg.grid[name] = expand_values(*value, name);
    if (!cfg.timestamp)
        if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) cfg.timestamp = epoch;
    return cfg;
}

/// True when the target file is missing or empty, so a csv header is due.
bool fresh_file(const std::string& path) {
    std::error_code ec;
    return !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
}

void emit(const std::vector<json>& records, const std::optional<std::string>& path, OutputFormat format,
          std::ostream& out) {
    if (!path) {
        write_records(out, records, format, true);
        return;
    }
    const bool header = fresh_file(*path);
    std::ofstream file(*path, std::ios::app);
    if (!file) throw ConfigError("cannot open '" + *path + "' for appending");
    write_records(file, records, format, header);
}

void run_grid(const GridCommand& gc, std::ostream& out) {
    const ExperimentConfig cfg = merged_config(gc);
    const OutputFormat format = parse_format(cfg.format);
    const auto points = expand_grid(cfg, gc.command->params);
    for (const auto& p : points)
        if (gc.command->needs_seed(p) && !cfg.seed)
            throw ConfigError("'" + gc.command->name + "' draws random numbers and needs --seed");

    RunContext ctx{cfg.seed, cfg.quad, cfg.schedule, points.size() == 1 ? cfg.jobs : 1u};
    std::vector<json> records(points.size());
    parallel_for(points.size(), cfg.jobs, [&](std::size_t i) {
        records[i] = make_record(gc.command->name, points[i], gc.command->evaluate(points[i], ctx), cfg.seed,
                                 cfg.timestamp);
    });
    emit(records, cfg.out, format, out);
}

void run_report(const std::string& input, const std::string& format, const std::optional<std::string>& path,
                std::ostream& out) {
    std::ifstream in(input);
    if (!in) throw ConfigError("cannot read '" + input + "'");
    emit(read_jsonl(in, input), path, parse_format(format), out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"pittlab: numerical checks of weighted Fourier inequalities for vector-valued functions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", PITTLAB_VERSION);

    std::vector<GridCommand> grid(commands().size());
    for (std::size_t i = 0; i < commands().size(); ++i) {
        auto& gc = grid[i];
        gc.command = &commands()[i];
        gc.app = app.add_subcommand(gc.command->name, gc.command->theorem);
        add_common(gc.app, gc.flags);
        gc.app->add_option("--schedule", gc.flags.schedule, "truncation schedule (list or lo:hi:count)");
        gc.app->add_option("--u_max", gc.flags.u_max, "quadrature: panel range in u = -log t");
        gc.app->add_option("--panels", gc.flags.panels, "quadrature: panels per unit in u");
        gc.app->add_option("--grid_m", gc.flags.grid_m, "quadrature: torus samples per axis (0 = automatic)");
        for (const auto& p : gc.command->params) {
            std::string help = p.help;
            if (!p.fallback.empty()) help += " [" + p.fallback + "]";
            gc.app->add_option("--" + p.name, gc.params[p.name], help + "; list or lo:hi:count");
        }
    }
    std::string report_input, report_format = "jsonl";
    std::optional<std::string> report_out;
    auto* report = app.add_subcommand("report", "Converts a jsonl results file of a single command to csv, jsonl or plotdata");
    report->add_option("--input", report_input, "jsonl results file")->required();
    report->add_option("--format", report_format, "csv|jsonl|plotdata");
    report->add_option("--out", report_out, "append to this file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (report->parsed()) {
            run_report(report_input, report_format, report_out, out);
        } else {
            for (const auto& gc : grid)
                if (gc.app->parsed()) run_grid(gc, out);
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << '\n';
        return exit_domain;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_ok;
}

}  // namespace pittlab::cli
