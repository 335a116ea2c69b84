#include "swarmform/cli_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "swarmform/error.hpp"
#include "swarmform/formal_checker.hpp"

namespace swarmform {

namespace {

std::string fixed(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string snapshot_name(std::int64_t tick) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "snapshot_%06lld.pgm", static_cast<long long>(tick));
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c == '\n' ? ' ' : c;
    }
    return out + "\"";
}

}  // namespace

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

std::string metrics_csv(std::span<const TickMetrics> series) {
    std::string out = kMetricsHeader;
    out += '\n';
    for (const TickMetrics& m : series) {
        out += std::to_string(m.tick) + ',' + std::to_string(m.stationary_count) + ',' +
               std::to_string(m.localized_count) + ',' + std::to_string(m.inside_count) + ',' +
               std::to_string(m.empty_target_cells) + '\n';
    }
    return out;
}

void write_metrics_csv(std::span<const TickMetrics> series, const std::filesystem::path& path) {
    write_file(path, metrics_csv(series));
}

std::string render_pgm(const SimState& state) {
    const WorldGrid& world = state.world;
    const int h = world.half_extent();
    std::string out = "P2\n" + std::to_string(world.side()) + ' ' + std::to_string(world.side()) +
                      "\n255\n";
    for (int y = h; y >= -h; --y) {
        for (int x = -h; x <= h; ++x) {
            const Cell& cell = world.at({x, y});
            int v = cell.is_target ? pixel::target : pixel::empty;
            if (cell.is_wall) v = pixel::wall;
            if (cell.occupant) {
                const Robot& r = state.robots[static_cast<std::size_t>(*cell.occupant)];
                if (r.is_seed()) {
                    v = pixel::seed;
                } else if (r.localize) {
                    v = pixel::localized;
                } else if (r.detached) {
                    v = pixel::detached;
                } else {
                    v = pixel::mover;
                }
            }
            if (x > -h) out += ' ';
            out += std::to_string(v);
        }
        out += '\n';
    }
    return out;
}

void render_snapshot(const SimState& state, const std::filesystem::path& path) {
    write_file(path, render_pgm(state));
}

std::string runs_csv(const ExperimentReport& report) {
    std::string out = kRunsHeader;
    out += '\n';
    for (const RunRow& r : report.rows) {
        out += report.shape + ',' + std::to_string(r.group_size) + ',' +
               std::to_string(r.repetition) + ',' + std::to_string(r.seed) + ',' +
               (r.reason ? std::string(to_string(*r.reason)) : std::string("failed")) + ',' +
               std::to_string(r.ticks) + ',' + std::to_string(r.localized) + ',' +
               std::to_string(r.unlocalized) + ',' + std::to_string(r.detached) + ',' +
               std::to_string(r.empty_cells) + ',' + std::to_string(r.violations) + ',' +
               csv_field(r.error) + '\n';
    }
    return out;
}

std::string aggregate_csv(const ExperimentReport& report) {
    std::string out = kAggregateHeader;
    out += '\n';
    for (const GroupSummary& g : report.groups) {
        out += report.shape + ',' + std::to_string(g.group_size) + ',' + fixed(g.mean_ticks) +
               ',' + fixed(g.ci95_low) + ',' + fixed(g.ci95_high) + ',' +
               fixed(g.mean_localized) + ',' + fixed(g.mean_unlocalized) + ',' +
               fixed(g.mean_empty_cells) + '\n';
    }
    return out;
}

void write_experiment_csv(const ExperimentReport& report, const std::filesystem::path& dir) {
    write_file(dir / "runs.csv", runs_csv(report));
    write_file(dir / "aggregate.csv", aggregate_csv(report));
}

CliCommand parse_cli(int argc, const char* const* argv) {
    CliCommand cmd;
    CLI::App app{"Self-organized shape formation simulator for robot swarms", "swarm_sim"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--shape", cmd.shape, "Built-in shape name or path to a .mask file");
        sub->add_option("--vision-radius", cmd.vision_radius, "Sensing range in cells")
            ->check(CLI::Range(1, 3));
        sub->add_option("--seed", cmd.seed, "RNG seed");
        sub->add_option("--max-ticks", cmd.max_ticks, "Tick budget per run")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", cmd.out, "Output directory");
        sub->add_flag("--check", cmd.check, "Run the abstract-model monitor every tick");
        sub->add_option("--world-half-extent", cmd.world_half_extent,
                        "World spans -n..n on both axes")
            ->check(CLI::Range(2, 1000));
    };

    auto* run = app.add_subcommand("run", "Run one simulation");
    add_common(run);
    run->add_option("--robots", cmd.robots, "Swarm size (default: the shape's cell count)")
        ->check(CLI::Range(5, 1 << 24));
    run->add_option("--snapshot-every", cmd.snapshot_every, "Write a PGM every n ticks")
        ->check(CLI::NonNegativeNumber);

    auto* experiment = app.add_subcommand("experiment", "Repeated runs over group sizes");
    add_common(experiment);
    experiment->set_config("--config", "", "INI/TOML file with experiment options");
    experiment->add_option("--group-sizes", cmd.group_sizes, "Comma-separated swarm sizes")
        ->delimiter(',')
        ->check(CLI::Range(5, 1 << 24));
    experiment->add_option("--reps", cmd.reps, "Repetitions per group size")
        ->check(CLI::PositiveNumber);
    experiment->add_option("--threads", cmd.threads, "Worker threads (0 = all cores)");

    auto* shapes = app.add_subcommand("shapes", "List built-in shapes or validate mask files");
    shapes->add_option("--validate", cmd.validate, "Mask file(s) to validate");

    auto* check = app.add_subcommand("check", "Exhaustively explore the abstract shape model");
    check->add_option("--max-dimension", cmd.max_dimension, "Largest shape dimension")
        ->check(CLI::Range(1, 6));
    check->add_option("--max-robots", cmd.max_robots, "Largest swarm size")
        ->check(CLI::Range(0, 8));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        cmd.kind = CliCommand::Kind::help;
        auto subs = app.get_subcommands();
        cmd.help = subs.empty() ? app.help() : subs.front()->help();
        return cmd;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    if (run->parsed()) {
        cmd.kind = CliCommand::Kind::run;
    } else if (experiment->parsed()) {
        cmd.kind = CliCommand::Kind::experiment;
    } else if (shapes->parsed()) {
        cmd.kind = CliCommand::Kind::shapes;
    } else {
        cmd.kind = CliCommand::Kind::check;
    }
    if (cmd.kind == CliCommand::Kind::run || cmd.kind == CliCommand::Kind::experiment) {
        if (!parse_shape_id(cmd.shape) && std::filesystem::path(cmd.shape).extension() != ".mask") {
            throw ConfigError("unknown shape '" + cmd.shape + "'");
        }
    }
    return cmd;
}

namespace {

int do_run(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    const ShapeMask mask = resolve_shape(cmd.shape);
    SimConfig config;
    config.num_robots = cmd.robots.value_or(static_cast<int>(target_cell_count(mask)));
    config.vision_radius = cmd.vision_radius;
    config.shape = cmd.shape;
    config.rng_seed = cmd.seed;
    config.max_ticks = cmd.max_ticks;
    config.world_half_extent = cmd.world_half_extent;
    config.check = cmd.check;
    config.validate();

    TickObserver observer;
    if (cmd.snapshot_every > 0) {
        render_snapshot(setup(config, mask), cmd.out / snapshot_name(0));
        observer = [&](const SimState& state, const TickMetrics&) {
            if (state.tick % cmd.snapshot_every == 0) {
                render_snapshot(state, cmd.out / snapshot_name(state.tick));
            }
        };
    }
    const RunRecord record = run_to_completion(config, mask, observer);
    write_metrics_csv(record.metrics, cmd.out / "metrics.csv");
    render_snapshot(record.final_state, cmd.out / "final.pgm");

    const Completeness c = completeness_summary(record);
    out << "shape=" << mask.name() << " robots=" << config.num_robots << " seed=" << cmd.seed
        << " termination=" << to_string(record.reason) << " ticks=" << record.final_state.tick
        << " localized=" << c.localized << " unlocalized=" << c.unlocalized
        << " detached=" << c.detached << " empty_cells=" << c.empty_cells << '\n';
    if (!record.violations.empty()) {
        for (const auto& v : record.violations) err << v << '\n';
        return exit_code::violation;
    }
    return exit_code::ok;
}

int do_experiment(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    ExperimentSpec spec;
    spec.shape = cmd.shape;
    spec.group_sizes = cmd.group_sizes;
    if (spec.group_sizes.empty()) {
        spec.group_sizes.push_back(static_cast<int>(target_cell_count(resolve_shape(cmd.shape))));
    }
    spec.repetitions = cmd.reps;
    spec.vision_radius = cmd.vision_radius;
    spec.base_rng_seed = cmd.seed;
    spec.max_ticks = cmd.max_ticks;
    spec.world_half_extent = cmd.world_half_extent;
    spec.check = cmd.check;
    spec.threads = cmd.threads;
    const ExperimentReport report = run_experiment(spec);
    write_experiment_csv(report, cmd.out);
    out << aggregate_csv(report);

    int status = exit_code::ok;
    for (const RunRow& r : report.rows) {
        if (r.failed()) {
            err << "group " << r.group_size << " rep " << r.repetition << ": " << r.error << '\n';
        }
        if (r.violations > 0) status = exit_code::violation;
    }
    return status;
}

int do_shapes(const CliCommand& cmd, std::ostream& out) {
    if (cmd.validate.empty()) {
        for (ShapeId id : kAllShapes) {
            const ShapeMask mask = load_builtin(id);
            out << to_string(id) << ' ' << target_cell_count(mask) << '\n';
        }
        return exit_code::ok;
    }
    int status = exit_code::ok;
    for (const auto& path : cmd.validate) {
        try {
            const ShapeMask mask = load_mask_file(path);
            out << path.string() << ": ok, " << target_cell_count(mask) << " cells\n";
        } catch (const MaskParseError& e) {
            out << e.what() << '\n';
            status = exit_code::usage;
        }
    }
    return status;
}

int do_check(const CliCommand& cmd, std::ostream& out) {
    bool ok = true;
    for (int dim = 1; dim <= cmd.max_dimension; ++dim) {
        for (int robots = 0; robots <= cmd.max_robots; ++robots) {
            const auto rep = formal::explore(static_cast<std::size_t>(dim),
                                             static_cast<std::size_t>(robots));
            out << formal::format_report(rep) << '\n';
            ok = ok && rep.ok();
        }
    }
    return ok ? exit_code::ok : exit_code::violation;
}

}  // namespace

int run_cli(const CliCommand& cmd, std::ostream& out, std::ostream& err) {
    switch (cmd.kind) {
        case CliCommand::Kind::help: out << cmd.help; return exit_code::ok;
        case CliCommand::Kind::run: return do_run(cmd, out, err);
        case CliCommand::Kind::experiment: return do_experiment(cmd, out, err);
        case CliCommand::Kind::shapes: return do_shapes(cmd, out);
        case CliCommand::Kind::check: return do_check(cmd, out);
    }
    return exit_code::usage;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    try {
        return run_cli(parse_cli(argc, argv), out, err);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::io;
    } catch (const InvariantViolation& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::violation;
    } catch (const SchemaViolation& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::violation;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::usage;
    }
}

}  // namespace swarmform
