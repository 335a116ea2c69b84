#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmform/experiment_runner.hpp"
#include "swarmform/formation_engine.hpp"

namespace swarmform {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int usage = 2;
inline constexpr int violation = 3;
inline constexpr int io = 4;
}  // namespace exit_code

inline constexpr const char* kMetricsHeader = "tick,stationary,localized,inside,empty_target_cells";
inline constexpr const char* kRunsHeader =
    "shape,group_size,repetition,seed,termination,ticks,localized,unlocalized,detached,"
    "empty_cells,violations,error";
inline constexpr const char* kAggregateHeader =
    "shape,group_size,mean_ticks,ci95_low,ci95_high,mean_localized,mean_unlocalized,"
    "mean_empty_cells";

/// Grey levels used by render_pgm.
namespace pixel {
inline constexpr int wall = 0;
inline constexpr int seed = 30;
inline constexpr int localized = 60;
inline constexpr int detached = 90;
inline constexpr int mover = 120;
inline constexpr int target = 200;
inline constexpr int empty = 255;
}  // namespace pixel

std::string metrics_csv(std::span<const TickMetrics> series);
void write_metrics_csv(std::span<const TickMetrics> series, const std::filesystem::path& path);

/// Plain P2 graymap, one pixel per cell, top row = largest y.
std::string render_pgm(const SimState& state);
void render_snapshot(const SimState& state, const std::filesystem::path& path);

std::string runs_csv(const ExperimentReport& report);
std::string aggregate_csv(const ExperimentReport& report);
/// Writes runs.csv and aggregate.csv into `dir`.
void write_experiment_csv(const ExperimentReport& report, const std::filesystem::path& dir);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_file(const std::filesystem::path& path, const std::string& content);

struct CliCommand {
    enum class Kind { run, experiment, shapes, check, help };
    Kind kind = Kind::help;

    std::string shape = "star";
    std::optional<int> robots;
    int vision_radius = 3;
    std::uint64_t seed = 42;
    std::int64_t max_ticks = 100000;
    std::filesystem::path out = ".";
    std::int64_t snapshot_every = 0;
    bool check = false;
    int world_half_extent = 32;

    std::vector<int> group_sizes;
    int reps = 10;
    unsigned threads = 0;

    std::vector<std::filesystem::path> validate;

    int max_dimension = 6;
    int max_robots = 8;

    /// Help text when kind == help.
    std::string help;
};

/// Throws ConfigError with a usage message on invalid input.
CliCommand parse_cli(int argc, const char* const* argv);

/// Executes a parsed command; returns the process exit status.
int run_cli(const CliCommand& command, std::ostream& out, std::ostream& err);

/// parse_cli + run_cli with error-to-exit-status mapping.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swarmform
