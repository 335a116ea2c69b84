#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmform/formation_engine.hpp"

namespace swarmform {

struct ExperimentSpec {
    /// Built-in shape name or path to a .mask file.
    std::string shape = "star";
    std::vector<int> group_sizes;
    int repetitions = 10;
    int vision_radius = 3;
    std::uint64_t base_rng_seed = 0;
    std::int64_t max_ticks = 100000;
    int world_half_extent = 32;
    bool check = false;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;

    void validate() const;
};

struct RunRow {
    int group_size = 0;
    int repetition = 0;
    std::uint64_t seed = 0;
    std::optional<TerminationReason> reason;
    std::int64_t ticks = 0;
    int localized = 0;
    int unlocalized = 0;
    int detached = 0;
    int empty_cells = 0;
    std::size_t violations = 0;
    double wall_seconds = 0.0;
    /// Non-empty when the run raised instead of terminating.
    std::string error;

    bool failed() const { return !error.empty(); }
};

struct GroupSummary {
    int group_size = 0;
    std::size_t runs = 0;
    std::size_t failed = 0;
    double mean_ticks = 0.0;
    /// NaN when fewer than two runs succeeded.
    double ci95_low = 0.0;
    double ci95_high = 0.0;
    double mean_localized = 0.0;
    double mean_unlocalized = 0.0;
    double mean_empty_cells = 0.0;
};

struct ExperimentReport {
    std::string shape;
    std::vector<RunRow> rows;
    std::vector<GroupSummary> groups;
};

struct Interval {
    double mean = 0.0;
    double low = 0.0;
    double high = 0.0;
};

/// Two-sided 95% Student-t interval: mean +/- t(0.975, n-1) * sd / sqrt(n).
/// Throws ConfigError for fewer than 2 samples.
Interval mean_ci95(std::span<const double> samples);

struct Completeness {
    int localized = 0;
    int unlocalized = 0;
    int detached = 0;
    int empty_cells = 0;
};

Completeness completeness_summary(const SimState& state);
inline Completeness completeness_summary(const RunRecord& record) {
    return completeness_summary(record.final_state);
}

/// Per-run seed; depends only on its own coordinates so adding group sizes
/// leaves the other rows untouched.
std::uint64_t run_seed(std::uint64_t base, int group_size, int repetition);

/// Called from the worker that finished `row` (rows may complete out of order).
using RowCallback = std::function<void(const RunRow& row)>;

/// Runs repetitions x group_sizes simulations. Rows are ordered by
/// (group size, repetition); a failing run is recorded and does not abort the
/// sweep.
ExperimentReport run_experiment(const ExperimentSpec& spec, const RowCallback& on_row = {});

}  // namespace swarmform
