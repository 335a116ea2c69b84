#include "swarmform/experiment_runner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <thread>

#include <boost/math/distributions/students_t.hpp>

#include "swarmform/error.hpp"

namespace swarmform {

void ExperimentSpec::validate() const {
    if (group_sizes.empty()) throw ConfigError("experiment needs at least one group size");
    if (repetitions < 1) throw ConfigError("repetitions must be at least 1");
    std::set<int> distinct(group_sizes.begin(), group_sizes.end());
    if (distinct.size() != group_sizes.size()) throw ConfigError("group sizes must be distinct");
    for (int n : group_sizes) {
        if (n < kSeedCount + 1) {
            throw ConfigError("group size must be at least 5, got " + std::to_string(n));
        }
    }
    if (vision_radius < 1 || vision_radius > 3) {
        throw ConfigError("vision radius must be 1, 2 or 3, got " + std::to_string(vision_radius));
    }
    if (max_ticks < 1) throw ConfigError("max_ticks must be positive");
}

Interval mean_ci95(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw ConfigError("a confidence interval needs at least 2 samples, got " +
                          std::to_string(samples.size()));
    }
    const auto n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : samples) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(boost::math::complement(dist, 0.025));
    const double half = t * sd / std::sqrt(n);
    return {mean, mean - half, mean + half};
}

Completeness completeness_summary(const SimState& state) {
    Completeness c;
    for (const Robot& r : state.robots) {
        if (r.localize) {
            ++c.localized;
        } else if (r.detached) {
            ++c.detached;
        } else {
            ++c.unlocalized;
        }
    }
    c.empty_cells = static_cast<int>(state.world.target_count()) - c.localized;
    return c;
}

std::uint64_t run_seed(std::uint64_t base, int group_size, int repetition) {
    return mix_seed(base, static_cast<std::uint64_t>(group_size),
                    static_cast<std::uint64_t>(repetition));
}

ExperimentReport run_experiment(const ExperimentSpec& spec, const RowCallback& on_row) {
    spec.validate();
    const ShapeMask mask = resolve_shape(spec.shape);

    std::vector<int> sizes = spec.group_sizes;
    std::sort(sizes.begin(), sizes.end());
    ExperimentReport report;
    report.shape = mask.name();
    for (int n : sizes) {
        for (int rep = 0; rep < spec.repetitions; ++rep) {
            RunRow row;
            row.group_size = n;
            row.repetition = rep;
            row.seed = run_seed(spec.base_rng_seed, n, rep);
            report.rows.push_back(row);
        }
    }

    std::atomic<std::size_t> next{0};
    std::mutex callback_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < report.rows.size(); i = next++) {
            RunRow& row = report.rows[i];
            SimConfig config;
            config.num_robots = row.group_size;
            config.vision_radius = spec.vision_radius;
            config.shape = spec.shape;
            config.rng_seed = row.seed;
            config.max_ticks = spec.max_ticks;
            config.world_half_extent = spec.world_half_extent;
            config.check = spec.check;
            const auto start = std::chrono::steady_clock::now();
            try {
                const RunRecord record = run_to_completion(config, mask);
                const Completeness c = completeness_summary(record);
                row.reason = record.reason;
                row.ticks = record.final_state.tick;
                row.localized = c.localized;
                row.unlocalized = c.unlocalized;
                row.detached = c.detached;
                row.empty_cells = c.empty_cells;
                row.violations = record.violations.size();
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            row.wall_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            if (on_row) {
                std::lock_guard lock(callback_mutex);
                on_row(row);
            }
        }
    };
    unsigned threads = spec.threads ? spec.threads : std::thread::hardware_concurrency();
    threads = std::clamp(threads, 1u, static_cast<unsigned>(report.rows.size()));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    }

    for (int n : sizes) {
        GroupSummary g;
        g.group_size = n;
        std::vector<double> ticks;
        double localized = 0, unlocalized = 0, empty = 0;
        for (const RunRow& row : report.rows) {
            if (row.group_size != n) continue;
            ++g.runs;
            if (row.failed()) {
                ++g.failed;
                continue;
            }
            ticks.push_back(static_cast<double>(row.ticks));
            localized += row.localized;
            unlocalized += row.unlocalized;
            empty += row.empty_cells;
        }
        const double ok = static_cast<double>(ticks.size());
        constexpr double nan = std::numeric_limits<double>::quiet_NaN();
        if (ticks.size() >= 2) {
            const Interval ci = mean_ci95(ticks);
            g.mean_ticks = ci.mean;
            g.ci95_low = ci.low;
            g.ci95_high = ci.high;
        } else {
            g.mean_ticks = ticks.empty() ? nan : ticks.front();
            g.ci95_low = g.ci95_high = nan;
        }
        g.mean_localized = ok > 0 ? localized / ok : nan;
        g.mean_unlocalized = ok > 0 ? unlocalized / ok : nan;
        g.mean_empty_cells = ok > 0 ? empty / ok : nan;
        report.groups.push_back(g);
    }
    return report;
}

}  // namespace swarmform
