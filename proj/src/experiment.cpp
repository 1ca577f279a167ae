#include "resim/experiment.hpp"

#include <cmath>
#include <limits>

#include "resim/mc.hpp"
#include "resim/smc.hpp"

namespace resim {

ResultRecord run_point(const ExperimentConfig& config, double sweep_value, int sweep_index,
                       int replication) {
    ExperimentConfig point = config;
    if (config.sweep) point = at_sweep_value(config, config.sweep->field, sweep_value);

    const int policy_count = point.policy ? point.policy->policy_count : 1;
    const QueueModel model(point.params, policy_count);
    const LevelSchedule levels = LevelSchedule::make(point.levels);
    const std::uint64_t run_seed =
        derive_seed(point.seed, {stream_label::kPoint, static_cast<std::uint64_t>(sweep_index),
                                 static_cast<std::uint64_t>(replication)});

    ResultRecord rec;
    rec.sweep_value = sweep_value;
    rec.method = point.method;
    rec.seed = run_seed;
    rec.replication = replication;

    if (point.method == "mc") {
        const McEstimate est = run_mc(model, point.params.grid, point.budget.total_budget,
                                      levels.failure_threshold(), run_seed);
        rec.p_hat = est.p_hat;
        const auto ci = est.confidence();
        rec.ci_low = ci.low;
        rec.ci_high = ci.high;
        rec.total_cost = est.total_cost;
        return rec;
    }

    SmcEstimate<QueueModel> est;
    if (point.policy) {
        LookaheadConfig lookahead;
        lookahead.set = point.policy_set();
        lookahead.n_prime = point.policy->n_prime;
        lookahead.charge_budget = point.policy->charge_lookahead;
        est = run_smc(model, point.params.grid, levels, point.budget, run_seed, lookahead);
    } else {
        est = run_smc(model, point.params.grid, levels, point.budget, run_seed);
    }

    rec.p_hat = est.p_hat;
    const auto ci = est.confidence();
    rec.ci_low = ci.low;
    rec.ci_high = ci.upper_unknown ? std::numeric_limits<double>::quiet_NaN() : ci.high;
    rec.total_cost = est.total_cost;
    rec.extinct_at = est.extinct_at;
    rec.per_level.assign(static_cast<std::size_t>(levels.level_count()),
                         std::numeric_limits<double>::quiet_NaN());
    for (const auto& lvl : est.per_level)
        rec.per_level[static_cast<std::size_t>(lvl.level)] = lvl.transition_estimate();

    if (point.policy) {
        rec.policy_freq.assign(static_cast<std::size_t>(point.policy->policy_count),
                               std::numeric_limits<double>::quiet_NaN());
        if (!est.decisions.empty()) {
            std::vector<long long> counts(static_cast<std::size_t>(point.policy->policy_count), 0);
            for (const auto& d : est.decisions) ++counts[static_cast<std::size_t>(d.selected)];
            for (std::size_t i = 0; i < counts.size(); ++i)
                rec.policy_freq[i] = static_cast<double>(counts[i]) /
                                     static_cast<double>(est.decisions.size());
        }
    }
    return rec;
}

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const ProgressFn& progress) {
    config.validate();
    std::vector<double> values;
    if (config.sweep) values = config.sweep->values;
    else values = {std::numeric_limits<double>::quiet_NaN()};

    std::vector<ResultRecord> records;
    records.reserve(values.size() * static_cast<std::size_t>(config.replications));
    for (std::size_t si = 0; si < values.size(); ++si) {
        for (int r = 0; r < config.replications; ++r) {
            records.push_back(run_point(config, values[si], static_cast<int>(si), r));
            if (progress) progress(records.back());
        }
    }
    return records;
}

}  // namespace resim
