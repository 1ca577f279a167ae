#pragma once

// Naive Monte Carlo estimator: independent full-trajectory realizations,
// each stopped early on first entry to the failure set. The smallest
// resolvable nonzero probability is 1/N, which is what makes this
// estimator collapse in the rare-event regime.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "resim/rng.hpp"
#include "resim/sim.hpp"
#include "resim/stats.hpp"

namespace resim {

struct McEstimate {
    double p_hat = 0.0;
    long long trajectories = 0;  // N
    long long successes = 0;
    long long total_cost = 0;    // exact number of step() calls
    double rel_var = std::numeric_limits<double>::quiet_NaN();  // (1-p)/(p N) when p > 0

    ConfidenceInterval confidence(double z = 1.96) const {
        return mc_confidence(p_hat, trajectories, z);
    }
};

// Runs trajectories as long as one more full-horizon trajectory fits in
// the budget, so total_cost <= total_budget always holds. Streams:
// initial state (kInit, i), rollout (kTrajectory, i).
template <SimulatorModel M>
McEstimate run_mc(const M& model, const TimeGrid& grid, long long total_budget,
                  double failure_threshold, std::uint64_t seed) {
    const long long horizon = grid.steps;
    if (total_budget < horizon)
        throw std::invalid_argument("run_mc: budget smaller than one trajectory");

    McEstimate est;
    while (est.total_cost + horizon <= total_budget) {
        const long long i = est.trajectories;
        RandomStream init_stream(seed, {stream_label::kInit, static_cast<std::uint64_t>(i)});
        RandomStream roll_stream(seed, {stream_label::kTrajectory, static_cast<std::uint64_t>(i)});
        auto state = model.initial_state(init_stream);
        bool failed = model.reaction(state) >= failure_threshold;
        while (!failed && state.time_index < grid.steps) {
            state = model.step(state, roll_stream);
            ++est.total_cost;
            failed = model.reaction(state) >= failure_threshold;
        }
        est.successes += failed ? 1 : 0;
        ++est.trajectories;
    }
    est.p_hat = static_cast<double>(est.successes) / static_cast<double>(est.trajectories);
    if (est.p_hat > 0.0)
        est.rel_var = (1.0 - est.p_hat) / (est.p_hat * static_cast<double>(est.trajectories));
    return est;
}

}  // namespace resim
