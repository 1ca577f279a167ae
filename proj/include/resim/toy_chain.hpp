#pragma once

// Synthetic level chain with a closed-form hitting probability.
//
// The state is a counter that advances by one with probability q per step,
// observed for exactly max_level steps, so reaching level K requires K
// consecutive advances and Pr(hit K) = q^K. Used as the analytic oracle
// for estimator tests.

#include <utility>
#include <vector>

#include "resim/levels.hpp"
#include "resim/rng.hpp"
#include "resim/sim.hpp"

namespace resim {

class ToyChain {
public:
    struct State {
        int level = 0;
        int time_index = 0;
        bool operator==(const State&) const = default;
    };

    ToyChain(double q, int max_level) : q_(q), max_level_(max_level) {}

    State initial_state(RandomStream& /*stream*/) const { return {0, 0}; }

    State step(const State& s, RandomStream& stream) const {
        State n = s;
        if (stream.next_uniform() < q_ && n.level < max_level_) ++n.level;
        ++n.time_index;
        return n;
    }

    double reaction(const State& s) const { return static_cast<double>(s.level); }

    double q() const { return q_; }
    int max_level() const { return max_level_; }

    // Levels 0..K over the counter; grid with one step per level.
    LevelSchedule levels() const {
        std::vector<double> t;
        for (int k = 0; k <= max_level_; ++k) t.push_back(static_cast<double>(k));
        return LevelSchedule::make(std::move(t));
    }
    TimeGrid grid() const { return TimeGrid::make(1.0, static_cast<double>(max_level_)); }

private:
    double q_;
    int max_level_;
};

}  // namespace resim
