#pragma once

// Restartable-simulator contract consumed by every estimator.
//
// A model provides value-semantic states plus three pure functions:
//   initial_state(stream)  -> State with time_index = 0
//   step(state, stream)    -> successor with time_index + 1 (input untouched)
//   reaction(state)        -> scalar progression toward the failure set
//
// Checkpointing a trajectory is just copying its state; continuations
// replay from the copy with a fresh RandomStream. One step() call is one
// cost unit, uniformly across models.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "resim/rng.hpp"

namespace resim {

struct TimeGrid {
    double dt = 1.0;       // seconds per step
    double horizon = 1.0;  // total duration T, seconds
    int steps = 1;         // J = T / dt

    static TimeGrid make(double dt, double horizon) {
        if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
        if (!(horizon > 0.0)) throw std::invalid_argument("TimeGrid: horizon must be > 0");
        const long long j = std::llround(horizon / dt);
        if (j < 1 || std::fabs(static_cast<double>(j) * dt - horizon) > 1e-9 * horizon)
            throw std::invalid_argument("TimeGrid: horizon is not an integer multiple of dt");
        TimeGrid g;
        g.dt = dt;
        g.horizon = horizon;
        g.steps = static_cast<int>(j);
        return g;
    }
};

template <class M>
concept SimulatorModel =
    std::copyable<typename M::State> &&
    requires(const M m, const typename M::State s, RandomStream& rs) {
        { m.initial_state(rs) } -> std::same_as<typename M::State>;
        { m.step(s, rs) } -> std::same_as<typename M::State>;
        { m.reaction(s) } -> std::convertible_to<double>;
        { s.time_index } -> std::convertible_to<int>;
    };

// Models whose dynamics can be switched between a finite set of recovery
// policies. apply_policy returns a state that evolves under policy i from
// here on; it must not touch anything else.
template <class M>
concept PolicyAwareModel =
    SimulatorModel<M> && requires(const M m, typename M::State s, int i) {
        { m.apply_policy(s, i) } -> std::same_as<typename M::State>;
    };

// A simulator state captured at the first hitting time of a level. By the
// Markov property it is a sample from the conditional first-hitting
// distribution, replayable with fresh randomness.
template <SimulatorModel M>
struct Checkpoint {
    typename M::State state;
    int entered_level = 0;         // level index this state first entered
    long long origin_attempt = 0;  // attempt index (within entered_level - 1) that produced it
};

// Labels that namespace derived stream paths. Each estimator documents the
// exact paths it uses; tests replay them to audit first-hitting semantics.
namespace stream_label {
inline constexpr std::uint64_t kInit = 1;       // (kInit, particle)           initial states
inline constexpr std::uint64_t kTrajectory = 2; // (kTrajectory, i)            naive MC rollout
inline constexpr std::uint64_t kAttempt = 3;    // (kAttempt, level, attempt)  splitting continuation
inline constexpr std::uint64_t kResample = 4;   // (kResample, level, attempt) checkpoint choice
inline constexpr std::uint64_t kBranch = 5;     // (kBranch, level, origin, policy, n)
inline constexpr std::uint64_t kCompare = 6;    // (kCompare, checkpoint, policy, n)
inline constexpr std::uint64_t kPoint = 7;      // (kPoint, sweep_index, replication)
}  // namespace stream_label

}  // namespace resim
