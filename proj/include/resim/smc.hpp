#pragma once

// Fixed-level splitting with budget-adaptive population control.
//
// Level k propagates attempts from the level-(k-1) checkpoint pool (level 0
// from fresh initial states) until each attempt reaches the next threshold
// (success: the first-hitting state is stored as a checkpoint) or the
// horizon (failure). Attempts are issued sequentially until S_k >= S_tar
// and A_k >= A_tar hold together, or the level's share of the global step
// budget runs out; successful states are then resampled with replacement to
// seed the next level. The estimate is the product of the per-level
// success ratios S_k / A_k.
//
// Budget rule: before level k starts, one horizon's worth of steps is
// reserved for every remaining level, so no level is ever starved to zero
// attempts. With total_budget >= K * J the attempt cost never exceeds
// total_budget + J (one attempt may be in flight when the budget trips).
// Lookahead branches, when charged, land between attempts and can push the
// charged total past a level gate; the level then stops after its current
// attempt and each remaining level still runs its reserved minimum.
//
// Stream discipline (master seed s):
//   initial states        (s, {kInit, attempt})
//   resample choice       (s, {kResample, level, attempt})
//   attempt continuation  (s, {kAttempt, level, attempt})
//   lookahead branches    (s, {kBranch, level, origin, policy, n})
// Single-worker runs are therefore bit-reproducible, and attempts could be
// farmed out by index without coordination.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "resim/levels.hpp"
#include "resim/policy.hpp"
#include "resim/rng.hpp"
#include "resim/sim.hpp"
#include "resim/stats.hpp"

namespace resim {

struct BudgetPolicy {
    long long total_budget = 5'000'000;  // C_T, base-simulator steps
    int s_tar = 200;                     // target successes per level
    int a_tar = 400;                     // target attempts per level

    void validate() const {
        if (total_budget <= 0) throw std::invalid_argument("BudgetPolicy: total_budget must be > 0");
        if (s_tar <= 0 || a_tar <= 0)
            throw std::invalid_argument("BudgetPolicy: s_tar and a_tar must be > 0");
        if (s_tar > a_tar) throw std::invalid_argument("BudgetPolicy: s_tar must be <= a_tar");
    }
};

// Expected attempts needed for s_tar successes at rate p_hat, clamped to
// [s_tar, max_feasible]. Used to size the resampled pool between levels.
inline long long next_pool_size(int s_tar, double p_hat,
                                long long max_feasible = std::numeric_limits<long long>::max()) {
    if (!(p_hat > 0.0) || p_hat > 1.0)
        throw std::invalid_argument("next_pool_size: p_hat must be in (0, 1]");
    const double raw = std::ceil(static_cast<double>(s_tar) / p_hat - 1e-9);
    const long long lo = s_tar;
    const long long hi = std::max(lo, max_feasible);
    const long long planned =
        raw >= static_cast<double>(hi) ? hi : std::max(lo, static_cast<long long>(raw));
    return planned;
}

template <SimulatorModel M>
struct LevelRecord {
    int level = 0;
    long long successes = 0;            // S_k
    long long attempts = 0;             // A_k
    long long cost = 0;                 // C_k, steps spent at this level
    long long planned_attempts = 0;     // pool size chosen before the level ran
    bool budget_truncated = false;      // level stopped by the budget gate
    std::vector<Checkpoint<M>> checkpoints;  // one per success, first-hitting states

    double transition_estimate() const {
        return attempts > 0 ? static_cast<double>(successes) / static_cast<double>(attempts)
                            : std::numeric_limits<double>::quiet_NaN();
    }
};

template <SimulatorModel M>
struct SmcEstimate {
    double p_hat = 0.0;
    std::optional<double> rel_var;   // Eq-style proxy; empty on extinction
    long long total_cost = 0;        // every step() call, attempts + branches
    long long lookahead_cost = 0;    // branch steps only
    std::optional<int> extinct_at;
    std::vector<LevelRecord<M>> per_level;
    std::vector<PolicyDecision<M>> decisions;  // one per hosted-level entry

    ConfidenceInterval confidence(double z = 1.96) const {
        return smc_confidence(p_hat, rel_var, z);
    }

    std::vector<double> transition_estimates() const {
        std::vector<double> out;
        out.reserve(per_level.size());
        for (const auto& rec : per_level) out.push_back(rec.transition_estimate());
        return out;
    }
};

namespace detail {

template <SimulatorModel M>
SmcEstimate<M> run_smc_impl(const M& model, const TimeGrid& grid, const LevelSchedule& levels,
                            const BudgetPolicy& budget, std::uint64_t seed,
                            const LookaheadConfig* lookahead) {
    budget.validate();
    const int level_count = levels.level_count();
    const long long horizon = grid.steps;
    if (budget.total_budget < static_cast<long long>(level_count) * horizon)
        throw std::invalid_argument("run_smc: budget below one trajectory per level");
    if (lookahead) {
        lookahead->set.validate(grid.dt);
        if (lookahead->set.hosted_level > level_count - 1)
            throw std::invalid_argument("run_smc: hosted_level has no next level to branch to");
    }

    SmcEstimate<M> est;
    long long charged = 0;  // steps counted against total_budget
    long long planned = std::max(budget.s_tar, budget.a_tar);

    for (int k = 0; k < level_count; ++k) {
        const double target = levels.target(k);
        const long long gate =
            budget.total_budget - static_cast<long long>(level_count - 1 - k) * horizon;
        const std::vector<Checkpoint<M>>* pool = k > 0 ? &est.per_level.back().checkpoints : nullptr;

        LevelRecord<M> rec;
        rec.level = k;
        rec.planned_attempts = planned;

        while (true) {
            const bool met = rec.successes >= budget.s_tar && rec.attempts >= budget.a_tar;
            if (met) break;
            if (rec.attempts >= budget.a_tar && rec.successes == 0) break;  // extinct
            if (rec.attempts > 0 && charged + rec.cost >= gate) {
                rec.budget_truncated = true;
                break;
            }

            const auto attempt = static_cast<std::uint64_t>(rec.attempts);
            typename M::State state;
            if (k == 0) {
                RandomStream init_stream(seed, {stream_label::kInit, attempt});
                state = model.initial_state(init_stream);
            } else {
                RandomStream pick(seed,
                                  {stream_label::kResample, static_cast<std::uint64_t>(k), attempt});
                state = (*pool)[static_cast<std::size_t>(pick.next_index(pool->size()))].state;
            }

            RandomStream attempt_stream(
                seed, {stream_label::kAttempt, static_cast<std::uint64_t>(k), attempt});
            bool hit = model.reaction(state) >= target;
            while (!hit && state.time_index < grid.steps) {
                state = model.step(state, attempt_stream);
                ++rec.cost;
                hit = model.reaction(state) >= target;
            }
            ++rec.attempts;

            if (hit) {
                ++rec.successes;
                Checkpoint<M> cp{std::move(state), k + 1, static_cast<long long>(attempt)};
                if (lookahead && k + 1 == lookahead->set.hosted_level) {
                    if constexpr (PolicyAwareModel<M>) {
                        long long branch_steps = 0;
                        auto decision =
                            select_policy(model, cp, lookahead->set, lookahead->n_prime,
                                          levels.target(k + 1), grid.steps, seed, &branch_steps);
                        est.lookahead_cost += branch_steps;
                        est.total_cost += branch_steps;
                        if (lookahead->charge_budget) charged += branch_steps;
                        cp.state = model.apply_policy(cp.state, decision.selected);
                        est.decisions.push_back(std::move(decision));
                    }
                }
                rec.checkpoints.push_back(std::move(cp));
            }
        }

        charged += rec.cost;
        est.total_cost += rec.cost;
        const bool extinct = rec.successes == 0;
        est.per_level.push_back(std::move(rec));
        if (extinct) {
            est.extinct_at = k;
            break;
        }
        planned = next_pool_size(budget.s_tar, est.per_level.back().transition_estimate(),
                                 std::max<long long>(budget.total_budget - charged, budget.s_tar));
    }

    double product = 1.0;
    std::vector<std::pair<double, long long>> ratios;
    for (const auto& rec : est.per_level) {
        product *= rec.transition_estimate();
        ratios.emplace_back(rec.transition_estimate(), rec.attempts);
    }
    est.p_hat = est.extinct_at ? 0.0 : product;
    est.rel_var = est.extinct_at ? std::nullopt : rel_var_proxy(ratios);
    return est;
}

}  // namespace detail

template <SimulatorModel M>
SmcEstimate<M> run_smc(const M& model, const TimeGrid& grid, const LevelSchedule& levels,
                       const BudgetPolicy& budget, std::uint64_t seed) {
    return detail::run_smc_impl(model, grid, levels, budget, seed, nullptr);
}

// Splitting run with state-contingent policy selection: every first entry
// into the hosted level triggers a lookahead decision and the chosen policy
// rides the checkpoint for the rest of the horizon.
template <PolicyAwareModel M>
SmcEstimate<M> run_smc(const M& model, const TimeGrid& grid, const LevelSchedule& levels,
                       const BudgetPolicy& budget, std::uint64_t seed,
                       const LookaheadConfig& lookahead) {
    return detail::run_smc_impl(model, grid, levels, budget, seed, &lookahead);
}

}  // namespace resim
