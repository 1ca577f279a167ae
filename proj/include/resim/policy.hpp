#pragma once

// Checkpoint-branching policy evaluation and state-contingent selection.
//
// Candidate recovery policies u_0..u_{n-1} scale the recovery rate,
// nu(u_i) = nu0 * (1 + i * rho'), at cost c(u_i) = kappa * i * rho'. When a
// trajectory first enters the hosted level, each candidate is scored by
// branching N' fresh continuations from the identical checkpoint state and
// the policy minimizing  J(u_i) = ln p_hat(u_i) + c(u_i)  governs the
// continuation to the end of the horizon. Level sets are shared across all
// policies so the per-policy probabilities stay comparable.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "resim/rng.hpp"
#include "resim/sim.hpp"
#include "resim/stats.hpp"

namespace resim {

struct PolicySet {
    double nu0 = 0.2;        // baseline recovery rate (policy 0)
    double rho_prime = 0.5;  // rate increment factor, (0, 1]
    int size = 1;            // |U|
    double kappa = 0.5;      // cost scale, >= 0
    int hosted_level = 2;    // level index at whose first hitting selection runs

    // dt is needed to check the stability constraint nu(u_max) * dt <= 1.
    void validate(double dt) const {
        if (size < 1) throw std::invalid_argument("PolicySet: size must be >= 1");
        if (!(nu0 > 0.0)) throw std::invalid_argument("PolicySet: nu0 must be > 0");
        if (!(rho_prime > 0.0) || rho_prime > 1.0)
            throw std::invalid_argument("PolicySet: rho_prime must be in (0, 1]");
        if (kappa < 0.0) throw std::invalid_argument("PolicySet: kappa must be >= 0");
        if (hosted_level < 1) throw std::invalid_argument("PolicySet: hosted_level must be >= 1");
        if (nu0 * (1.0 + (size - 1) * rho_prime) * dt > 1.0)
            throw std::invalid_argument("PolicySet: nu(u_max) * dt exceeds 1");
    }
};

inline double policy_rate(int i, const PolicySet& set) {
    if (i < 0 || i >= set.size) throw std::out_of_range("policy_rate: index out of range");
    return set.nu0 * (1.0 + static_cast<double>(i) * set.rho_prime);
}

// c(u_i) = kappa * (nu(u_i) - nu0) / nu0 = kappa * i * rho'
inline double policy_cost(int i, const PolicySet& set) {
    return set.kappa * static_cast<double>(i) * set.rho_prime;
}

struct PolicyEvaluation {
    int policy = 0;
    double p_hat_branch = 0.0;  // fraction of branches reaching the next level
    double cost_term = 0.0;     // c(u_i)
    double objective = 0.0;     // ln p_hat + cost (zero-success floor applied)
};

// argmin over objectives, ties broken toward the lowest index. Kept as a
// standalone pure function so selection coherence is testable on synthetic
// tables.
inline int argmin_objective(const std::vector<PolicyEvaluation>& evals) {
    if (evals.empty()) return 0;
    std::size_t best = 0;
    for (std::size_t i = 1; i < evals.size(); ++i)
        if (evals[i].objective < evals[best].objective) best = i;
    return evals[best].policy;
}

template <SimulatorModel M>
struct PolicyDecision {
    Checkpoint<M> checkpoint;  // the branched state, before any policy applies
    std::vector<PolicyEvaluation> evaluations;
    int selected = 0;
    bool uninformative = false;  // every candidate produced zero successes
};

struct LookaheadConfig {
    PolicySet set;
    int n_prime = 25;           // branches per (checkpoint, policy)
    bool charge_budget = true;  // count branch steps against the run budget
};

// Runs n_prime continuations from `start` under `policy` with fresh streams
// (seed, {path_label, level, origin, policy, n}) and returns the fraction
// that reach `target` before the horizon. Steps executed are added to
// *steps_used. A start state already at or past the target counts as an
// immediate success for every policy.
template <PolicyAwareModel M>
double branch_estimate(const M& model, const typename M::State& start, int policy, int n_prime,
                       double target, int horizon_steps, std::uint64_t seed,
                       std::uint64_t path_label, int level, long long origin,
                       long long* steps_used = nullptr) {
    if (n_prime < 1) throw std::invalid_argument("branch_estimate: n_prime must be >= 1");
    long long successes = 0;
    for (int n = 0; n < n_prime; ++n) {
        auto state = model.apply_policy(start, policy);
        RandomStream stream(seed, {path_label, static_cast<std::uint64_t>(level),
                                   static_cast<std::uint64_t>(origin),
                                   static_cast<std::uint64_t>(policy),
                                   static_cast<std::uint64_t>(n)});
        bool hit = model.reaction(state) >= target;
        while (!hit && state.time_index < horizon_steps) {
            state = model.step(state, stream);
            if (steps_used) ++*steps_used;
            hit = model.reaction(state) >= target;
        }
        successes += hit ? 1 : 0;
    }
    return static_cast<double>(successes) / static_cast<double>(n_prime);
}

// Myopic lookahead at the hosted level: score every candidate policy on the
// single next-stage transition and return the argmin of ln p_hat + cost.
// Zero-success estimates enter the objective through a 1/(2 N') floor so the
// argmin stays defined; the reported p_hat_branch is left at zero. A
// singleton policy set short-circuits: there is nothing to compare, so no
// branches are spent.
template <PolicyAwareModel M>
PolicyDecision<M> select_policy(const M& model, const Checkpoint<M>& checkpoint,
                                const PolicySet& set, int n_prime, double next_threshold,
                                int horizon_steps, std::uint64_t seed,
                                long long* steps_used = nullptr) {
    PolicyDecision<M> decision;
    decision.checkpoint = checkpoint;
    if (set.size == 1) {
        decision.selected = 0;
        return decision;
    }
    const double floor = 1.0 / (2.0 * static_cast<double>(n_prime));
    bool any_success = false;
    for (int i = 0; i < set.size; ++i) {
        PolicyEvaluation ev;
        ev.policy = i;
        ev.p_hat_branch = branch_estimate(model, checkpoint.state, i, n_prime, next_threshold,
                                          horizon_steps, seed, stream_label::kBranch,
                                          checkpoint.entered_level, checkpoint.origin_attempt,
                                          steps_used);
        ev.cost_term = policy_cost(i, set);
        ev.objective = std::log(ev.p_hat_branch > 0.0 ? ev.p_hat_branch : floor) + ev.cost_term;
        any_success = any_success || ev.p_hat_branch > 0.0;
        decision.evaluations.push_back(ev);
    }
    decision.selected = argmin_objective(decision.evaluations);
    if (!any_success) {
        decision.selected = 0;
        decision.uninformative = true;
    }
    return decision;
}

struct PolicyComparisonRow {
    int policy = 0;
    long long successes = 0;
    long long branches = 0;
    double p_hat = 0.0;
    ConfidenceInterval ci;
};

// Offline policy comparison: branch every stored checkpoint of a baseline
// run under every candidate and aggregate into per-policy transition
// estimates with binomial intervals.
template <PolicyAwareModel M>
std::vector<PolicyComparisonRow> compare_policies(const M& model,
                                                  const std::vector<Checkpoint<M>>& checkpoints,
                                                  const PolicySet& set, int n_prime,
                                                  double next_threshold, int horizon_steps,
                                                  std::uint64_t seed, double z = 1.96) {
    if (checkpoints.empty())
        throw std::invalid_argument("compare_policies: empty checkpoint pool");
    std::vector<PolicyComparisonRow> table(static_cast<std::size_t>(set.size));
    for (int i = 0; i < set.size; ++i) {
        auto& row = table[static_cast<std::size_t>(i)];
        row.policy = i;
        for (std::size_t c = 0; c < checkpoints.size(); ++c) {
            const double frac = branch_estimate(model, checkpoints[c].state, i, n_prime,
                                                next_threshold, horizon_steps, seed,
                                                stream_label::kCompare,
                                                checkpoints[c].entered_level,
                                                static_cast<long long>(c));
            row.successes += std::llround(frac * n_prime);
            row.branches += n_prime;
        }
        row.p_hat = static_cast<double>(row.successes) / static_cast<double>(row.branches);
        row.ci = mc_confidence(row.p_hat, row.branches, z);
    }
    return table;
}

}  // namespace resim
