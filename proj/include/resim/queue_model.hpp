#pragma once

// Delay-critical service queue under stress and recovery dynamics.
//
// A single normalized queue is fed at constant rate Lambda and served at
// capacity C = logistic(eta), where the latent health eta recovers at rate
// nu * (1 - C)^phi and degrades by log-normal stress exp(F), F following an
// AR(1) process. Delay is Little's-law B/C. The resilience failure is
// non-recovery: delay at or above delta_crit for H = ceil(t_tar/dt)
// consecutive steps, tracked by the persistence counter.

#include <cmath>
#include <stdexcept>
#include <string>

#include "resim/levels.hpp"
#include "resim/rng.hpp"
#include "resim/sim.hpp"

namespace resim {

struct QueueParams {
    double lambda = 0.7;       // offered traffic rate, fraction of nominal capacity
    double eta0 = 0.95;        // initial latent health
    double nu = 0.2;           // baseline recovery rate
    double phi = 2.0;          // recovery nonlinearity, > 1
    double rho = 0.75;         // stress temporal correlation, [0,1)
    double mu_f = -5.0;        // long-term mean of latent log-stress
    double sigma_f = 0.55;     // log-stress standard deviation
    double delta_crit = 0.1;   // critical delay threshold, seconds
    double t_tar = 5.0;        // recovery target time, seconds
    double rho_prime = 0.5;    // recovery-rate increment per policy rank
    TimeGrid grid = TimeGrid::make(0.05, 60.0);

    // policy_count: size of the policy set the model will be driven with;
    // the largest policy's rate must keep nu * dt <= 1.
    void validate(int policy_count = 1) const {
        auto fail = [](const std::string& msg) { throw std::invalid_argument("QueueParams: " + msg); };
        if (!(lambda > 0.0) || lambda > 1.0) fail("lambda must be in (0, 1]");
        if (!(phi > 1.0)) fail("phi must be > 1");
        if (rho < 0.0 || rho >= 1.0) fail("rho must be in [0, 1)");
        if (sigma_f < 0.0) fail("sigma_f must be >= 0");
        if (!(delta_crit > 0.0)) fail("delta_crit must be > 0");
        if (!(t_tar > 0.0)) fail("t_tar must be > 0");
        if (!(nu > 0.0)) fail("nu must be > 0");
        if (rho_prime < 0.0) fail("rho_prime must be >= 0");
        const double nu_max = nu * (1.0 + (policy_count - 1) * rho_prime);
        if (nu_max * grid.dt > 1.0) fail("nu * dt exceeds 1 under the largest policy");
    }
};

// Grace period in steps: H = ceil(t_tar / dt).
inline int grace_steps(const QueueParams& p) {
    return static_cast<int>(std::ceil(p.t_tar / p.grid.dt - 1e-9));
}

struct QueueState {
    double backlog = 0.0;  // B, unfinished work in equivalent service time
    double health = 0.0;   // eta
    double stress = 0.0;   // F, latent log-stress
    int persistence = 0;   // consecutive steps with delay >= delta_crit, capped at H
    int policy = 0;        // active recovery policy rank
    int time_index = 0;

    bool operator==(const QueueState&) const = default;
};

// Instantaneous service capacity, logistic in the latent health.
inline double capacity(double eta) { return 1.0 / (1.0 + std::exp(-eta)); }

// B' = max{0, B + (Lambda - C) * dt}
inline double step_backlog(double backlog, double cap, const QueueParams& p) {
    return std::max(0.0, backlog + (p.lambda - cap) * p.grid.dt);
}

// eta' = eta + nu * (1 - C)^phi - exp(F)
inline double step_health(double eta, double cap, double stress, double nu, double phi) {
    return eta + nu * std::pow(1.0 - cap, phi) - std::exp(stress);
}

inline double step_health(double eta, double cap, double stress, const QueueParams& p) {
    return step_health(eta, cap, stress, p.nu, p.phi);
}

// F' = rho * F + (1 - rho) * mu_F + gamma * sigma_F, gamma ~ N(0,1) i.i.d.
inline double step_stress(double stress, double gamma_draw, const QueueParams& p) {
    return p.rho * stress + (1.0 - p.rho) * p.mu_f + gamma_draw * p.sigma_f;
}

// End-to-end delay via Little's law.
inline double delay(double backlog, double cap) { return backlog / cap; }

// Persistence counter: count consecutive steps with delay >= delta_crit,
// reset on recovery, capped at the grace period.
inline int step_persistence(int count, double d, double delta_crit, int grace) {
    return d >= delta_crit ? std::min(count + 1, grace) : 0;
}

class QueueModel {
public:
    using State = QueueState;

    explicit QueueModel(QueueParams params, int policy_count = 1)
        : p_(params), grace_(grace_steps(params)) {
        p_.validate(policy_count);
    }

    // Deterministic nominal start: empty queue, nominal health, stress at
    // its long-term mean. The stream is part of the contract but unused.
    State initial_state(RandomStream& /*stream*/) const {
        State s;
        s.backlog = 0.0;
        s.health = p_.eta0;
        s.stress = p_.mu_f;
        s.persistence = 0;
        s.policy = 0;
        s.time_index = 0;
        return s;
    }

    // One transition j -> j+1. All reads are taken from the step-j state:
    // the persistence update sees the step-j delay, and backlog/health use
    // the step-j capacity and stress.
    State step(const State& s, RandomStream& stream) const {
        if (s.time_index >= p_.grid.steps)
            throw std::logic_error("QueueModel::step: horizon exhausted");
        const double cap = capacity(s.health);
        const double d = delay(s.backlog, cap);
        State n;
        n.persistence = step_persistence(s.persistence, d, p_.delta_crit, grace_);
        n.backlog = step_backlog(s.backlog, cap, p_);
        n.health = step_health(s.health, cap, s.stress, recovery_rate(s.policy), p_.phi);
        n.stress = step_stress(s.stress, stream.next_normal(), p_);
        n.policy = s.policy;
        n.time_index = s.time_index + 1;
        return n;
    }

    // Reaction coordinate min(D/delta, 1) + persistence/H in [0, 2].
    // A state with a full persistence run is the failure set itself and
    // reports 2 exactly, so hitting the top level coincides with the
    // non-recovery event even when the delay dips below delta_crit on the
    // very step the counter saturates.
    double reaction(const State& s) const {
        if (s.persistence >= grace_) return 2.0;
        const double cap = capacity(s.health);
        const double d = delay(s.backlog, cap);
        return std::min(d / p_.delta_crit, 1.0) +
               static_cast<double>(s.persistence) / static_cast<double>(grace_);
    }

    State apply_policy(State s, int policy) const {
        s.policy = policy;
        return s;
    }

    // nu(u_i) = nu0 * (1 + i * rho')
    double recovery_rate(int policy) const {
        return p_.nu * (1.0 + static_cast<double>(policy) * p_.rho_prime);
    }

    const QueueParams& params() const { return p_; }
    int grace() const { return grace_; }

private:
    QueueParams p_;
    int grace_;
};

// The four fixed levels: approach of a critical affectation (l_1), its
// onset (l_2), mid-progression toward non-recovery (l_3), and the failure
// set itself (l_4). l_0 = 0 qualifies every state since the coordinate is
// nonnegative.
inline LevelSchedule default_levels() {
    return LevelSchedule::make({0.0, 0.1, 1.0, 1.5, 2.0});
}

}  // namespace resim
