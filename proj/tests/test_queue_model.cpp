#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "resim/mc.hpp"
#include "resim/queue_model.hpp"

using namespace resim;

TEST_CASE("capacity is logistic in the latent health") {
    CHECK(capacity(0.0) == doctest::Approx(0.5));
    CHECK(capacity(0.95) == doctest::Approx(0.7211151780228631).epsilon(1e-12));
    CHECK(capacity(40.0) == doctest::Approx(1.0));
    CHECK(capacity(-40.0) == doctest::Approx(0.0));
    double prev = 0.0;
    for (double eta = -6.0; eta <= 6.0; eta += 0.25) {
        const double c = capacity(eta);
        CHECK(c > prev);
        CHECK(c > 0.0);
        CHECK(c < 1.0);
        prev = c;
    }
}

TEST_CASE("backlog update") {
    QueueParams p;  // lambda 0.7, dt 0.05
    CHECK(step_backlog(0.0, 0.7, p) == doctest::Approx(0.0));
    CHECK(step_backlog(0.5, 0.5, p) == doctest::Approx(0.51).epsilon(1e-12));
    // drain below zero truncates: 0.001 + (0.7 - 0.9) * 0.05 = -0.009
    p.lambda = 0.7;
    CHECK(step_backlog(0.001, 0.9, p) == 0.0);
}

TEST_CASE("health update") {
    QueueParams p;  // nu 0.2, phi 2
    const double c = capacity(0.95);
    CHECK(step_health(0.95, c, -5.0, p) == doctest::Approx(0.9588174017867584).epsilon(1e-12));
    // recovery disabled: eta drops by exp(F) exactly
    CHECK(step_health(1.0, 0.5, -2.0, 0.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)));
    // no slack, no stress
    CHECK(step_health(1.0, 1.0, -700.0, p) == doctest::Approx(1.0));
}

TEST_CASE("stress update is AR(1)") {
    QueueParams p;
    p.rho = 0.0;
    p.sigma_f = 0.0;
    CHECK(step_stress(3.7, 0.4, p) == doctest::Approx(p.mu_f));  // collapses to the mean
    QueueParams q;
    CHECK(step_stress(q.mu_f, 0.0, q) == doctest::Approx(q.mu_f));  // fixed point

    // stationary variance sigma^2 / (1 - rho^2)
    QueueParams r;
    r.grid = TimeGrid::make(0.05, 60.0);
    RandomStream stream(123, {77});
    double f = r.mu_f;
    for (int i = 0; i < 1000; ++i) f = step_stress(f, stream.next_normal(), r);
    double sum = 0, sq = 0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        f = step_stress(f, stream.next_normal(), r);
        sum += f;
        sq += f * f;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(mean == doctest::Approx(r.mu_f).epsilon(0.01));
    CHECK(var == doctest::Approx(0.55 * 0.55 / (1.0 - 0.75 * 0.75)).epsilon(0.05));
}

TEST_CASE("delay via Little's law") {
    CHECK(delay(0.0, 0.5) == 0.0);
    CHECK(delay(0.05, 0.5) == doctest::Approx(0.1));
    CHECK(delay(1.0, 0.01) > delay(1.0, 0.02));
}

TEST_CASE("persistence counter") {
    const int grace = 100;
    CHECK(step_persistence(0, 0.05, 0.1, grace) == 0);
    CHECK(step_persistence(99, 0.2, 0.1, grace) == 100);
    CHECK(step_persistence(100, 0.2, 0.1, grace) == 100);  // capped
    CHECK(step_persistence(57, 0.05, 0.1, grace) == 0);    // full reset
}

TEST_CASE("reaction coordinate") {
    QueueParams p;
    const QueueModel m{p};
    const int grace = m.grace();
    QueueState s;
    s.health = p.eta0;
    s.stress = p.mu_f;

    s.backlog = 0.0;
    s.persistence = 0;
    CHECK(m.reaction(s) == 0.0);

    // delay term saturates at one
    s.backlog = 2.0 * p.delta_crit * capacity(p.eta0);
    CHECK(m.reaction(s) == doctest::Approx(1.0));

    s.backlog = p.delta_crit * capacity(p.eta0);
    s.persistence = grace / 2;
    CHECK(m.reaction(s) == doctest::Approx(1.5));

    // a saturated counter is the failure set, whatever the current delay
    s.backlog = 0.0;
    s.persistence = grace;
    CHECK(m.reaction(s) == 2.0);
}

TEST_CASE("default levels") {
    const auto levels = default_levels();
    CHECK(levels.thresholds().size() == 5);
    CHECK(levels.level_count() == 4);
    CHECK(levels.failure_threshold() == 2.0);
    for (int k = 0; k + 1 < 5; ++k) CHECK(levels.threshold(k) < levels.threshold(k + 1));
}

TEST_CASE("grace period in steps") {
    QueueParams p;
    CHECK(grace_steps(p) == 100);  // 5 s / 50 ms
    p.t_tar = 0.05;
    CHECK(grace_steps(p) == 1);
    p.t_tar = 0.101;
    CHECK(grace_steps(p) == 3);  // ceil(2.02)
}

TEST_CASE("parameter validation names the offending field") {
    QueueParams p;
    p.rho = 1.2;
    CHECK_THROWS_WITH_AS(p.validate(), doctest::Contains("rho"), std::invalid_argument);
    QueueParams q;
    q.lambda = 0.0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    QueueParams r;  // nu(u_4) * dt = 0.2 * (1 + 4 * 25) * 0.05 = 1.01 > 1
    r.rho_prime = 25.0;
    CHECK_THROWS_AS(r.validate(5), std::invalid_argument);
    r.validate(1);  // baseline alone is fine
}

namespace {

QueueParams random_stress_params(RandomStream& rng) {
    QueueParams p;
    p.grid = TimeGrid::make(0.05, 10.0);  // 200 steps
    p.lambda = 0.6 + 0.35 * rng.next_uniform();
    p.sigma_f = 0.8 + 0.8 * rng.next_uniform();
    p.mu_f = -5.0 + 2.0 * rng.next_uniform();
    p.t_tar = 0.25 + 0.75 * rng.next_uniform();  // grace 5..20 steps
    return p;
}

struct Trace {
    std::vector<double> delays;        // D[0..J]
    std::vector<int> persistence;      // varrho[0..J]
    std::vector<QueueState> states;
};

Trace roll_full(const QueueModel& m, std::uint64_t seed, std::uint64_t idx) {
    Trace t;
    RandomStream init(seed, {stream_label::kInit, idx});
    auto s = m.initial_state(init);
    RandomStream roll(seed, {stream_label::kTrajectory, idx});
    const int steps = m.params().grid.steps;
    for (int j = 0; j <= steps; ++j) {
        t.delays.push_back(delay(s.backlog, capacity(s.health)));
        t.persistence.push_back(s.persistence);
        t.states.push_back(s);
        if (j < steps) s = m.step(s, roll);
    }
    return t;
}

}  // namespace

TEST_CASE("persistence counter equals the window oracle on random trajectories") {
    RandomStream rng(2024, {1});
    int failures_seen = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const QueueParams p = random_stress_params(rng);
        const QueueModel m{p};
        const int grace = m.grace();
        const Trace t = roll_full(m, 555, static_cast<std::uint64_t>(rep));
        const int steps = p.grid.steps;

        // counter value: length of the exceedance run ending just before j
        for (int j = 0; j <= steps; ++j) {
            int run = 0;
            for (int i = j - 1; i >= 0 && t.delays[static_cast<std::size_t>(i)] >= p.delta_crit;
                 --i)
                ++run;
            CHECK(t.persistence[static_cast<std::size_t>(j)] == std::min(run, grace));
        }

        // hitting {varrho = H} iff some window of `grace` consecutive steps
        // keeps the delay at or above delta_crit inside the horizon
        bool hit = false;
        for (int j = 0; j <= steps; ++j) hit = hit || t.persistence[static_cast<std::size_t>(j)] >= grace;
        bool window = false;
        for (int a = 0; a + grace <= steps; ++a) {
            bool all = true;
            for (int i = a; i < a + grace; ++i)
                all = all && t.delays[static_cast<std::size_t>(i)] >= p.delta_crit;
            window = window || all;
        }
        CHECK(hit == window);
        failures_seen += hit ? 1 : 0;
    }
    CHECK(failures_seen > 20);  // the oracle must see both outcomes
}

TEST_CASE("visited states respect capacity, backlog, and reaction bounds") {
    RandomStream rng(77, {2});
    for (int rep = 0; rep < 50; ++rep) {
        const QueueParams p = random_stress_params(rng);
        const QueueModel m{p};
        const Trace t = roll_full(m, 99, static_cast<std::uint64_t>(rep));
        for (const auto& s : t.states) {
            const double c = capacity(s.health);
            CHECK(c > 0.0);
            CHECK(c < 1.0);
            CHECK(s.backlog >= 0.0);
            const double g = m.reaction(s);
            CHECK(g >= 0.0);
            CHECK(g <= 2.0);
        }
    }
}

TEST_CASE("transition depends only on the stored state") {
    QueueParams p;
    p.sigma_f = 1.0;
    const QueueModel m{p};
    const Trace t = roll_full(m, 4242, 0);

    // restart mid-trajectory from a copied state: identical continuation
    const QueueState resume = t.states[500];
    RandomStream a(1, {9, 9});
    RandomStream b(1, {9, 9});
    auto continued = m.step(resume, a);
    QueueState copy = resume;
    auto recontinued = m.step(copy, b);
    CHECK(continued == recontinued);
}

TEST_CASE("zero stress keeps the queue empty") {
    QueueParams p;
    p.sigma_f = 0.0;
    p.mu_f = -20.0;
    const QueueModel m{p};
    const Trace t = roll_full(m, 5, 0);
    for (const auto& s : t.states) CHECK(s.backlog == 0.0);

    const auto est = run_mc(m, p.grid, 50 * p.grid.steps, default_levels().failure_threshold(), 8);
    CHECK(est.p_hat == 0.0);
    CHECK(est.successes == 0);
}
