#include <doctest.h>

#include <vector>

#include "resim/queue_model.hpp"
#include "resim/sim.hpp"
#include "resim/toy_chain.hpp"

using namespace resim;

static_assert(SimulatorModel<ToyChain>);
static_assert(SimulatorModel<QueueModel>);
static_assert(PolicyAwareModel<QueueModel>);

TEST_CASE("time grid construction") {
    const auto g = TimeGrid::make(0.05, 60.0);
    CHECK(g.steps == 1200);
    CHECK(TimeGrid::make(1.0, 4.0).steps == 4);
    CHECK_THROWS_AS(TimeGrid::make(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(TimeGrid::make(0.05, -1.0), std::invalid_argument);
    // horizon must be a whole number of steps
    CHECK_THROWS_AS(TimeGrid::make(0.05, 60.02), std::invalid_argument);
}

TEST_CASE("initial states are deterministic per (seed, path)") {
    const ToyChain chain(0.5, 3);
    RandomStream a(9, {stream_label::kInit, 0});
    RandomStream b(9, {stream_label::kInit, 0});
    CHECK(chain.initial_state(a) == chain.initial_state(b));

    const QueueModel queue{QueueParams{}};
    RandomStream c(9, {stream_label::kInit, 1});
    const auto s = queue.initial_state(c);
    CHECK(s.backlog == 0.0);
    CHECK(s.persistence == 0);
    CHECK(s.time_index == 0);
    CHECK(s.health == doctest::Approx(0.95));
}

TEST_CASE("step is a pure transition: cloned streams replay") {
    const QueueModel queue{QueueParams{}};
    RandomStream init(3, {stream_label::kInit, 0});
    const auto s0 = queue.initial_state(init);

    RandomStream r1(3, {stream_label::kAttempt, 0, 0});
    RandomStream r2(3, {stream_label::kAttempt, 0, 0});
    auto a = queue.step(s0, r1);
    auto b = queue.step(s0, r2);
    CHECK(a == b);
    CHECK(s0.time_index == 0);  // input untouched
    CHECK(a.time_index == 1);

    CHECK(queue.reaction(a) == queue.reaction(a));
}

TEST_CASE("time index runs 0..n over a rollout") {
    const ToyChain chain(0.3, 4);
    RandomStream init(5, {stream_label::kInit, 0});
    auto s = chain.initial_state(init);
    RandomStream roll(5, {stream_label::kTrajectory, 0});
    for (int j = 0; j < 4; ++j) {
        CHECK(s.time_index == j);
        s = chain.step(s, roll);
    }
    CHECK(s.time_index == 4);
}

TEST_CASE("stepping past the horizon is rejected") {
    QueueParams p;
    p.grid = TimeGrid::make(0.05, 0.1);  // two steps
    const QueueModel queue{p};
    RandomStream init(1, {stream_label::kInit, 0});
    auto s = queue.initial_state(init);
    RandomStream roll(1, {stream_label::kTrajectory, 0});
    s = queue.step(s, roll);
    s = queue.step(s, roll);
    CHECK_THROWS_AS(queue.step(s, roll), std::logic_error);
}
