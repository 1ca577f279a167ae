#pragma once

// Sweep orchestration: one estimator run per (sweep value, replication),
// with per-point seeds derived from (master seed, sweep index, replication)
// so different methods and policy sets can be compared at matched
// randomness. Records come back ordered by (sweep index, replication).

#include <functional>
#include <vector>

#include "resim/config.hpp"
#include "resim/results.hpp"

namespace resim {

using ProgressFn = std::function<void(const ResultRecord&)>;

ResultRecord run_point(const ExperimentConfig& config, double sweep_value, int sweep_index,
                       int replication);

std::vector<ResultRecord> run_experiment(const ExperimentConfig& config,
                                         const ProgressFn& progress = nullptr);

}  // namespace resim
