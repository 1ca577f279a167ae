#pragma once

// Experiment configuration: a flat JSON document whose field names mirror
// the model symbols (lambda, eta0, nu, phi, rho, mu_f, sigma_f, delta_crit,
// t_tar, dt, horizon) plus method/budget/levels/sweep/policy/seed blocks.
// Absent fields fall back to the baseline defaults.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "resim/policy.hpp"
#include "resim/queue_model.hpp"
#include "resim/smc.hpp"

namespace resim {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SweepSpec {
    std::string field;
    std::vector<double> values;
};

struct PolicyBlock {
    double rho_prime = 0.5;
    double kappa = 0.5;
    int policy_count = 1;
    int n_prime = 25;
    int hosted_level = 2;
    bool charge_lookahead = true;
};

struct ExperimentConfig {
    QueueParams params;  // grid included; rho_prime synced from the policy block
    std::string method = "smc";
    BudgetPolicy budget;  // c_t, s_tar, a_tar
    std::vector<double> levels = {0.0, 0.1, 1.0, 1.5, 2.0};
    std::optional<SweepSpec> sweep;
    std::optional<PolicyBlock> policy;
    std::uint64_t seed = 1;
    int replications = 1;

    // Throws ConfigError naming the offending field.
    void validate() const;

    PolicySet policy_set() const;  // requires a policy block
};

// Fields accepted by `sweep.field` and the CLI --sweep flag.
const std::vector<std::string>& sweepable_fields();

// Returns a copy of the config with the swept field set to `value`.
ExperimentConfig at_sweep_value(const ExperimentConfig& base, const std::string& field,
                                double value);

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

}  // namespace resim
