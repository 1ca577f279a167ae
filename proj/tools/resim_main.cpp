// resim: rare-event resilience estimation for the stressed service queue.
//
// Runs the configured estimator over a parameter sweep and writes one
// result row per (sweep value, replication). Results go to --out or to
// stdout; progress and diagnostics go to stderr only.

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "resim/config.hpp"
#include "resim/experiment.hpp"
#include "resim/results.hpp"

namespace {

resim::SweepSpec parse_sweep_flag(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size())
        throw resim::ConfigError("--sweep expects <field>=<v1,v2,...>");
    resim::SweepSpec spec;
    spec.field = text.substr(0, eq);
    std::istringstream values(text.substr(eq + 1));
    std::string cell;
    while (std::getline(values, cell, ',')) {
        try {
            spec.values.push_back(std::stod(cell));
        } catch (const std::exception&) {
            throw resim::ConfigError("--sweep value '" + cell + "' is not a number");
        }
    }
    if (spec.values.empty()) throw resim::ConfigError("--sweep needs at least one value");
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rare-event resilience estimation (splitting / naive MC)"};

    std::string config_path;
    std::string method;
    std::string sweep_flag;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 0;
    long long budget = 0;
    int replications = 0;
    int policy_count = 0;

    app.add_option("--config", config_path, "JSON config file (defaults used when omitted)");
    app.add_option("--method", method, "estimator: mc or smc");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--budget", budget, "total step budget C_T");
    app.add_option("--sweep", sweep_flag, "sweep spec, e.g. lambda=0.5,0.6,0.7");
    app.add_option("--out", out_path, "results file (stdout when omitted)");
    app.add_option("--replications", replications, "replications per sweep point");
    app.add_option("--policy-count", policy_count, "size of the recovery policy set");
    app.add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI11_PARSE(app, argc, argv);

    try {
        resim::ExperimentConfig config;
        if (!config_path.empty()) config = resim::load_config(config_path);

        if (app.count("--method")) config.method = method;
        if (app.count("--seed")) config.seed = seed;
        if (app.count("--budget")) config.budget.total_budget = budget;
        if (app.count("--sweep")) config.sweep = parse_sweep_flag(sweep_flag);
        if (app.count("--replications")) config.replications = replications;
        if (app.count("--policy-count")) {
            if (!config.policy) config.policy = resim::PolicyBlock{};
            config.policy->policy_count = policy_count;
            config.params.rho_prime = config.policy->rho_prime;
        }
        config.validate();

        const auto records = resim::run_experiment(config, [](const resim::ResultRecord& r) {
            std::cerr << "point " << r.sweep_value << " rep " << r.replication << " " << r.method
                      << " p_hat=" << r.p_hat << " cost=" << r.total_cost << "\n";
        });

        if (out_path.empty()) {
            resim::export_results(records, std::cout, format);
        } else {
            resim::export_results(records, out_path, format);
            std::cerr << "wrote " << records.size() << " records to " << out_path << "\n";
        }
    } catch (const resim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
