#include "resim/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace resim {

namespace {

using json = nlohmann::json;

double get_number(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("config field '" + key + "' must be a number");
    return j.at(key).get<double>();
}

long long get_integer(const json& j, const std::string& key, long long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer())
        throw ConfigError("config field '" + key + "' must be an integer");
    return j.at(key).get<long long>();
}

bool get_boolean(const json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) throw ConfigError("config field '" + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

}  // namespace

const std::vector<std::string>& sweepable_fields() {
    static const std::vector<std::string> fields = {"lambda", "eta0",       "nu",    "phi",
                                                    "rho",    "mu_f",       "sigma_f", "delta_crit",
                                                    "t_tar",  "c_t"};
    return fields;
}

ExperimentConfig at_sweep_value(const ExperimentConfig& base, const std::string& field,
                                double value) {
    ExperimentConfig c = base;
    if (field == "lambda") c.params.lambda = value;
    else if (field == "eta0") c.params.eta0 = value;
    else if (field == "nu") c.params.nu = value;
    else if (field == "phi") c.params.phi = value;
    else if (field == "rho") c.params.rho = value;
    else if (field == "mu_f") c.params.mu_f = value;
    else if (field == "sigma_f") c.params.sigma_f = value;
    else if (field == "delta_crit") c.params.delta_crit = value;
    else if (field == "t_tar") c.params.t_tar = value;
    else if (field == "c_t") c.budget.total_budget = static_cast<long long>(value);
    else throw ConfigError("sweep field '" + field + "' is not sweepable");
    return c;
}

void ExperimentConfig::validate() const {
    if (method != "mc" && method != "smc")
        throw ConfigError("config field 'method' must be \"mc\" or \"smc\"");
    if (replications < 1) throw ConfigError("config field 'replications' must be >= 1");
    try {
        params.validate(policy ? policy->policy_count : 1);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    try {
        budget.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    try {
        LevelSchedule::make(levels);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config field 'levels': ") + e.what());
    }
    if (sweep) {
        const auto& fields = sweepable_fields();
        if (std::find(fields.begin(), fields.end(), sweep->field) == fields.end())
            throw ConfigError("config field 'sweep.field': '" + sweep->field +
                              "' is not sweepable");
        if (sweep->values.empty()) throw ConfigError("config field 'sweep.values' must be nonempty");
        for (double v : sweep->values) {
            try {
                at_sweep_value(*this, sweep->field, v)
                    .params.validate(policy ? policy->policy_count : 1);
            } catch (const std::invalid_argument& e) {
                std::ostringstream msg;
                msg << "sweep value " << v << " for '" << sweep->field << "': " << e.what();
                throw ConfigError(msg.str());
            }
        }
    }
    if (policy) {
        if (method != "smc") throw ConfigError("config block 'policy' requires method \"smc\"");
        if (policy->n_prime < 1) throw ConfigError("config field 'policy.n_prime' must be >= 1");
        if (policy->hosted_level < 1 ||
            policy->hosted_level > static_cast<int>(levels.size()) - 2)
            throw ConfigError("config field 'policy.hosted_level' must name an interior level");
        try {
            policy_set().validate(params.grid.dt);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config block 'policy': ") + e.what());
        }
    }
}

PolicySet ExperimentConfig::policy_set() const {
    if (!policy) throw ConfigError("config has no 'policy' block");
    PolicySet set;
    set.nu0 = params.nu;
    set.rho_prime = policy->rho_prime;
    set.size = policy->policy_count;
    set.kappa = policy->kappa;
    set.hosted_level = policy->hosted_level;
    return set;
}

ExperimentConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse failure: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");

    ExperimentConfig c;
    c.params.lambda = get_number(doc, "lambda", c.params.lambda);
    c.params.eta0 = get_number(doc, "eta0", c.params.eta0);
    c.params.nu = get_number(doc, "nu", c.params.nu);
    c.params.phi = get_number(doc, "phi", c.params.phi);
    c.params.rho = get_number(doc, "rho", c.params.rho);
    c.params.mu_f = get_number(doc, "mu_f", c.params.mu_f);
    c.params.sigma_f = get_number(doc, "sigma_f", c.params.sigma_f);
    c.params.delta_crit = get_number(doc, "delta_crit", c.params.delta_crit);
    c.params.t_tar = get_number(doc, "t_tar", c.params.t_tar);
    const double dt = get_number(doc, "dt", c.params.grid.dt);
    const double horizon = get_number(doc, "horizon", c.params.grid.horizon);
    try {
        c.params.grid = TimeGrid::make(dt, horizon);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    if (doc.contains("method")) {
        if (!doc.at("method").is_string())
            throw ConfigError("config field 'method' must be a string");
        c.method = doc.at("method").get<std::string>();
    }
    c.budget.total_budget = get_integer(doc, "c_t", c.budget.total_budget);
    c.budget.s_tar = static_cast<int>(get_integer(doc, "s_tar", c.budget.s_tar));
    c.budget.a_tar = static_cast<int>(get_integer(doc, "a_tar", c.budget.a_tar));

    if (doc.contains("levels")) {
        if (!doc.at("levels").is_array())
            throw ConfigError("config field 'levels' must be an array of numbers");
        c.levels = doc.at("levels").get<std::vector<double>>();
    }
    if (doc.contains("seed")) {
        if (!doc.at("seed").is_number_integer())
            throw ConfigError("config field 'seed' must be an integer");
        c.seed = doc.at("seed").get<std::uint64_t>();
    }
    c.replications = static_cast<int>(get_integer(doc, "replications", c.replications));

    if (doc.contains("sweep")) {
        const auto& s = doc.at("sweep");
        if (!s.is_object() || !s.contains("field") || !s.contains("values"))
            throw ConfigError("config block 'sweep' needs 'field' and 'values'");
        SweepSpec spec;
        spec.field = s.at("field").get<std::string>();
        if (!s.at("values").is_array())
            throw ConfigError("config field 'sweep.values' must be an array");
        spec.values = s.at("values").get<std::vector<double>>();
        c.sweep = std::move(spec);
    }

    if (doc.contains("policy")) {
        const auto& p = doc.at("policy");
        if (!p.is_object()) throw ConfigError("config block 'policy' must be an object");
        PolicyBlock block;
        if (p.contains("nu0")) {
            const double nu0 = p.at("nu0").get<double>();
            if (doc.contains("nu") && nu0 != c.params.nu)
                throw ConfigError("config field 'policy.nu0' conflicts with 'nu'");
            c.params.nu = nu0;
        }
        block.rho_prime = get_number(p, "rho_prime", block.rho_prime);
        block.kappa = get_number(p, "kappa", block.kappa);
        block.policy_count = static_cast<int>(get_integer(p, "policy_count", block.policy_count));
        block.n_prime = static_cast<int>(get_integer(p, "n_prime", block.n_prime));
        block.hosted_level = static_cast<int>(get_integer(p, "hosted_level", block.hosted_level));
        block.charge_lookahead = get_boolean(p, "charge_lookahead", block.charge_lookahead);
        c.params.rho_prime = block.rho_prime;
        c.policy = block;
    }

    c.validate();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace resim
