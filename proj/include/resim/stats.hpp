#pragma once

// Accuracy accounting shared by the estimators: the per-level relative
// variance proxy and delta-method / binomial confidence intervals.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace resim {

// Relative variance proxy sum_k (1 - p_k) / (p_k * M_k), ignoring
// inter-stage dependence introduced by resampling. M_k is the attempt
// count of level k. Returns nullopt when any p_k is zero (extinction:
// the proxy is undefined).
inline std::optional<double> rel_var_proxy(
    std::span<const std::pair<double, long long>> per_level) {
    double sum = 0.0;
    for (const auto& [p, m] : per_level) {
        if (!(p > 0.0)) return std::nullopt;
        sum += (1.0 - p) / (p * static_cast<double>(m));
    }
    return sum;
}

inline std::optional<double> rel_var_proxy(
    std::initializer_list<std::pair<double, long long>> per_level) {
    return rel_var_proxy(std::span<const std::pair<double, long long>>(per_level.begin(),
                                                                       per_level.size()));
}

struct ConfidenceInterval {
    double low = 0.0;
    double high = 0.0;
    bool upper_unknown = false;  // extinction: no finite upper bound available
};

// Delta-method interval p * (1 -+ z * sqrt(rel_var)), clamped to [0, 1].
// An extinct estimate (p = 0, proxy undefined) gets [0, unknown].
inline ConfidenceInterval smc_confidence(double p_hat, std::optional<double> rel_var,
                                         double z = 1.96) {
    if (!(p_hat > 0.0) || !rel_var) return {0.0, std::numeric_limits<double>::quiet_NaN(), true};
    const double half = z * std::sqrt(*rel_var);
    return {std::clamp(p_hat * (1.0 - half), 0.0, 1.0),
            std::clamp(p_hat * (1.0 + half), 0.0, 1.0), false};
}

// Binomial (Wald) interval; p = 0 falls back to the rule of three [0, 3/N].
inline ConfidenceInterval mc_confidence(double p_hat, long long n, double z = 1.96) {
    if (!(p_hat > 0.0)) return {0.0, std::min(1.0, 3.0 / static_cast<double>(n)), false};
    const double se = std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n));
    return {std::clamp(p_hat - z * se, 0.0, 1.0), std::clamp(p_hat + z * se, 0.0, 1.0), false};
}

// Mean / variance accumulator (Welford).
class RunningStats {
public:
    void add(double x) {
        ++n_;
        const double d = x - mean_;
        mean_ += d / static_cast<double>(n_);
        m2_ += d * (x - mean_);
    }
    long long count() const { return n_; }
    double mean() const { return mean_; }
    double variance() const { return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0; }
    double stddev() const { return std::sqrt(variance()); }
    double stderr_mean() const {
        return n_ > 0 ? stddev() / std::sqrt(static_cast<double>(n_)) : 0.0;
    }

private:
    long long n_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

}  // namespace resim
