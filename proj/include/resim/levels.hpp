#pragma once

// Fixed splitting levels over a reaction coordinate.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace resim {

// Strictly increasing thresholds l_0 < l_1 < ... < l_K. l_0 may be -inf
// (every state qualifies); the top set {g >= l_K} must lie inside the
// model's failure set.
class LevelSchedule {
public:
    static LevelSchedule make(std::vector<double> thresholds) {
        if (thresholds.size() < 2)
            throw std::invalid_argument("LevelSchedule: need at least l_0 < l_1");
        for (std::size_t i = 0; i + 1 < thresholds.size(); ++i) {
            if (!(thresholds[i] < thresholds[i + 1]))
                throw std::invalid_argument("LevelSchedule: thresholds must be strictly increasing");
        }
        if (std::isnan(thresholds.front()) || std::isinf(thresholds.back()))
            throw std::invalid_argument("LevelSchedule: top threshold must be finite");
        return LevelSchedule(std::move(thresholds));
    }

    int level_count() const { return static_cast<int>(thresholds_.size()) - 1; }  // K

    // Threshold an attempt at level k must reach: l_{k+1}.
    double target(int k) const { return thresholds_.at(static_cast<std::size_t>(k) + 1); }

    double threshold(int k) const { return thresholds_.at(static_cast<std::size_t>(k)); }

    double failure_threshold() const { return thresholds_.back(); }

    const std::vector<double>& thresholds() const { return thresholds_; }

    bool operator==(const LevelSchedule&) const = default;

private:
    explicit LevelSchedule(std::vector<double> t) : thresholds_(std::move(t)) {}
    std::vector<double> thresholds_;
};

}  // namespace resim
