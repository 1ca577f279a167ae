#pragma once

// Result records and their serialization. One record per
// (sweep value, replication); the CSV header is a pure function of the
// config shape (level count, method, policy count) so downstream plotting
// never guesses positions. Numbers are written with 17 significant digits
// and round-trip losslessly.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace resim {

struct ResultRecord {
    double sweep_value = 0.0;  // NaN when the run has no sweep
    std::string method;
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;             // NaN: no finite upper bound (extinction)
    std::vector<double> per_level;    // S_k/A_k per level; empty for mc
    long long total_cost = 0;
    std::optional<int> extinct_at;
    std::vector<double> policy_freq;  // selection frequency per policy; empty when no policy block
    std::uint64_t seed = 0;           // per-run derived seed
    int replication = 0;
};

// Equality up to NaN (NaN == NaN holds field-wise); used by round-trip tests.
bool records_equal(const ResultRecord& a, const ResultRecord& b);

// format: "csv" (default) or "json".
void export_results(const std::vector<ResultRecord>& records, std::ostream& out,
                    const std::string& format = "csv");
void export_results(const std::vector<ResultRecord>& records, const std::string& path,
                    const std::string& format = "csv");

std::vector<ResultRecord> import_results_csv(std::istream& in);
std::vector<ResultRecord> import_results_csv(const std::string& path);

}  // namespace resim
