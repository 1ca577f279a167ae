#include "resim/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace resim {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool double_equal(double a, double b) {
    return (std::isnan(a) && std::isnan(b)) || a == b;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

bool records_equal(const ResultRecord& a, const ResultRecord& b) {
    if (!double_equal(a.sweep_value, b.sweep_value) || a.method != b.method ||
        !double_equal(a.p_hat, b.p_hat) || !double_equal(a.ci_low, b.ci_low) ||
        !double_equal(a.ci_high, b.ci_high) || a.total_cost != b.total_cost ||
        a.extinct_at != b.extinct_at || a.seed != b.seed || a.replication != b.replication)
        return false;
    if (a.per_level.size() != b.per_level.size() || a.policy_freq.size() != b.policy_freq.size())
        return false;
    for (std::size_t i = 0; i < a.per_level.size(); ++i)
        if (!double_equal(a.per_level[i], b.per_level[i])) return false;
    for (std::size_t i = 0; i < a.policy_freq.size(); ++i)
        if (!double_equal(a.policy_freq[i], b.policy_freq[i])) return false;
    return true;
}

void export_results(const std::vector<ResultRecord>& records, std::ostream& out,
                    const std::string& format) {
    if (records.empty()) throw std::invalid_argument("export_results: no records");

    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : records) {
            nlohmann::json j;
            j["sweep_value"] = r.sweep_value;
            j["method"] = r.method;
            j["p_hat"] = r.p_hat;
            j["ci_low"] = r.ci_low;
            j["ci_high"] = r.ci_high;
            j["per_level"] = r.per_level;
            j["total_cost"] = r.total_cost;
            if (r.extinct_at) j["extinct_at"] = *r.extinct_at;
            j["policy_freq"] = r.policy_freq;
            j["seed"] = r.seed;
            j["replication"] = r.replication;
            arr.push_back(std::move(j));
        }
        out << arr.dump(2) << "\n";
        return;
    }
    if (format != "csv") throw std::invalid_argument("export_results: unknown format " + format);

    const std::size_t level_cols = records.front().per_level.size();
    const std::size_t policy_cols = records.front().policy_freq.size();
    for (const auto& r : records) {
        if (r.per_level.size() != level_cols || r.policy_freq.size() != policy_cols)
            throw std::invalid_argument("export_results: records have mixed shapes");
    }

    out << "sweep_value,method,p_hat,ci_low,ci_high";
    for (std::size_t k = 0; k < level_cols; ++k) out << ",p_level_" << k;
    out << ",total_cost,extinct_at";
    for (std::size_t i = 0; i < policy_cols; ++i) out << ",policy_freq_" << i;
    out << ",seed,replication\n";

    for (const auto& r : records) {
        out << fmt_double(r.sweep_value) << ',' << r.method << ',' << fmt_double(r.p_hat) << ','
            << fmt_double(r.ci_low) << ',' << fmt_double(r.ci_high);
        for (double v : r.per_level) out << ',' << fmt_double(v);
        out << ',' << r.total_cost << ',';
        if (r.extinct_at) out << *r.extinct_at;
        for (double v : r.policy_freq) out << ',' << fmt_double(v);
        out << ',' << r.seed << ',' << r.replication << "\n";
    }
}

void export_results(const std::vector<ResultRecord>& records, const std::string& path,
                    const std::string& format) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_results: cannot open " + path);
    export_results(records, out, format);
    if (!out) throw std::runtime_error("export_results: write failure on " + path);
}

std::vector<ResultRecord> import_results_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("import_results: empty input");
    const auto header = split_csv_line(line);

    std::size_t level_cols = 0;
    std::size_t policy_cols = 0;
    for (const auto& col : header) {
        if (col.rfind("p_level_", 0) == 0) ++level_cols;
        if (col.rfind("policy_freq_", 0) == 0) ++policy_cols;
    }
    const std::size_t expected = 5 + level_cols + 2 + policy_cols + 2;
    if (header.size() != expected) throw std::runtime_error("import_results: malformed header");

    std::vector<ResultRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != expected) throw std::runtime_error("import_results: malformed row");
        ResultRecord r;
        std::size_t i = 0;
        r.sweep_value = std::strtod(cells[i++].c_str(), nullptr);
        r.method = cells[i++];
        r.p_hat = std::strtod(cells[i++].c_str(), nullptr);
        r.ci_low = std::strtod(cells[i++].c_str(), nullptr);
        r.ci_high = std::strtod(cells[i++].c_str(), nullptr);
        for (std::size_t k = 0; k < level_cols; ++k)
            r.per_level.push_back(std::strtod(cells[i++].c_str(), nullptr));
        r.total_cost = std::stoll(cells[i++]);
        if (!cells[i].empty()) r.extinct_at = std::stoi(cells[i]);
        ++i;
        for (std::size_t p = 0; p < policy_cols; ++p)
            r.policy_freq.push_back(std::strtod(cells[i++].c_str(), nullptr));
        r.seed = std::stoull(cells[i++]);
        r.replication = std::stoi(cells[i++]);
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<ResultRecord> import_results_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("import_results: cannot open " + path);
    return import_results_csv(in);
}

}  // namespace resim
