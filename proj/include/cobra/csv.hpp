#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cobra/graph.hpp"
#include "cobra/stats.hpp"

namespace cobra {

inline constexpr int kSchemaVersion = 1;

inline constexpr std::array<std::string_view, 17> kCsvColumns = {
    "experiment", "graph_family", "n",   "d",   "k",   "seed",     "quantity",    "trials", "mean",
    "stderr",     "p50",          "p90", "p99", "max", "timeouts", "bound_value", "extra"};

/// One CSV line. Quantiles are NaN (written empty) for exact and derived rows.
struct ResultRow {
    std::string experiment;
    std::string graph_family;
    std::size_t n = 0;
    std::size_t d = 0;
    std::optional<std::size_t> k;
    std::uint64_t seed = 0;
    std::string quantity;
    std::uint64_t trials = 0;
    double mean = 0.0;
    double std_error = 0.0;
    double p50 = NAN, p90 = NAN, p99 = NAN, max = NAN;
    std::uint64_t timeouts = 0;
    std::optional<double> bound_value;
    std::vector<std::pair<std::string, std::string>> extra;

    ResultRow& add(std::string key, std::string value) {
        extra.emplace_back(std::move(key), std::move(value));
        return *this;
    }
    ResultRow& add(std::string key, double value);
    ResultRow& add(std::string key, bool value) { return add(std::move(key), std::string(value ? "1" : "0")); }
    ResultRow& add(std::string key, const char* value) { return add(std::move(key), std::string(value)); }

    /// Value of an extra field, empty when absent.
    std::string get(std::string_view key) const {
        for (const auto& [k2, v] : extra)
            if (k2 == key) return v;
        return {};
    }

    void set_stats(const SampleStats& s) {
        trials = s.trials;
        mean = s.mean;
        std_error = s.std_error;
        p50 = s.p50;
        p90 = s.p90;
        p99 = s.p99;
        max = s.max;
        timeouts = s.timeouts;
    }

    void set_graph(const Graph& g) {
        graph_family = g.name();
        n = g.num_vertices();
        d = g.max_degree();
    }
};

inline std::string csv_number(double x) {
    if (std::isnan(x)) return {};
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline ResultRow& ResultRow::add(std::string key, double value) {
    return add(std::move(key), csv_number(value));
}

inline std::string csv_escape(std::string_view s) {
    if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

inline void write_csv_header(std::ostream& out) {
    out << "# schema_version=" << kSchemaVersion << '\n';
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) out << (i ? "," : "") << kCsvColumns[i];
    out << '\n';
}

inline void write_csv_row(std::ostream& out, const ResultRow& r) {
    std::string extra;
    for (const auto& [k, v] : r.extra) extra += (extra.empty() ? "" : ";") + k + "=" + v;
    const std::array<std::string, 17> cells = {
        r.experiment,
        r.graph_family,
        std::to_string(r.n),
        std::to_string(r.d),
        r.k ? std::to_string(*r.k) : std::string(),
        std::to_string(r.seed),
        r.quantity,
        std::to_string(r.trials),
        csv_number(r.mean),
        csv_number(r.std_error),
        csv_number(r.p50),
        csv_number(r.p90),
        csv_number(r.p99),
        csv_number(r.max),
        std::to_string(r.timeouts),
        r.bound_value ? csv_number(*r.bound_value) : std::string(),
        extra};
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_escape(cells[i]);
    out << '\n';
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
    write_csv_header(out);
    for (const auto& r : rows) write_csv_row(out, r);
}

}  // namespace cobra
