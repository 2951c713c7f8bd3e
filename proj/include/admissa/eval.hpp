#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "dataset.hpp"

namespace admissa::eval {

/// Adjusted Rand index from the contingency table. All pair counts are exact
/// integers held in doubles, so the result is independent of summation order.
inline double ari(const Partition& pa, const Partition& pb) {
    if (pa.size() != pb.size()) throw UsageError("ari: partitions cover different numbers of points");
    const std::size_t n = pa.size();
    const auto ka = static_cast<std::size_t>(pa.k());
    const auto kb = static_cast<std::size_t>(pb.k());
    auto c2 = [](double x) { return x * (x - 1.0) / 2.0; };

    std::vector<double> rows(ka, 0.0), cols(kb, 0.0);
    double index = 0.0;
    if (ka * kb <= 4 * n + 64) {
        std::vector<double> table(ka * kb, 0.0);
        for (std::size_t i = 0; i < n; ++i) table[static_cast<std::size_t>(pa[i]) * kb + static_cast<std::size_t>(pb[i])] += 1.0;
        for (double v : table) index += c2(v);
    } else {
        std::unordered_map<std::size_t, double> table;
        for (std::size_t i = 0; i < n; ++i) table[static_cast<std::size_t>(pa[i]) * kb + static_cast<std::size_t>(pb[i])] += 1.0;
        for (const auto& kv : table) index += c2(kv.second);
    }
    for (std::size_t i = 0; i < n; ++i) {
        rows[static_cast<std::size_t>(pa[i])] += 1.0;
        cols[static_cast<std::size_t>(pb[i])] += 1.0;
    }
    double sa = 0.0, sb = 0.0;
    for (double v : rows) sa += c2(v);
    for (double v : cols) sb += c2(v);
    const double expected = sa * sb / c2(static_cast<double>(n));
    const double max_index = (sa + sb) / 2.0;
    if (max_index == expected) return 1.0;
    return (index - expected) / (max_index - expected);
}

/// Highest ARI against the truth over a set of candidate partitions.
inline double best_ari(std::span<const Partition> front, const Partition& truth) {
    if (front.empty()) throw UsageError("best_ari: empty front");
    double best = -1.0;
    for (const auto& p : front) best = std::max(best, ari(p, truth));
    return best;
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0; // population standard deviation
};

inline MeanStd aggregate_runs(std::vector<double> values) {
    if (values.empty()) throw UsageError("aggregate_runs: empty list");
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / static_cast<double>(values.size()))};
}

/// Box-plot data: quartiles by linear interpolation (type 7), whiskers at the
/// most extreme values within 1.5 IQR of the box.
struct BoxStats {
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
    double whisker_low = 0.0, whisker_high = 0.0;
    std::vector<double> outliers;
    std::size_t count = 0;
};

inline double quantile_sorted(std::span<const double> sorted, double q) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

inline BoxStats box_stats(std::vector<double> values) {
    if (values.empty()) throw UsageError("box_stats: empty list");
    std::sort(values.begin(), values.end());
    BoxStats b;
    b.count = values.size();
    b.min = values.front();
    b.max = values.back();
    b.q1 = quantile_sorted(values, 0.25);
    b.median = quantile_sorted(values, 0.5);
    b.q3 = quantile_sorted(values, 0.75);
    const double iqr = b.q3 - b.q1;
    const double lo_fence = b.q1 - 1.5 * iqr;
    const double hi_fence = b.q3 + 1.5 * iqr;
    b.whisker_low = b.max;
    b.whisker_high = b.min;
    for (double v : values) {
        if (v < lo_fence || v > hi_fence) {
            b.outliers.push_back(v);
            continue;
        }
        b.whisker_low = std::min(b.whisker_low, v);
        b.whisker_high = std::max(b.whisker_high, v);
    }
    return b;
}

/// One (dataset, initializer, objective pair) cell aggregated over seeded runs.
struct RunSummary {
    std::string dataset;
    std::string group;
    std::string initializer;
    std::string pair;
    std::vector<double> best_aris; // run order
    std::vector<bool> truth_dominated;
    double mean = 0.0;
    double std = 0.0;
    double truth_dominated_freq = 0.0;
};

inline RunSummary summarize_runs(std::string dataset, std::string group, std::string initializer, std::string pair,
                                 std::vector<double> best_aris, std::vector<bool> truth_dominated) {
    if (best_aris.size() != truth_dominated.size()) throw UsageError("summarize_runs: length mismatch");
    const auto ms = aggregate_runs(best_aris);
    std::size_t dom = 0;
    for (bool b : truth_dominated) dom += b;
    RunSummary r{std::move(dataset), std::move(group), std::move(initializer), std::move(pair),
                 std::move(best_aris), std::move(truth_dominated), ms.mean, ms.std, 0.0};
    r.truth_dominated_freq = static_cast<double>(dom) / static_cast<double>(r.truth_dominated.size());
    return r;
}

} // namespace admissa::eval
