#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <span>
#include <vector>

#include "criteria.hpp"

namespace admissa {

/// Objective values turned into "smaller is better" by negating maximized ones.
inline std::vector<double> to_minimization(std::span<const double> values,
                                           const std::vector<criteria::ObjectiveSpec>& specs) {
    if (values.size() != specs.size()) throw UsageError("objective vector length does not match spec list");
    std::vector<double> out(values.begin(), values.end());
    for (std::size_t i = 0; i < out.size(); ++i)
        if (specs[i].direction() == criteria::Direction::Maximize) out[i] = -out[i];
    return out;
}

/// u dominates v, both already in minimization form. Comparisons use the shared
/// strictness tolerance, so near-ties count as ties.
inline bool dominates_min(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw UsageError("dominance between vectors of different length");
    bool strict = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (criteria::strictly_better(v[i], u[i], criteria::Direction::Minimize)) return false;
        if (criteria::strictly_better(u[i], v[i], criteria::Direction::Minimize)) strict = true;
    }
    return strict;
}

/// Fast non-dominated sort; returns fronts of indices, each in ascending order.
inline std::vector<std::vector<std::size_t>> nondominated_fronts(const std::vector<std::vector<double>>& pts) {
    const std::size_t m = pts.size();
    std::vector<std::vector<std::size_t>> dominated(m);
    std::vector<std::size_t> counter(m, 0);
    std::vector<std::vector<std::size_t>> fronts;
    std::vector<std::size_t> current;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            if (dominates_min(pts[i], pts[j])) {
                dominated[i].push_back(j);
                ++counter[j];
            } else if (dominates_min(pts[j], pts[i])) {
                dominated[j].push_back(i);
                ++counter[i];
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i)
        if (counter[i] == 0) current.push_back(i);
    while (!current.empty()) {
        std::vector<std::size_t> next;
        for (auto i : current)
            for (auto j : dominated[i])
                if (--counter[j] == 0) next.push_back(j);
        std::sort(next.begin(), next.end());
        fronts.push_back(std::move(current));
        current = std::move(next);
    }
    return fronts;
}

/// Crowding distance of each member of one front (same order as `front`).
inline std::vector<double> crowding_distance(const std::vector<std::vector<double>>& pts,
                                             const std::vector<std::size_t>& front) {
    const std::size_t m = front.size();
    std::vector<double> dist(m, 0.0);
    if (m == 0) return dist;
    const std::size_t z = pts[front[0]].size();
    std::vector<std::size_t> order(m);
    for (std::size_t obj = 0; obj < z; ++obj) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t x, std::size_t y) { return pts[front[x]][obj] < pts[front[y]][obj]; });
        const double lo = pts[front[order.front()]][obj];
        const double hi = pts[front[order.back()]][obj];
        dist[order.front()] = std::numeric_limits<double>::infinity();
        dist[order.back()] = std::numeric_limits<double>::infinity();
        if (hi - lo <= 0.0) continue;
        for (std::size_t r = 1; r + 1 < m; ++r)
            dist[order[r]] += (pts[front[order[r + 1]]][obj] - pts[front[order[r - 1]]][obj]) / (hi - lo);
    }
    return dist;
}

} // namespace admissa
