#pragma once

#include <admissa/dataset.hpp>
#include <admissa/rng.hpp>

#include "oracles.hpp"

namespace fixtures {

// p0=(0,0) p1=(0,1) p2=(10,0) p3=(10,1); truth {p0,p1} {p2,p3}
inline admissa::Dataset fix4() {
    return admissa::Dataset::from_rows("fix4", {{0, 0}, {0, 1}, {10, 0}, {10, 1}}, std::vector<int>{0, 0, 1, 1});
}

inline oracle::Pts fix4_points() { return {{0, 0}, {0, 1}, {10, 0}, {10, 1}}; }

inline admissa::Partition fix4_truth() { return admissa::Partition({0, 0, 1, 1}); }

struct Instance {
    oracle::Pts points;
    oracle::Labels labels;

    admissa::Dataset dataset() const {
        std::vector<double> flat;
        for (const auto& p : points) flat.insert(flat.end(), p.begin(), p.end());
        return admissa::Dataset("random", flat, points[0].size());
    }
    admissa::Partition partition() const { return admissa::Partition(labels); }
};

/// Random points in general position plus a random partition with every
/// cluster non-empty.
inline Instance random_instance(admissa::Rng& rng, std::size_t n, std::size_t d, int k) {
    Instance in;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> p(d);
        for (double& v : p) v = rng.uniform(-5.0, 5.0);
        in.points.push_back(p);
    }
    in.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i) in.labels[i] = i < static_cast<std::size_t>(k) ? static_cast<int>(i)
                                                                                      : static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    for (std::size_t i = n; i > 1; --i) std::swap(in.labels[i - 1], in.labels[rng.below(i)]);
    // densify so ids follow first appearance
    const auto dense = admissa::Partition::from_labels(in.labels);
    in.labels.assign(dense.assignment().begin(), dense.assignment().end());
    return in;
}

} // namespace fixtures
