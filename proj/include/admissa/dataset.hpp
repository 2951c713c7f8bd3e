#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace admissa {

/// Hard assignment of every point to exactly one of k non-empty clusters.
///
/// Cluster ids are kept as given; `canonical()` relabels clusters in order of
/// their smallest member, which makes two partitions with the same grouping
/// compare equal.
class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> assignment) : assignment_(std::move(assignment)) {
        if (assignment_.empty()) throw UsageError("partition must cover at least one point");
        int top = -1;
        for (int c : assignment_) {
            if (c < 0) throw UsageError("negative cluster id in partition");
            top = std::max(top, c);
        }
        k_ = top + 1;
        std::vector<char> seen(static_cast<std::size_t>(k_), 0);
        for (int c : assignment_) seen[static_cast<std::size_t>(c)] = 1;
        if (std::find(seen.begin(), seen.end(), 0) != seen.end())
            throw UsageError("partition has an empty cluster id");
    }

    /// Densify arbitrary integer labels by order of first appearance.
    static Partition from_labels(std::span<const int> labels) {
        std::unordered_map<int, int> remap;
        std::vector<int> out;
        out.reserve(labels.size());
        for (int l : labels) {
            auto [it, inserted] = remap.try_emplace(l, static_cast<int>(remap.size()));
            out.push_back(it->second);
        }
        return Partition(std::move(out));
    }

    static Partition single_cluster(std::size_t n) { return Partition(std::vector<int>(n, 0)); }

    static Partition singletons(std::size_t n) {
        std::vector<int> a(n);
        std::iota(a.begin(), a.end(), 0);
        return Partition(std::move(a));
    }

    std::size_t size() const { return assignment_.size(); }
    int k() const { return k_; }
    int operator[](std::size_t i) const { return assignment_[i]; }
    std::span<const int> assignment() const { return assignment_; }

    std::vector<std::size_t> cluster_sizes() const {
        std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
        for (int c : assignment_) ++sizes[static_cast<std::size_t>(c)];
        return sizes;
    }

    /// Members of each cluster, ascending by point index.
    std::vector<std::vector<std::size_t>> clusters() const {
        std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(k_));
        for (std::size_t i = 0; i < assignment_.size(); ++i)
            out[static_cast<std::size_t>(assignment_[i])].push_back(i);
        return out;
    }

    Partition canonical() const { return from_labels(assignment_); }

    bool same_grouping(const Partition& other) const {
        return size() == other.size() && k_ == other.k_ &&
               canonical().assignment_ == other.canonical().assignment_;
    }

    bool operator==(const Partition&) const = default;

private:
    std::vector<int> assignment_;
    int k_ = 0;
};

/// Symmetric n x n Euclidean distance table, stored densely.
class DistanceMatrix {
public:
    DistanceMatrix() = default;
    explicit DistanceMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double operator()(std::size_t a, std::size_t b) const { return data_[a * n_ + b]; }
    double& at(std::size_t a, std::size_t b) { return data_[a * n_ + b]; }
    std::span<const double> row(std::size_t a) const { return {data_.data() + a * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

/// For every point, all other points ordered by ascending distance (ties by index).
class NeighborIndex {
public:
    NeighborIndex() = default;

    explicit NeighborIndex(const DistanceMatrix& dm) : n_(dm.size()) {
        if (n_ < 2) return;
        const std::size_t w = n_ - 1;
        order_.resize(n_ * w);
        std::vector<std::uint32_t> buf;
        for (std::size_t a = 0; a < n_; ++a) {
            buf.clear();
            for (std::size_t b = 0; b < n_; ++b)
                if (b != a) buf.push_back(static_cast<std::uint32_t>(b));
            auto row = dm.row(a);
            std::sort(buf.begin(), buf.end(), [&](std::uint32_t x, std::uint32_t y) {
                return row[x] != row[y] ? row[x] < row[y] : x < y;
            });
            std::copy(buf.begin(), buf.end(), order_.begin() + static_cast<std::ptrdiff_t>(a * w));
        }
    }

    std::size_t size() const { return n_; }

    /// Neighbors of `a`, nearest first. Length n-1.
    std::span<const std::uint32_t> of(std::size_t a) const {
        return {order_.data() + a * (n_ - 1), n_ - 1};
    }

    /// The h nearest neighbors of `a` (h clamped to n-1).
    std::span<const std::uint32_t> nearest(std::size_t a, std::size_t h) const {
        return of(a).first(std::min(h, n_ - 1));
    }

    /// 1-based position of `b` in the neighbor list of `a`.
    std::size_t rank(std::size_t a, std::size_t b) const {
        auto row = of(a);
        auto it = std::find(row.begin(), row.end(), static_cast<std::uint32_t>(b));
        if (it == row.end()) throw InvariantError("rank(): point is not a neighbor of itself");
        return static_cast<std::size_t>(it - row.begin()) + 1;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint32_t> order_;
};

inline DistanceMatrix pairwise_distances(std::span<const double> flat, std::size_t n, std::size_t d) {
    DistanceMatrix dm(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            double s = 0.0;
            for (std::size_t r = 0; r < d; ++r) {
                const double diff = flat[a * d + r] - flat[b * d + r];
                s += diff * diff;
            }
            const double dist = std::sqrt(s);
            dm.at(a, b) = dist;
            dm.at(b, a) = dist;
        }
    }
    return dm;
}

inline NeighborIndex knn_index(const DistanceMatrix& dm) { return NeighborIndex(dm); }

/// Points in d-dimensional space with optional ground truth.
///
/// The distance matrix and neighbor index are built once at construction and
/// never change, so a Dataset can be shared read-only across threads.
class Dataset {
public:
    Dataset(std::string name, std::vector<double> flat_points, std::size_t dim,
            std::optional<std::vector<int>> labels = std::nullopt,
            std::vector<std::string> label_names = {})
        : name_(std::move(name)), dim_(dim), points_(std::move(flat_points)),
          label_names_(std::move(label_names)) {
        if (dim_ == 0) throw DataError("dataset dimensionality must be at least 1");
        if (points_.size() % dim_ != 0) throw DataError("point buffer is not a multiple of the dimension");
        n_ = points_.size() / dim_;
        if (n_ < 2) throw DataError("dataset needs at least 2 points");
        for (double v : points_)
            if (!std::isfinite(v)) throw DataError("dataset contains a non-finite coordinate");
        if (labels) {
            if (labels->size() != n_) throw DataError("label count does not match point count");
            for (int l : *labels)
                if (l < 0) throw DataError("labels must be non-negative");
            truth_ = Partition(std::move(*labels));
        }
        distances_ = pairwise_distances(points_, n_, dim_);
        neighbors_ = NeighborIndex(distances_);
    }

    /// Convenience for small hand-written fixtures.
    static Dataset from_rows(std::string name, const std::vector<std::vector<double>>& rows,
                             std::optional<std::vector<int>> labels = std::nullopt) {
        if (rows.empty()) throw DataError("dataset has no rows");
        const std::size_t d = rows.front().size();
        std::vector<double> flat;
        flat.reserve(rows.size() * d);
        for (const auto& r : rows) {
            if (r.size() != d) throw DataError("inconsistent arity");
            flat.insert(flat.end(), r.begin(), r.end());
        }
        return Dataset(std::move(name), std::move(flat), d, std::move(labels));
    }

    const std::string& name() const { return name_; }
    std::size_t size() const { return n_; }
    std::size_t dim() const { return dim_; }
    std::span<const double> point(std::size_t i) const { return {points_.data() + i * dim_, dim_}; }
    std::span<const double> flat() const { return points_; }

    bool has_labels() const { return truth_.has_value(); }
    const std::optional<Partition>& truth() const { return truth_; }
    int k_star() const { return truth_ ? truth_->k() : 0; }
    const std::vector<std::string>& label_names() const { return label_names_; }

    const DistanceMatrix& distances() const { return distances_; }
    const NeighborIndex& neighbors() const { return neighbors_; }
    double distance(std::size_t a, std::size_t b) const { return distances_(a, b); }

    Dataset with_labels(Partition labels) const {
        auto names = label_names_;
        std::vector<int> a(labels.assignment().begin(), labels.assignment().end());
        return Dataset(name_, points_, dim_, std::move(a), std::move(names));
    }

    Dataset renamed(std::string name) const {
        Dataset copy = *this;
        copy.name_ = std::move(name);
        return copy;
    }

private:
    std::string name_;
    std::size_t dim_ = 0;
    std::size_t n_ = 0;
    std::vector<double> points_;
    std::optional<Partition> truth_;
    std::vector<std::string> label_names_;
    DistanceMatrix distances_;
    NeighborIndex neighbors_;
};

inline void check_compatible(const Dataset& ds, const Partition& pi) {
    if (pi.size() != ds.size())
        throw UsageError("partition covers " + std::to_string(pi.size()) + " points, dataset has " +
                         std::to_string(ds.size()));
}

} // namespace admissa
