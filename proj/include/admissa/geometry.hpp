#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <tuple>
#include <vector>

#include "dataset.hpp"

namespace admissa {

using Point = std::vector<double>;

struct Edge {
    std::size_t a = 0; // a < b
    std::size_t b = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Strict total order on edges: weight, then lexicographic endpoints.
inline bool edge_less(const Edge& x, const Edge& y) {
    return std::tie(x.weight, x.a, x.b) < std::tie(y.weight, y.a, y.b);
}

inline Edge make_edge(std::size_t u, std::size_t v, double w) {
    return u < v ? Edge{u, v, w} : Edge{v, u, w};
}

inline double euclidean(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t r = 0; r < x.size(); ++r) {
        const double diff = x[r] - y[r];
        s += diff * diff;
    }
    return std::sqrt(s);
}

struct Centroids {
    std::vector<Point> clusters; // z_i, indexed by cluster id
    Point global;                // z-bar
};

inline Centroids centroids(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    const std::size_t d = ds.dim();
    const auto k = static_cast<std::size_t>(pi.k());
    Centroids out{std::vector<Point>(k, Point(d, 0.0)), Point(d, 0.0)};
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        auto p = ds.point(i);
        auto& z = out.clusters[static_cast<std::size_t>(pi[i])];
        for (std::size_t r = 0; r < d; ++r) {
            z[r] += p[r];
            out.global[r] += p[r];
        }
        ++counts[static_cast<std::size_t>(pi[i])];
    }
    for (std::size_t c = 0; c < k; ++c)
        for (double& v : out.clusters[c]) v /= static_cast<double>(counts[c]);
    for (double& v : out.global) v /= static_cast<double>(ds.size());
    return out;
}

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x == y) return false;
        if (rank_[x] < rank_[y]) std::swap(x, y);
        parent_[y] = x;
        if (rank_[x] == rank_[y]) ++rank_[x];
        return true;
    }

    /// Component label per element, numbered by smallest member.
    std::vector<int> labels() {
        std::vector<int> out(parent_.size(), -1);
        std::vector<int> root_label(parent_.size(), -1);
        int next = 0;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            const std::size_t r = find(i);
            if (root_label[r] < 0) root_label[r] = next++;
            out[i] = root_label[r];
        }
        return out;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> rank_;
};

struct SpanningTree {
    std::vector<Edge> edges;        // n-1 edges, sorted by edge_less
    std::vector<std::size_t> parent; // parent in the tree rooted at point 0; parent[0] == 0
};

/// Prim's algorithm over the dense matrix. Edges compare by `edge_less`, which
/// makes the minimum spanning tree unique.
inline SpanningTree minimum_spanning_tree(const DistanceMatrix& dm) {
    const std::size_t n = dm.size();
    if (n < 2) throw UsageError("minimum spanning tree needs at least 2 points");
    constexpr double inf = std::numeric_limits<double>::infinity();
    std::vector<char> in_tree(n, 0);
    std::vector<Edge> best(n, Edge{0, 0, inf});
    std::vector<std::size_t> via(n, 0);
    SpanningTree tree;
    tree.parent.assign(n, 0);

    std::size_t current = 0;
    in_tree[0] = 1;
    for (std::size_t step = 1; step < n; ++step) {
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const Edge cand = make_edge(current, v, dm(current, v));
            if (edge_less(cand, best[v])) {
                best[v] = cand;
                via[v] = current;
            }
        }
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (pick == n || edge_less(best[v], best[pick])) pick = v;
        }
        in_tree[pick] = 1;
        tree.parent[pick] = via[pick];
        tree.edges.push_back(best[pick]);
        current = pick;
    }
    std::sort(tree.edges.begin(), tree.edges.end(), edge_less);
    return tree;
}

/// Minimum spanning forest of an explicit edge list (Kruskal).
inline std::vector<Edge> minimum_spanning_forest(std::size_t n, std::vector<Edge> edges) {
    std::sort(edges.begin(), edges.end(), edge_less);
    DisjointSets sets(n);
    std::vector<Edge> out;
    for (const Edge& e : edges)
        if (sets.unite(e.a, e.b)) out.push_back(e);
    return out;
}

/// Degree of interestingness of a link: min of the two mutual neighbor ranks.
/// A link whose endpoints are far down each other's neighbor lists scores high.
inline std::size_t interestingness(const NeighborIndex& nn, std::size_t a, std::size_t b) {
    return std::min(nn.rank(a, b), nn.rank(b, a));
}

struct RankedEdge {
    Edge edge;
    std::size_t di = 0;
};

/// MST edges, most interesting first. Ties: heavier edge first, then lexicographic.
inline std::vector<RankedEdge> rank_by_interestingness(const Dataset& ds, const std::vector<Edge>& edges) {
    std::vector<RankedEdge> out;
    out.reserve(edges.size());
    for (const Edge& e : edges) out.push_back({e, interestingness(ds.neighbors(), e.a, e.b)});
    std::sort(out.begin(), out.end(), [](const RankedEdge& x, const RankedEdge& y) {
        if (x.di != y.di) return x.di > y.di;
        if (x.edge.weight != y.edge.weight) return x.edge.weight > y.edge.weight;
        return std::tie(x.edge.a, x.edge.b) < std::tie(y.edge.a, y.edge.b);
    });
    return out;
}

/// Undirected k-nearest-neighbor graph: edge (a,b) when either lists the other.
inline std::vector<Edge> knn_graph(const Dataset& ds, std::size_t k_size) {
    const std::size_t n = ds.size();
    k_size = std::clamp<std::size_t>(k_size, 1, n - 1);
    std::vector<Edge> edges;
    edges.reserve(n * k_size);
    for (std::size_t a = 0; a < n; ++a)
        for (auto b : ds.neighbors().nearest(a, k_size)) edges.push_back(make_edge(a, b, ds.distance(a, b)));
    std::sort(edges.begin(), edges.end(), edge_less);
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const Edge& x, const Edge& y) { return x.a == y.a && x.b == y.b; }),
                edges.end());
    return edges;
}

} // namespace admissa
