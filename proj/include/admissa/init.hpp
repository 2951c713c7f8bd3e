#pragma once

// The five initialization algorithms and the population protocol that runs each
// of them across k = 2 .. 2k*.

#include <algorithm>
#include <array>
#include <iterator>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "geometry.hpp"
#include "rng.hpp"

namespace admissa::init {

namespace detail {

inline void require_k_range(const Dataset& ds, int k, int lo, const char* who) {
    if (k < lo) throw UsageError(std::string(who) + ": k must be at least " + std::to_string(lo));
    if (static_cast<std::size_t>(k) > ds.size())
        throw UsageError(std::string(who) + ": k = " + std::to_string(k) + " exceeds n = " + std::to_string(ds.size()));
}

inline double sq_dist(std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t r = 0; r < x.size(); ++r) s += (x[r] - y[r]) * (x[r] - y[r]);
    return s;
}

} // namespace detail

// ---------------------------------------------------------------- k-means

struct KMeansOptions {
    int max_iter = 100;
    int n_init = 10; // restarts; the lowest-TWCV run wins, earliest on ties
};

struct KMeansRun {
    Partition partition;
    std::vector<double> twcv_history; // TWCV after each Lloyd iteration
    int iterations = 0;
};

/// One Lloyd run from k-means++ seeding.
inline KMeansRun kmeans_single(const Dataset& ds, int k, Rng& rng, int max_iter) {
    const std::size_t n = ds.size();
    const std::size_t d = ds.dim();
    const auto kk = static_cast<std::size_t>(k);

    std::vector<Point> centers;
    centers.reserve(kk);
    {
        const auto first = static_cast<std::size_t>(rng.below(n));
        auto p = ds.point(first);
        centers.emplace_back(p.begin(), p.end());
        std::vector<double> d2(n);
        for (std::size_t i = 0; i < n; ++i) d2[i] = detail::sq_dist(ds.point(i), centers[0]);
        while (centers.size() < kk) {
            double total = 0.0;
            for (double v : d2) total += v;
            std::size_t pick = n;
            if (total > 0.0) {
                double target = rng.uniform() * total;
                for (std::size_t i = 0; i < n; ++i) {
                    if (d2[i] <= 0.0) continue;
                    pick = i;
                    if ((target -= d2[i]) < 0.0) break;
                }
            } else {
                // every point coincides with a chosen center
                pick = static_cast<std::size_t>(rng.below(n));
            }
            auto q = ds.point(pick);
            centers.emplace_back(q.begin(), q.end());
            for (std::size_t i = 0; i < n; ++i) d2[i] = std::min(d2[i], detail::sq_dist(ds.point(i), centers.back()));
        }
    }

    std::vector<int> assign(n, -1);
    KMeansRun run;
    for (int it = 0; it < max_iter; ++it) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double best_d = detail::sq_dist(ds.point(i), centers[0]);
            for (std::size_t c = 1; c < kk; ++c) {
                const double dc = detail::sq_dist(ds.point(i), centers[c]);
                if (dc < best_d) {
                    best_d = dc;
                    best = static_cast<int>(c);
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }
        // empty cluster: move the point farthest from its own centroid into it
        for (;;) {
            std::vector<std::size_t> count(kk, 0);
            for (int a : assign) ++count[static_cast<std::size_t>(a)];
            auto empty = std::find(count.begin(), count.end(), std::size_t{0});
            if (empty == count.end()) break;
            std::size_t far = n;
            double far_d = -1.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (count[static_cast<std::size_t>(assign[i])] < 2) continue;
                const double di = detail::sq_dist(ds.point(i), centers[static_cast<std::size_t>(assign[i])]);
                if (di > far_d) {
                    far_d = di;
                    far = i;
                }
            }
            const auto slot = static_cast<std::size_t>(empty - count.begin());
            auto p = ds.point(far);
            centers[slot].assign(p.begin(), p.end());
            assign[far] = static_cast<int>(slot);
            changed = true;
        }
        for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
        std::vector<std::size_t> count(kk, 0);
        for (std::size_t i = 0; i < n; ++i) {
            auto p = ds.point(i);
            auto& c = centers[static_cast<std::size_t>(assign[i])];
            for (std::size_t r = 0; r < d; ++r) c[r] += p[r];
            ++count[static_cast<std::size_t>(assign[i])];
        }
        double twcv = 0.0;
        for (std::size_t c = 0; c < kk; ++c)
            for (double& v : centers[c]) v /= static_cast<double>(count[c]);
        for (std::size_t i = 0; i < n; ++i) twcv += detail::sq_dist(ds.point(i), centers[static_cast<std::size_t>(assign[i])]);
        run.twcv_history.push_back(twcv);
        run.iterations = it + 1;
        if (!changed) break;
    }
    run.partition = Partition(std::move(assign)).canonical();
    return run;
}

inline Partition kmeans(const Dataset& ds, int k, std::uint64_t seed, KMeansOptions opt = {}) {
    detail::require_k_range(ds, k, 1, "kmeans");
    if (opt.max_iter < 1) throw UsageError("kmeans: max_iter must be at least 1");
    if (static_cast<std::size_t>(k) == ds.size()) return Partition::singletons(ds.size());
    Rng rng(seed);
    std::optional<KMeansRun> best;
    for (int r = 0; r < std::max(1, opt.n_init); ++r) {
        auto run = kmeans_single(ds, k, rng, opt.max_iter);
        if (!best || run.twcv_history.back() < best->twcv_history.back()) best = std::move(run);
    }
    return best->partition;
}

// ---------------------------------------------------------------- linkage

enum class Linkage { Single, Average };

struct Merge {
    std::size_t a = 0; // surviving cluster id, a < b
    std::size_t b = 0;
    double height = 0.0;
};

/// Full agglomerative merge sequence (n-1 merges). Clusters are identified by
/// their smallest member; ties merge the pair with the smallest indices first.
class Dendrogram {
public:
    Dendrogram(const Dataset& ds, Linkage mode) : n_(ds.size()) {
        const std::size_t n = n_;
        std::vector<double> dist(ds.distances().row(0).data(), ds.distances().row(0).data() + n * n);
        std::vector<std::size_t> size(n, 1);
        std::vector<char> active(n, 1);
        std::vector<std::size_t> nn(n, n);
        std::vector<double> nnd(n, std::numeric_limits<double>::infinity());
        auto D = [&](std::size_t i, std::size_t j) -> double& { return dist[i * n + j]; };
        auto refresh = [&](std::size_t i) {
            nn[i] = n;
            nnd[i] = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i || !active[j]) continue;
                if (D(i, j) < nnd[i]) {
                    nnd[i] = D(i, j);
                    nn[i] = j;
                }
            }
        };
        for (std::size_t i = 0; i < n; ++i) refresh(i);

        merges_.reserve(n - 1);
        for (std::size_t step = 0; step + 1 < n; ++step) {
            std::size_t bi = n;
            for (std::size_t i = 0; i < n; ++i) {
                if (!active[i] || nn[i] == n) continue;
                if (bi == n) {
                    bi = i;
                    continue;
                }
                const auto key_i = std::make_tuple(nnd[i], std::min(i, nn[i]), std::max(i, nn[i]));
                const auto key_b = std::make_tuple(nnd[bi], std::min(bi, nn[bi]), std::max(bi, nn[bi]));
                if (key_i < key_b) bi = i;
            }
            const std::size_t a = std::min(bi, nn[bi]);
            const std::size_t b = std::max(bi, nn[bi]);
            merges_.push_back({a, b, nnd[bi]});

            for (std::size_t x = 0; x < n; ++x) {
                if (!active[x] || x == a || x == b) continue;
                const double v = mode == Linkage::Single
                                     ? std::min(D(a, x), D(b, x))
                                     : (static_cast<double>(size[a]) * D(a, x) + static_cast<double>(size[b]) * D(b, x)) /
                                           static_cast<double>(size[a] + size[b]);
                D(a, x) = v;
                D(x, a) = v;
            }
            size[a] += size[b];
            active[b] = 0;
            refresh(a);
            for (std::size_t x = 0; x < n; ++x) {
                if (!active[x] || x == a) continue;
                if (nn[x] == a || nn[x] == b) {
                    refresh(x);
                } else if (D(x, a) < nnd[x] || (D(x, a) == nnd[x] && a < nn[x])) {
                    nnd[x] = D(x, a);
                    nn[x] = a;
                }
            }
        }
    }

    const std::vector<Merge>& merges() const { return merges_; }

    /// The partition with k clusters: the first n-k merges applied.
    Partition cut(int k) const {
        if (k < 1 || static_cast<std::size_t>(k) > n_) throw UsageError("linkage: k out of range");
        DisjointSets sets(n_);
        for (std::size_t i = 0; i < n_ - static_cast<std::size_t>(k); ++i) sets.unite(merges_[i].a, merges_[i].b);
        return Partition(sets.labels());
    }

private:
    std::size_t n_;
    std::vector<Merge> merges_;
};

inline Partition linkage(const Dataset& ds, int k, Linkage mode) {
    detail::require_k_range(ds, k, 1, "linkage");
    return Dendrogram(ds, mode).cut(k);
}

// ---------------------------------------------------------------- SNN

struct SnnParams {
    std::size_t knn_k = 10;
    std::size_t eps = 2;     // minimum shared-neighbor count for a strong link
    std::size_t min_pts = 3; // strong links needed to be a core point

    friend bool operator==(const SnnParams&, const SnnParams&) = default;
};

/// Shared-nearest-neighbor density clustering. Noise points become singletons.
inline Partition snn_cluster(const Dataset& ds, SnnParams p) {
    const std::size_t n = ds.size();
    if (p.knn_k < 1 || p.knn_k > n - 1) throw UsageError("snn: knn_k must lie in [1, n-1]");
    const auto& nn = ds.neighbors();
    std::vector<std::vector<std::uint32_t>> knn(n);
    for (std::size_t a = 0; a < n; ++a) {
        auto row = nn.nearest(a, p.knn_k);
        knn[a].assign(row.begin(), row.end());
        std::sort(knn[a].begin(), knn[a].end());
    }
    auto lists = [&](std::size_t a, std::size_t b) { return std::binary_search(knn[a].begin(), knn[a].end(), b); };
    auto knn_order = [&](std::size_t a) { return nn.nearest(a, p.knn_k); };

    // strong links: mutual kNN pairs whose shared count reaches eps
    std::vector<std::vector<std::size_t>> strong(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (auto b32 : knn[a]) {
            const std::size_t b = b32;
            if (b <= a || !lists(b, a)) continue;
            std::vector<std::uint32_t> common;
            std::set_intersection(knn[a].begin(), knn[a].end(), knn[b].begin(), knn[b].end(), std::back_inserter(common));
            if (common.size() >= p.eps) {
                strong[a].push_back(b);
                strong[b].push_back(a);
            }
        }
    }
    std::vector<char> core(n, 0);
    for (std::size_t a = 0; a < n; ++a) core[a] = strong[a].size() >= p.min_pts ? 1 : 0;

    DisjointSets sets(n);
    for (std::size_t a = 0; a < n; ++a)
        if (core[a])
            for (auto b : strong[a])
                if (core[b]) sets.unite(a, b);
    // border: the nearest core point in the kNN list, if any
    for (std::size_t a = 0; a < n; ++a) {
        if (core[a]) continue;
        for (auto b : knn_order(a))
            if (core[b]) {
                sets.unite(a, b);
                break;
            }
    }
    return Partition(sets.labels());
}

// ---------------------------------------------------------------- MST clustering

/// MST edges ranked by interestingness; cutting the top k-1 gives k clusters.
class MstCutter {
public:
    explicit MstCutter(const Dataset& ds)
        : n_(ds.size()), tree_(minimum_spanning_tree(ds.distances())),
          ranked_(rank_by_interestingness(ds, tree_.edges)) {}

    const SpanningTree& tree() const { return tree_; }
    const std::vector<RankedEdge>& ranked() const { return ranked_; }

    Partition cut(int k) const {
        if (k < 1 || static_cast<std::size_t>(k) > n_) throw UsageError("mst_cluster: k out of range");
        DisjointSets sets(n_);
        for (std::size_t i = static_cast<std::size_t>(k) - 1; i < ranked_.size(); ++i)
            sets.unite(ranked_[i].edge.a, ranked_[i].edge.b);
        return Partition(sets.labels());
    }

private:
    std::size_t n_;
    SpanningTree tree_;
    std::vector<RankedEdge> ranked_;
};

inline Partition mst_cluster(const Dataset& ds, int k) {
    detail::require_k_range(ds, k, 1, "mst_cluster");
    return MstCutter(ds).cut(k);
}

// ---------------------------------------------------------------- populations

enum class Algorithm { KM, AL, SL, SNN, MST };

inline constexpr std::array<Algorithm, 5> all_algorithms{Algorithm::KM, Algorithm::AL, Algorithm::SL, Algorithm::SNN,
                                                         Algorithm::MST};

inline constexpr std::string_view algorithm_id(Algorithm a) {
    switch (a) {
    case Algorithm::KM: return "km";
    case Algorithm::AL: return "al";
    case Algorithm::SL: return "sl";
    case Algorithm::SNN: return "snn";
    case Algorithm::MST: return "mst";
    }
    return "?";
}

inline Algorithm parse_algorithm(std::string_view id) {
    for (Algorithm a : all_algorithms)
        if (algorithm_id(a) == id) return a;
    throw UsageError("unknown initializer '" + std::string(id) + "'");
}

struct Member {
    Partition partition; // canonical labeling
    int k = 0;
    std::optional<std::uint64_t> seed;  // km only
    std::optional<SnnParams> snn;       // snn only
    bool in_range = true;               // 2 <= k <= 2k*
};

struct InitPopulation {
    Algorithm source = Algorithm::MST;
    int k_star = 0;
    std::vector<Member> members;
};

/// The grid swept for SNN, in sweep order.
inline std::vector<SnnParams> snn_grid() {
    std::vector<SnnParams> g;
    for (std::size_t knn : {5, 10})
        for (std::size_t eps : {1, 2, 3})
            for (std::size_t mp : {3, 5}) g.push_back({knn, eps, mp});
    return g;
}

/// One partition per k in [2, 2k*] (SNN: one per grid point), duplicates
/// removed keeping the first occurrence.
inline InitPopulation generate_population(const Dataset& ds, Algorithm algo, int k_star, std::uint64_t seed) {
    if (k_star < 1) throw UsageError("k* must be at least 1");
    const int k_max = std::max(2, 2 * k_star);
    if (static_cast<std::size_t>(k_max) > ds.size())
        throw UsageError("2k* = " + std::to_string(k_max) + " exceeds n = " + std::to_string(ds.size()));

    InitPopulation pop{algo, k_star, {}};
    auto add = [&](Member m) {
        m.partition = m.partition.canonical();
        m.k = m.partition.k();
        m.in_range = m.k >= 2 && m.k <= k_max;
        for (const auto& e : pop.members)
            if (e.partition == m.partition) return;
        pop.members.push_back(std::move(m));
    };

    switch (algo) {
    case Algorithm::KM:
        for (int k = 2; k <= k_max; ++k) {
            const auto s = derive_seed(seed, hash_name("km"), static_cast<std::uint64_t>(k));
            add({kmeans(ds, k, s), k, s, std::nullopt, true});
        }
        break;
    case Algorithm::AL:
    case Algorithm::SL: {
        const Dendrogram tree(ds, algo == Algorithm::AL ? Linkage::Average : Linkage::Single);
        for (int k = 2; k <= k_max; ++k) add({tree.cut(k), k, std::nullopt, std::nullopt, true});
        break;
    }
    case Algorithm::MST: {
        const MstCutter cutter(ds);
        for (int k = 2; k <= k_max; ++k) add({cutter.cut(k), k, std::nullopt, std::nullopt, true});
        break;
    }
    case Algorithm::SNN:
        for (auto p : snn_grid()) {
            p.knn_k = std::min(p.knn_k, ds.size() - 1);
            add({snn_cluster(ds, p), 0, std::nullopt, p, true});
        }
        break;
    }
    return pop;
}

} // namespace admissa::init
