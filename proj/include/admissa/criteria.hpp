#pragma once

// The seventeen clustering objective functions. Each is a pure function of a
// dataset and a hard partition. Distances are Euclidean and read from the
// dataset's cached matrix.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geometry.hpp"

namespace admissa::criteria {

enum class Criterion { Ent, Dev, Var, TWCV, Con, DCD, ABGSS, SepAL, SepCL, SepGraph, CH, DB, Dunn, Mod, Sil, PBM, XB };

enum class Direction { Minimize, Maximize };

// How Con penalises a neighbor placed in another cluster: 1/k as printed, or 1/h
// (neighbor rank) as in the MOCK family.
enum class ConPenalty { Uniform, Rank };

inline constexpr std::array<Criterion, 17> all_criteria{
    Criterion::Ent, Criterion::Dev, Criterion::Var, Criterion::TWCV, Criterion::Con, Criterion::DCD,
    Criterion::ABGSS, Criterion::SepAL, Criterion::SepCL, Criterion::SepGraph, Criterion::CH, Criterion::DB,
    Criterion::Dunn, Criterion::Mod, Criterion::Sil, Criterion::PBM, Criterion::XB};

inline constexpr std::string_view criterion_id(Criterion c) {
    switch (c) {
    case Criterion::Ent: return "ent";
    case Criterion::Dev: return "dev";
    case Criterion::Var: return "var";
    case Criterion::TWCV: return "twcv";
    case Criterion::Con: return "con";
    case Criterion::DCD: return "dcd";
    case Criterion::ABGSS: return "abgss";
    case Criterion::SepAL: return "sep_al";
    case Criterion::SepCL: return "sep_cl";
    case Criterion::SepGraph: return "sep_graph";
    case Criterion::CH: return "ch";
    case Criterion::DB: return "db";
    case Criterion::Dunn: return "dunn";
    case Criterion::Mod: return "mod";
    case Criterion::Sil: return "sil";
    case Criterion::PBM: return "pbm";
    case Criterion::XB: return "xb";
    }
    return "?";
}

inline Criterion parse_criterion(std::string_view id) {
    for (Criterion c : all_criteria)
        if (criterion_id(c) == id) return c;
    throw UsageError("unknown criterion id '" + std::string(id) + "'");
}

inline constexpr Direction direction_of(Criterion c) {
    switch (c) {
    case Criterion::Dev:
    case Criterion::Var:
    case Criterion::TWCV:
    case Criterion::Con:
    case Criterion::DB:
    case Criterion::XB: return Direction::Minimize;
    default: return Direction::Maximize;
    }
}

struct Params {
    std::size_t L = 10;      // Con neighborhood, clamped to n-1
    std::size_t k_size = 10; // DCD / SepGraph neighbor graph, clamped to n-1
    double m = 2.0;          // XB fuzzy exponent; irrelevant under hard membership
    ConPenalty con_penalty = ConPenalty::Uniform;

    friend bool operator==(const Params&, const Params&) = default;
};

struct ObjectiveSpec {
    Criterion id = Criterion::Var;
    Params params{};

    Direction direction() const { return direction_of(id); }
    std::string name() const { return std::string(criterion_id(id)); }

    friend bool operator==(const ObjectiveSpec&, const ObjectiveSpec&) = default;
};

inline ObjectiveSpec spec(Criterion c, Params p = {}) { return {c, p}; }

enum class ErrorKind { KTooSmall, Degenerate, ZeroVector };

inline constexpr std::string_view error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::KTooSmall: return "ErrKTooSmall";
    case ErrorKind::Degenerate: return "ErrDegenerate";
    case ErrorKind::ZeroVector: return "ErrZeroVector";
    }
    return "?";
}

/// A criterion that is undefined for the given partition.
class CriterionError : public std::runtime_error {
public:
    CriterionError(ErrorKind kind, Criterion criterion, const std::string& detail)
        : std::runtime_error(std::string(error_kind_name(kind)) + "(" + std::string(criterion_id(criterion)) +
                             "): " + detail),
          kind_(kind), criterion_(criterion) {}

    ErrorKind kind() const { return kind_; }
    Criterion criterion() const { return criterion_; }

private:
    ErrorKind kind_;
    Criterion criterion_;
};

namespace detail {

inline void require_k(const Partition& pi, Criterion c, int min_k = 2) {
    if (pi.k() < min_k)
        throw CriterionError(ErrorKind::KTooSmall, c, "needs k >= " + std::to_string(min_k) + ", got " +
                                                          std::to_string(pi.k()));
}

inline double to_centroid_sum(const Dataset& ds, const Partition& pi, const Centroids& z) {
    double s = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) s += euclidean(ds.point(a), z.clusters[static_cast<std::size_t>(pi[a])]);
    return s;
}

inline double min_centroid_gap(const Centroids& z) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < z.clusters.size(); ++i)
        for (std::size_t j = i + 1; j < z.clusters.size(); ++j) best = std::min(best, euclidean(z.clusters[i], z.clusters[j]));
    return best;
}

inline std::size_t clamp_neighbors(std::size_t v, const Dataset& ds, const char* what) {
    if (v == 0) throw UsageError(std::string(what) + " must be at least 1");
    return std::min(v, ds.size() - 1);
}

inline double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace detail

/// Intra-cluster entropy; cosine similarity between points and their centroid.
inline double eval_ent(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    const auto z = centroids(ds, pi);
    const auto k = static_cast<std::size_t>(pi.k());
    std::vector<double> g(k, 0.0);
    std::vector<double> zn(k);
    for (std::size_t c = 0; c < k; ++c) {
        zn[c] = detail::norm(z.clusters[c]);
        if (zn[c] == 0.0) throw CriterionError(ErrorKind::ZeroVector, Criterion::Ent, "centroid is the zero vector");
    }
    for (std::size_t a = 0; a < ds.size(); ++a) {
        const auto c = static_cast<std::size_t>(pi[a]);
        auto x = ds.point(a);
        const double xn = detail::norm(x);
        if (xn == 0.0)
            throw CriterionError(ErrorKind::ZeroVector, Criterion::Ent, "point " + std::to_string(a) + " is the zero vector");
        double dot = 0.0;
        for (std::size_t r = 0; r < x.size(); ++r) dot += x[r] * z.clusters[c][r];
        g[c] += 0.5 + dot / (xn * zn[c]) / 2.0;
    }
    const auto sizes = pi.cluster_sizes();
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        const double gc = std::clamp(g[c] / static_cast<double>(sizes[c]), 0.0, 1.0);
        double h = 0.0;
        if (gc > 0.0 && gc < 1.0) h = -(gc * std::log2(gc) + (1.0 - gc) * std::log2(1.0 - gc));
        total += std::pow((1.0 - h) * gc, 1.0 / static_cast<double>(k));
    }
    return total;
}

inline double eval_dev(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    return detail::to_centroid_sum(ds, pi, centroids(ds, pi));
}

inline double eval_var(const Dataset& ds, const Partition& pi) {
    return eval_dev(ds, pi) / static_cast<double>(ds.size());
}

inline double eval_twcv(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    const auto z = centroids(ds, pi);
    double s = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        auto x = ds.point(a);
        const auto& zc = z.clusters[static_cast<std::size_t>(pi[a])];
        for (std::size_t r = 0; r < x.size(); ++r) s += (x[r] - zc[r]) * (x[r] - zc[r]);
    }
    return s;
}

inline double eval_con(const Dataset& ds, const Partition& pi, std::size_t L = 10,
                       ConPenalty penalty = ConPenalty::Uniform) {
    check_compatible(ds, pi);
    L = detail::clamp_neighbors(L, ds, "L");
    const double per_k = 1.0 / static_cast<double>(pi.k());
    double s = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        auto nn = ds.neighbors().nearest(a, L);
        for (std::size_t h = 0; h < nn.size(); ++h)
            if (pi[a] != pi[nn[h]]) s += penalty == ConPenalty::Uniform ? per_k : 1.0 / static_cast<double>(h + 1);
    }
    return s;
}

/// Data continuity degree: total weight of the minimum spanning forests of the
/// k_size-graph restricted to each cluster, divided by k.
inline double eval_dcd(const Dataset& ds, const Partition& pi, std::size_t k_size = 10) {
    check_compatible(ds, pi);
    k_size = detail::clamp_neighbors(k_size, ds, "k_size");
    std::vector<Edge> intra;
    for (const Edge& e : knn_graph(ds, k_size))
        if (pi[e.a] == pi[e.b]) intra.push_back(e);
    double total = 0.0;
    for (const Edge& e : minimum_spanning_forest(ds.size(), std::move(intra))) total += e.weight;
    return total / static_cast<double>(pi.k());
}

inline double eval_abgss(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    const auto z = centroids(ds, pi);
    const auto sizes = pi.cluster_sizes();
    double s = 0.0;
    for (std::size_t c = 0; c < sizes.size(); ++c) s += static_cast<double>(sizes[c]) * euclidean(z.clusters[c], z.global);
    return s / static_cast<double>(pi.k());
}

inline double eval_sep_al(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::SepAL);
    const auto z = centroids(ds, pi);
    const auto k = z.clusters.size();
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) s += euclidean(z.clusters[i], z.clusters[j]);
    return s / (static_cast<double>(k) * static_cast<double>(k - 1) / 2.0);
}

inline double eval_sep_cl(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::SepCL);
    const auto& dm = ds.distances();
    double s = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        auto row = dm.row(a);
        const int ca = pi[a];
        for (std::size_t b = a + 1; b < ds.size(); ++b)
            if (pi[b] != ca) s += row[b];
    }
    return s;
}

/// Graph-based separation: per cluster, the mean weight of k_size-graph edges
/// leaving it (0 when none); averaged over clusters.
inline double eval_sep_graph(const Dataset& ds, const Partition& pi, std::size_t k_size = 10) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::SepGraph);
    k_size = detail::clamp_neighbors(k_size, ds, "k_size");
    const auto k = static_cast<std::size_t>(pi.k());
    std::vector<double> sum(k, 0.0);
    std::vector<std::size_t> count(k, 0);
    for (const Edge& e : knn_graph(ds, k_size)) {
        const auto ca = static_cast<std::size_t>(pi[e.a]);
        const auto cb = static_cast<std::size_t>(pi[e.b]);
        if (ca == cb) continue;
        sum[ca] += e.weight;
        sum[cb] += e.weight;
        ++count[ca];
        ++count[cb];
    }
    double total = 0.0;
    for (std::size_t c = 0; c < k; ++c)
        if (count[c] > 0) total += sum[c] / static_cast<double>(count[c]);
    return total / static_cast<double>(k);
}

/// Calinski-Harabasz with plain (not squared) distances.
inline double eval_ch(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::CH);
    if (static_cast<std::size_t>(pi.k()) >= ds.size())
        throw CriterionError(ErrorKind::KTooSmall, Criterion::CH, "k = n leaves no within-cluster dispersion");
    const auto z = centroids(ds, pi);
    const auto sizes = pi.cluster_sizes();
    double between = 0.0;
    for (std::size_t c = 0; c < sizes.size(); ++c) between += static_cast<double>(sizes[c]) * euclidean(z.clusters[c], z.global);
    const double within = detail::to_centroid_sum(ds, pi, z);
    if (within == 0.0) throw CriterionError(ErrorKind::Degenerate, Criterion::CH, "zero within-cluster dispersion");
    const double n = static_cast<double>(ds.size());
    const double k = static_cast<double>(pi.k());
    return between / within * (n - k) / (k - 1.0);
}

inline double eval_db(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::DB);
    const auto z = centroids(ds, pi);
    const auto k = static_cast<std::size_t>(pi.k());
    const auto sizes = pi.cluster_sizes();
    std::vector<double> scatter(k, 0.0);
    for (std::size_t a = 0; a < ds.size(); ++a) {
        const auto c = static_cast<std::size_t>(pi[a]);
        scatter[c] += euclidean(ds.point(a), z.clusters[c]);
    }
    for (std::size_t c = 0; c < k; ++c) scatter[c] /= static_cast<double>(sizes[c]);
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            const double gap = euclidean(z.clusters[i], z.clusters[j]);
            if (gap == 0.0) throw CriterionError(ErrorKind::Degenerate, Criterion::DB, "two centroids coincide");
            worst = std::max(worst, (scatter[i] + scatter[j]) / gap);
        }
        total += worst;
    }
    return total / static_cast<double>(k);
}

inline double eval_dunn(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::Dunn);
    const auto k = static_cast<std::size_t>(pi.k());
    const auto& dm = ds.distances();
    std::vector<double> min_between(k * k, std::numeric_limits<double>::infinity());
    double diameter = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        const auto ca = static_cast<std::size_t>(pi[a]);
        for (std::size_t b = a + 1; b < ds.size(); ++b) {
            const auto cb = static_cast<std::size_t>(pi[b]);
            const double d = dm(a, b);
            if (ca == cb) {
                diameter = std::max(diameter, d);
            } else {
                auto& slot = min_between[std::min(ca, cb) * k + std::max(ca, cb)];
                slot = std::min(slot, d);
            }
        }
    }
    if (diameter == 0.0) throw CriterionError(ErrorKind::Degenerate, Criterion::Dunn, "every cluster has zero diameter");
    double sep = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) sep = std::min(sep, min_between[i * k + j]);
    return sep / diameter;
}

/// Distance-based modularity, all sums over ordered pairs a != b.
inline double eval_mod(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    const auto k = static_cast<std::size_t>(pi.k());
    const auto& dm = ds.distances();
    std::vector<double> intra(k, 0.0), rows(k, 0.0);
    double total = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        const auto ca = static_cast<std::size_t>(pi[a]);
        auto row = dm.row(a);
        for (std::size_t b = 0; b < ds.size(); ++b) {
            if (b == a) continue;
            rows[ca] += row[b];
            if (static_cast<std::size_t>(pi[b]) == ca) intra[ca] += row[b];
        }
    }
    for (double r : rows) total += r;
    if (total == 0.0) throw CriterionError(ErrorKind::Degenerate, Criterion::Mod, "all points coincide");
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) s += intra[c] / total - (rows[c] / total) * (rows[c] / total);
    return s;
}

/// Mean silhouette; a point alone in its cluster scores 0.
inline double eval_sil(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::Sil);
    const auto k = static_cast<std::size_t>(pi.k());
    const auto sizes = pi.cluster_sizes();
    const auto& dm = ds.distances();
    std::vector<double> to_cluster(k);
    double total = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        const auto own = static_cast<std::size_t>(pi[a]);
        if (sizes[own] == 1) continue;
        std::fill(to_cluster.begin(), to_cluster.end(), 0.0);
        auto row = dm.row(a);
        for (std::size_t b = 0; b < ds.size(); ++b) to_cluster[static_cast<std::size_t>(pi[b])] += row[b];
        const double ad = to_cluster[own] / static_cast<double>(sizes[own] - 1);
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c)
            if (c != own) bd = std::min(bd, to_cluster[c] / static_cast<double>(sizes[c]));
        const double denom = std::max(ad, bd);
        if (denom > 0.0) total += (bd - ad) / denom;
    }
    return total / static_cast<double>(ds.size());
}

/// PBM with hard membership: E_k is the within-cluster sum of squared distances.
inline double eval_pbm(const Dataset& ds, const Partition& pi) {
    check_compatible(ds, pi);
    detail::require_k(pi, Criterion::PBM);
    const auto z = centroids(ds, pi);
    double e0 = 0.0, ek = 0.0;
    for (std::size_t a = 0; a < ds.size(); ++a) {
        e0 += euclidean(ds.point(a), z.global);
        const double d = euclidean(ds.point(a), z.clusters[static_cast<std::size_t>(pi[a])]);
        ek += d * d;
    }
    if (ek == 0.0) throw CriterionError(ErrorKind::Degenerate, Criterion::PBM, "zero within-cluster scatter");
    double dk = 0.0;
    for (std::size_t i = 0; i < z.clusters.size(); ++i)
        for (std::size_t j = i + 1; j < z.clusters.size(); ++j) dk = std::max(dk, euclidean(z.clusters[i], z.clusters[j]));
    return (1.0 / static_cast<double>(pi.k())) * (e0 / ek) * dk;
}

/// Xie-Beni with hard membership and unsquared distances.
inline double eval_xb(const Dataset& ds, const Partition& pi, double m = 2.0) {
    check_compatible(ds, pi);
    if (!(m >= 1.0)) throw UsageError("xb fuzzy exponent m must be >= 1");
    detail::require_k(pi, Criterion::XB);
    const auto z = centroids(ds, pi);
    const double gap = detail::min_centroid_gap(z);
    if (gap == 0.0) throw CriterionError(ErrorKind::Degenerate, Criterion::XB, "two centroids coincide");
    // hard membership: mu^m is 1 for the own cluster and 0 elsewhere
    return detail::to_centroid_sum(ds, pi, z) / (static_cast<double>(ds.size()) * gap);
}

inline double evaluate(const Dataset& ds, const Partition& pi, const ObjectiveSpec& s) {
    switch (s.id) {
    case Criterion::Ent: return eval_ent(ds, pi);
    case Criterion::Dev: return eval_dev(ds, pi);
    case Criterion::Var: return eval_var(ds, pi);
    case Criterion::TWCV: return eval_twcv(ds, pi);
    case Criterion::Con: return eval_con(ds, pi, s.params.L, s.params.con_penalty);
    case Criterion::DCD: return eval_dcd(ds, pi, s.params.k_size);
    case Criterion::ABGSS: return eval_abgss(ds, pi);
    case Criterion::SepAL: return eval_sep_al(ds, pi);
    case Criterion::SepCL: return eval_sep_cl(ds, pi);
    case Criterion::SepGraph: return eval_sep_graph(ds, pi, s.params.k_size);
    case Criterion::CH: return eval_ch(ds, pi);
    case Criterion::DB: return eval_db(ds, pi);
    case Criterion::Dunn: return eval_dunn(ds, pi);
    case Criterion::Mod: return eval_mod(ds, pi);
    case Criterion::Sil: return eval_sil(ds, pi);
    case Criterion::PBM: return eval_pbm(ds, pi);
    case Criterion::XB: return eval_xb(ds, pi, s.params.m);
    }
    throw InvariantError("unhandled criterion");
}

/// Objective values in spec order.
struct ObjectiveVector {
    std::vector<ObjectiveSpec> specs;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

inline ObjectiveVector evaluate_vector(const Dataset& ds, const Partition& pi, const std::vector<ObjectiveSpec>& specs) {
    ObjectiveVector out{specs, {}};
    out.values.reserve(specs.size());
    for (const auto& s : specs) {
        const double v = evaluate(ds, pi, s);
        if (!std::isfinite(v)) throw CriterionError(ErrorKind::Degenerate, s.id, "non-finite value");
        out.values.push_back(v);
    }
    return out;
}

/// Relative tolerance for "strictly better" comparisons, floored in absolute terms.
inline constexpr double rel_tol = 1e-9;
inline constexpr double abs_floor = 1e-12;

inline double tolerance(double a, double b) { return std::max(abs_floor, rel_tol * std::max(std::abs(a), std::abs(b))); }

/// True when `a` beats `b` in `dir` by more than the tolerance.
inline bool strictly_better(double a, double b, Direction dir) {
    const double gain = dir == Direction::Minimize ? b - a : a - b;
    return gain > tolerance(a, b);
}

/// Parse "con", "con:L=5", "dcd:k_size=7", "con:penalty=rank", "xb:m=2".
inline ObjectiveSpec parse_spec(std::string_view text) {
    const auto colon = text.find(':');
    ObjectiveSpec s{parse_criterion(text.substr(0, colon)), {}};
    if (colon == std::string_view::npos) return s;
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view kv = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) throw UsageError("malformed criterion parameter '" + std::string(kv) + "'");
        const std::string key(kv.substr(0, eq));
        const std::string val(kv.substr(eq + 1));
        try {
            if (key == "L") s.params.L = std::stoul(val);
            else if (key == "k_size") s.params.k_size = std::stoul(val);
            else if (key == "m") s.params.m = std::stod(val);
            else if (key == "penalty" && (val == "uniform" || val == "rank"))
                s.params.con_penalty = val == "uniform" ? ConPenalty::Uniform : ConPenalty::Rank;
            else throw UsageError("unknown criterion parameter '" + key + "=" + val + "'");
        } catch (const std::logic_error& e) {
            if (dynamic_cast<const UsageError*>(&e)) throw;
            throw UsageError("bad value for criterion parameter '" + key + "'");
        }
    }
    return s;
}

/// Inverse of parse_spec: the id, then every parameter that differs from its default.
inline std::string format_spec(const ObjectiveSpec& s) {
    const Params d{};
    std::string out = s.name();
    std::vector<std::string> kv;
    if (s.params.L != d.L) kv.push_back("L=" + std::to_string(s.params.L));
    if (s.params.k_size != d.k_size) kv.push_back("k_size=" + std::to_string(s.params.k_size));
    if (s.params.m != d.m) {
        char buf[32];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, s.params.m);
        kv.push_back("m=" + std::string(buf, ptr));
    }
    if (s.params.con_penalty != d.con_penalty)
        kv.push_back(std::string("penalty=") + (s.params.con_penalty == ConPenalty::Uniform ? "uniform" : "rank"));
    for (std::size_t i = 0; i < kv.size(); ++i) out += (i ? "," : ":") + kv[i];
    return out;
}

} // namespace admissa::criteria
