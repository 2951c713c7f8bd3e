#pragma once

// Delta-locus evolutionary multi-objective clustering. Only the MST links with
// the highest interestingness are evolvable; every other MST link is fixed, so
// the search space shrinks from n genes to a few multiples of sqrt(n).

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "criteria.hpp"
#include "init.hpp"
#include "pareto.hpp"
#include "rng.hpp"

namespace admissa::emoc {

using criteria::ObjectiveSpec;

/// Default evolvable-locus count: ceil(5 sqrt(n)), at most n-1.
inline std::size_t default_relevant_count(std::size_t n) {
    const auto c = static_cast<std::size_t>(std::ceil(5.0 * std::sqrt(static_cast<double>(n))));
    return std::min(c, n - 1);
}

/// Locus count for an explicit percentage of n.
inline std::size_t relevant_count_for_percent(std::size_t n, double delta_percent) {
    if (!(delta_percent > 0.0 && delta_percent <= 100.0)) throw UsageError("delta_percent must lie in (0, 100]");
    const auto c = static_cast<std::size_t>(std::ceil(delta_percent / 100.0 * static_cast<double>(n) - 1e-9));
    return std::clamp<std::size_t>(c, 1, n - 1);
}

struct LocusScheme {
    std::size_t n = 0;
    std::vector<std::size_t> loci;                    // evolvable points, in interestingness order
    std::vector<std::vector<std::uint32_t>> domains;  // per locus: self, MST parent, then L nearest
    std::vector<Edge> fixed_edges;
    std::vector<std::size_t> parent;                  // MST parent, rooted at point 0

    std::size_t size() const { return loci.size(); }
};

/// Genes are link targets per locus; a gene equal to its own locus cuts the link.
struct Genotype {
    std::vector<std::uint32_t> genes;
    friend bool operator==(const Genotype&, const Genotype&) = default;
};

inline LocusScheme delta_relevant_loci(const Dataset& ds, std::size_t relevant, std::size_t L = 10) {
    const std::size_t n = ds.size();
    if (relevant < 1 || relevant > n - 1) throw UsageError("relevant locus count must lie in [1, n-1]");
    L = std::clamp<std::size_t>(L, 1, n - 1);
    const auto tree = minimum_spanning_tree(ds.distances());
    const auto ranked = rank_by_interestingness(ds, tree.edges);

    LocusScheme s;
    s.n = n;
    s.parent = tree.parent;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        const Edge& e = ranked[i].edge;
        if (i >= relevant) {
            s.fixed_edges.push_back(e);
            continue;
        }
        const std::size_t child = tree.parent[e.b] == e.a && e.b != 0 ? e.b : e.a;
        s.loci.push_back(child);
        std::vector<std::uint32_t> dom{static_cast<std::uint32_t>(child), static_cast<std::uint32_t>(tree.parent[child])};
        for (auto v : ds.neighbors().nearest(child, L))
            if (std::find(dom.begin(), dom.end(), v) == dom.end()) dom.push_back(v);
        s.domains.push_back(std::move(dom));
    }
    std::sort(s.fixed_edges.begin(), s.fixed_edges.end(), edge_less);
    return s;
}

inline LocusScheme delta_relevant_loci_percent(const Dataset& ds, double delta_percent, std::size_t L = 10) {
    return delta_relevant_loci(ds, relevant_count_for_percent(ds.size(), delta_percent), L);
}

/// Components of the fixed edges plus every non-self gene link.
inline Partition decode(const Genotype& g, const LocusScheme& s) {
    if (g.genes.size() != s.size()) throw UsageError("decode: genotype does not match locus scheme");
    DisjointSets sets(s.n);
    for (const Edge& e : s.fixed_edges) sets.unite(e.a, e.b);
    for (std::size_t i = 0; i < s.size(); ++i)
        if (g.genes[i] != s.loci[i]) sets.unite(s.loci[i], g.genes[i]);
    return Partition(sets.labels());
}

/// Per locus: keep the MST parent link if it stays inside the cluster, otherwise
/// link to the first domain member in the same cluster, otherwise cut.
inline Genotype encode(const Partition& pi, const LocusScheme& s) {
    if (pi.size() != s.n) throw UsageError("encode: partition size does not match locus scheme");
    Genotype g;
    g.genes.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t x = s.loci[i];
        std::uint32_t gene = static_cast<std::uint32_t>(x);
        for (auto v : s.domains[i])
            if (v != x && pi[v] == pi[x]) {
                gene = v;
                break;
            }
        g.genes.push_back(gene);
    }
    return g;
}

struct EmocConfig {
    std::vector<ObjectiveSpec> objectives;
    std::size_t population_size = 100;
    std::size_t generations = 100;
    double crossover_prob = 0.5;
    std::optional<double> mutation_prob; // default 1 / relevant loci
    std::uint64_t seed = 0;
    std::size_t L = 10;
    std::optional<std::size_t> relevant_loci; // default ceil(5 sqrt(n))

    void validate() const {
        if (objectives.size() < 2) throw UsageError("emoc needs at least two objectives");
        if (population_size < 4 || population_size % 2 != 0)
            throw UsageError("population_size must be even and at least 4");
        if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0)) throw UsageError("crossover_prob must lie in [0, 1]");
        if (mutation_prob && !(*mutation_prob >= 0.0 && *mutation_prob <= 1.0))
            throw UsageError("mutation_prob must lie in [0, 1]");
        if (L < 1) throw UsageError("L must be at least 1");
    }
};

/// Uniform crossover then reset mutation, in place on two children.
inline void variation(Genotype& c1, Genotype& c2, const LocusScheme& s, double crossover_prob, double mutation_prob,
                      Rng& rng) {
    if (c1.genes.size() != s.size() || c2.genes.size() != s.size())
        throw UsageError("variation: parents do not share the locus scheme");
    for (std::size_t i = 0; i < s.size(); ++i)
        if (rng.bernoulli(crossover_prob)) std::swap(c1.genes[i], c2.genes[i]);
    for (Genotype* c : {&c1, &c2})
        for (std::size_t i = 0; i < s.size(); ++i)
            if (rng.bernoulli(mutation_prob)) c->genes[i] = s.domains[i][rng.below(s.domains[i].size())];
}

struct FrontMember {
    Genotype genotype;
    Partition partition;        // canonical
    std::vector<double> values; // raw, in spec order and direction
};

struct EmocResult {
    std::vector<FrontMember> front; // mutually non-dominated, one per partition, sorted by values
    std::vector<init::Member> disqualified_init;
    std::size_t evaluations = 0;
    std::size_t relevant_loci = 0;
};

/// Called after each generation with the current first front.
using GenerationObserver = std::function<void(std::size_t generation, const std::vector<FrontMember>& front)>;

namespace detail {

struct VectorHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::uint64_t h = 0x84222325cbf29ce4ULL;
        for (int x : v) h = mix64(h ^ static_cast<std::uint64_t>(x));
        return static_cast<std::size_t>(h);
    }
};

struct Individual {
    Genotype g;
    Partition p;
    std::optional<std::vector<double>> raw; // nullopt: disqualified
    std::vector<double> norm;
    std::size_t rank = 0;
    double crowd = 0.0;
};

class Evaluator {
public:
    Evaluator(const Dataset& ds, const std::vector<ObjectiveSpec>& specs) : ds_(ds), specs_(specs) {}

    void fill(Individual& ind, const LocusScheme& s) {
        ind.p = decode(ind.g, s);
        auto it = memo_.find(std::vector<int>(ind.p.assignment().begin(), ind.p.assignment().end()));
        if (it == memo_.end()) {
            std::optional<std::vector<double>> v;
            try {
                v = criteria::evaluate_vector(ds_, ind.p, specs_).values;
            } catch (const criteria::CriterionError&) {
            }
            ++evaluations;
            if (memo_.size() >= memo_cap) memo_.clear();
            it = memo_.emplace(std::vector<int>(ind.p.assignment().begin(), ind.p.assignment().end()), std::move(v)).first;
        }
        ind.raw = it->second;
        ind.norm = ind.raw ? to_minimization(*ind.raw, specs_) : std::vector<double>{};
    }

    std::size_t evaluations = 0;
    static constexpr std::size_t memo_cap = 50000;

private:
    const Dataset& ds_;
    const std::vector<ObjectiveSpec>& specs_;
    std::unordered_map<std::vector<int>, std::optional<std::vector<double>>, VectorHash> memo_;
};

/// Rank and crowd `pool`, returning the order of survivors: valid unique
/// members front by front (crowding descending inside a front), then
/// disqualified members, then duplicates.
inline std::vector<std::size_t> rank_pool(std::vector<Individual>& pool) {
    std::vector<std::size_t> unique_valid, invalid, dups;
    std::unordered_map<std::vector<int>, char, VectorHash> seen;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        std::vector<int> key(pool[i].p.assignment().begin(), pool[i].p.assignment().end());
        if (!seen.emplace(std::move(key), 1).second) {
            dups.push_back(i);
            continue;
        }
        (pool[i].raw ? unique_valid : invalid).push_back(i);
    }
    std::vector<std::vector<double>> pts;
    for (auto i : unique_valid) pts.push_back(pool[i].norm);
    const auto fronts = nondominated_fronts(pts);
    std::vector<std::size_t> order;
    for (std::size_t f = 0; f < fronts.size(); ++f) {
        const auto cd = crowding_distance(pts, fronts[f]);
        std::vector<std::size_t> idx(fronts[f].size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return cd[a] > cd[b]; });
        for (auto j : idx) {
            auto& ind = pool[unique_valid[fronts[f][j]]];
            ind.rank = f;
            ind.crowd = cd[j];
            order.push_back(unique_valid[fronts[f][j]]);
        }
    }
    const std::size_t worst = fronts.size();
    for (auto i : invalid) {
        pool[i].rank = worst;
        pool[i].crowd = 0.0;
        order.push_back(i);
    }
    for (auto i : dups) {
        pool[i].rank = worst + 1;
        pool[i].crowd = 0.0;
        order.push_back(i);
    }
    return order;
}

inline std::vector<FrontMember> first_front(const std::vector<Individual>& pop) {
    std::vector<FrontMember> out;
    for (const auto& ind : pop)
        if (ind.raw && ind.rank == 0) out.push_back({ind.g, ind.p, *ind.raw});
    std::sort(out.begin(), out.end(), [](const FrontMember& a, const FrontMember& b) {
        if (a.values != b.values) return a.values < b.values;
        return std::lexicographical_compare(a.partition.assignment().begin(), a.partition.assignment().end(),
                                            b.partition.assignment().begin(), b.partition.assignment().end());
    });
    return out;
}

} // namespace detail

/// NSGA-II over Delta-locus genotypes, seeded with an encoded initial population.
inline EmocResult evolve(const Dataset& ds, const EmocConfig& cfg, const init::InitPopulation& init,
                         const GenerationObserver& observer = {}) {
    cfg.validate();
    if (init.members.empty()) throw UsageError("evolve: empty initial population");
    const std::size_t relevant = cfg.relevant_loci.value_or(default_relevant_count(ds.size()));
    const LocusScheme scheme = delta_relevant_loci(ds, relevant, cfg.L);
    const double pm = cfg.mutation_prob.value_or(1.0 / static_cast<double>(scheme.size()));
    Rng rng(cfg.seed);
    detail::Evaluator evaluator(ds, cfg.objectives);

    EmocResult result;
    result.relevant_loci = scheme.size();

    std::vector<detail::Individual> pop;
    for (const auto& m : init.members) {
        detail::Individual ind;
        ind.g = encode(m.partition, scheme);
        evaluator.fill(ind, scheme);
        if (!ind.raw) {
            result.disqualified_init.push_back(m);
            continue;
        }
        pop.push_back(std::move(ind));
    }
    if (pop.empty()) throw DataError("evolve: every initial partition is disqualified");

    auto order = detail::rank_pool(pop);
    if (cfg.generations == 0) {
        result.front = detail::first_front(pop);
        result.evaluations = evaluator.evaluations;
        return result;
    }
    if (pop.size() > cfg.population_size) {
        std::vector<detail::Individual> kept;
        for (std::size_t i = 0; i < cfg.population_size; ++i) kept.push_back(pop[order[i]]);
        pop = std::move(kept);
    }
    for (std::size_t i = 0; pop.size() < cfg.population_size; ++i) {
        detail::Individual ind;
        ind.g = pop[i % pop.size()].g;
        for (std::size_t l = 0; l < scheme.size(); ++l)
            if (rng.bernoulli(pm)) ind.g.genes[l] = scheme.domains[l][rng.below(scheme.domains[l].size())];
        evaluator.fill(ind, scheme);
        pop.push_back(std::move(ind));
    }
    detail::rank_pool(pop);

    auto tournament = [&]() -> const detail::Individual& {
        const auto a = static_cast<std::size_t>(rng.below(pop.size()));
        const auto b = static_cast<std::size_t>(rng.below(pop.size()));
        const auto& x = pop[a];
        const auto& y = pop[b];
        if (x.rank != y.rank) return x.rank < y.rank ? x : y;
        if (x.crowd != y.crowd) return x.crowd > y.crowd ? x : y;
        return a <= b ? x : y;
    };

    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        std::vector<detail::Individual> pool = pop;
        pool.reserve(2 * cfg.population_size);
        while (pool.size() < 2 * cfg.population_size) {
            detail::Individual c1, c2;
            c1.g = tournament().g;
            c2.g = tournament().g;
            variation(c1.g, c2.g, scheme, cfg.crossover_prob, pm, rng);
            evaluator.fill(c1, scheme);
            evaluator.fill(c2, scheme);
            pool.push_back(std::move(c1));
            pool.push_back(std::move(c2));
        }
        order = detail::rank_pool(pool);
        std::vector<detail::Individual> next;
        next.reserve(cfg.population_size);
        for (std::size_t i = 0; i < cfg.population_size; ++i) next.push_back(std::move(pool[order[i]]));
        pop = std::move(next);
        // survivors keep the rank and crowding computed over the pool
        if (observer) observer(gen + 1, detail::first_front(pop));
    }
    result.front = detail::first_front(pop);
    result.evaluations = evaluator.evaluations;
    return result;
}

/// True when some front member dominates the truth's objective vector.
inline bool truth_dominated(const std::vector<FrontMember>& front, const criteria::ObjectiveVector& truth) {
    const auto t = to_minimization(truth.values, truth.specs);
    for (const auto& m : front)
        if (dominates_min(to_minimization(m.values, truth.specs), t)) return true;
    return false;
}

} // namespace admissa::emoc
