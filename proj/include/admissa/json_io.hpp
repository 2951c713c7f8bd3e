#pragma once

// JSON forms of initial populations and EMOC runs.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "emoc.hpp"
#include "init.hpp"

namespace admissa::json_io {

using Json = nlohmann::ordered_json;

inline Json partition_json(const Partition& p) {
    return Json(std::vector<int>(p.assignment().begin(), p.assignment().end()));
}

inline Partition partition_from(const Json& j, std::size_t n) {
    auto a = j.get<std::vector<int>>();
    if (a.size() != n) throw DataError("stored partition has " + std::to_string(a.size()) + " entries, expected " +
                                       std::to_string(n));
    for (int v : a)
        if (v < 0) throw DataError("stored partition has a negative label");
    return Partition::from_labels(a);
}

inline Json population_json(const init::InitPopulation& pop, const std::string& dataset, std::uint64_t seed,
                            const std::string& key) {
    Json j;
    j["dataset"] = dataset;
    j["algorithm"] = std::string(init::algorithm_id(pop.source));
    j["k_star"] = pop.k_star;
    j["seed"] = seed;
    j["key"] = key;
    auto& ms = j["members"] = Json::array();
    for (const auto& m : pop.members) {
        Json mj;
        mj["k"] = m.k;
        mj["in_range"] = m.in_range;
        if (m.seed) mj["seed"] = *m.seed;
        if (m.snn) mj["snn"] = {{"knn_k", m.snn->knn_k}, {"eps", m.snn->eps}, {"min_pts", m.snn->min_pts}};
        mj["assignment"] = partition_json(m.partition);
        ms.push_back(std::move(mj));
    }
    return j;
}

inline init::InitPopulation population_from(const Json& j, std::size_t n) {
    try {
        init::InitPopulation pop;
        pop.source = init::parse_algorithm(j.at("algorithm").get<std::string>());
        pop.k_star = j.at("k_star").get<int>();
        for (const auto& mj : j.at("members")) {
            init::Member m;
            m.partition = partition_from(mj.at("assignment"), n);
            m.k = mj.at("k").get<int>();
            m.in_range = mj.at("in_range").get<bool>();
            if (mj.contains("seed")) m.seed = mj["seed"].get<std::uint64_t>();
            if (mj.contains("snn"))
                m.snn = init::SnnParams{mj["snn"].at("knn_k").get<std::size_t>(), mj["snn"].at("eps").get<std::size_t>(),
                                        mj["snn"].at("min_pts").get<std::size_t>()};
            if (m.partition.k() != m.k) throw DataError("stored member k disagrees with its assignment");
            pop.members.push_back(std::move(m));
        }
        if (pop.members.empty()) throw DataError("stored population is empty");
        return pop;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed population file: ") + e.what());
    } catch (const UsageError& e) {
        throw DataError(std::string("malformed population file: ") + e.what());
    }
}

/// Per-run record. Front members always carry values, k and ARI; assignments
/// are stored for every member or only for the best-ARI one.
struct RunRecord {
    std::string dataset, initializer, pair, key;
    std::size_t run = 0;
    std::uint64_t seed = 0;
    double best_ari = 0.0;
    bool truth_dominated = false;
    std::size_t evaluations = 0;
    std::size_t relevant_loci = 0;
    std::size_t disqualified_init = 0;
};

inline Json run_json(const RunRecord& r, const emoc::EmocResult& res, const std::vector<double>& aris,
                     const std::vector<double>& truth_values, bool all_partitions) {
    Json j;
    j["dataset"] = r.dataset;
    j["initializer"] = r.initializer;
    j["pair"] = r.pair;
    j["run"] = r.run;
    j["seed"] = r.seed;
    j["key"] = r.key;
    j["selection"] = "best_ari_on_front";
    j["best_ari"] = r.best_ari;
    j["truth_dominated"] = r.truth_dominated;
    j["truth_values"] = truth_values;
    j["evaluations"] = r.evaluations;
    j["relevant_loci"] = r.relevant_loci;
    j["disqualified_init"] = r.disqualified_init;
    std::size_t best = 0;
    for (std::size_t i = 1; i < aris.size(); ++i)
        if (aris[i] > aris[best]) best = i;
    auto& fr = j["front"] = Json::array();
    for (std::size_t i = 0; i < res.front.size(); ++i) {
        Json m;
        m["values"] = res.front[i].values;
        m["k"] = res.front[i].partition.k();
        m["ari"] = aris[i];
        if (all_partitions || i == best) m["assignment"] = partition_json(res.front[i].partition);
        fr.push_back(std::move(m));
    }
    return j;
}

inline RunRecord run_from(const Json& j) {
    try {
        RunRecord r;
        r.dataset = j.at("dataset").get<std::string>();
        r.initializer = j.at("initializer").get<std::string>();
        r.pair = j.at("pair").get<std::string>();
        r.key = j.at("key").get<std::string>();
        r.run = j.at("run").get<std::size_t>();
        r.seed = j.at("seed").get<std::uint64_t>();
        r.best_ari = j.at("best_ari").get<double>();
        r.truth_dominated = j.at("truth_dominated").get<bool>();
        r.evaluations = j.at("evaluations").get<std::size_t>();
        r.relevant_loci = j.at("relevant_loci").get<std::size_t>();
        r.disqualified_init = j.at("disqualified_init").get<std::size_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed run file: ") + e.what());
    }
}

} // namespace admissa::json_io
