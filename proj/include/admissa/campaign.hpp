#pragma once

// Batch pipeline behind the command-line tool: a JSON campaign config, dataset
// resolution, and the gen / init / admissibility / optimize / report commands.
// Every command writes files atomically and only when their bytes change, and
// skips work whose stored key matches the current inputs.

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "admissibility.hpp"
#include "csv_io.hpp"
#include "datagen.hpp"
#include "emoc.hpp"
#include "eval.hpp"
#include "json_io.hpp"
#include "report.hpp"

namespace admissa::campaign {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using criteria::ObjectiveSpec;

struct DatasetEntry {
    std::string name;
    std::string group;
    std::optional<datagen::GeneratorSpec> generator;
    std::optional<std::string> csv;
    std::string label_column = "label";
    std::optional<int> k_star; // for unlabeled CSV input
};

using Pair = std::pair<ObjectiveSpec, ObjectiveSpec>;

inline std::string pair_id(const Pair& p) { return criteria::format_spec(p.first) + "+" + criteria::format_spec(p.second); }

struct CampaignConfig {
    std::uint64_t seed = 0;
    std::string out = "out";
    std::size_t jobs = 1;
    std::size_t runs = 30;
    std::vector<report::Format> formats{report::Format::Csv, report::Format::Json, report::Format::Markdown};
    std::vector<init::Algorithm> initializers{init::Algorithm::MST};
    std::vector<ObjectiveSpec> objectives;
    std::vector<Pair> pairs;
    emoc::EmocConfig emoc;
    std::optional<double> delta_percent;
    bool store_all_partitions = false;
    std::vector<DatasetEntry> datasets;
};

inline std::vector<Pair> default_pairs() {
    using criteria::Criterion;
    auto s = [](Criterion c) { return criteria::spec(c); };
    return {{s(Criterion::Var), s(Criterion::SepCL)}, {s(Criterion::CH), s(Criterion::SepCL)},
            {s(Criterion::Var), s(Criterion::CH)},    {s(Criterion::CH), s(Criterion::Con)},
            {s(Criterion::Var), s(Criterion::Con)},   {s(Criterion::Con), s(Criterion::SepCL)}};
}

namespace detail {

inline void check_keys(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
    if (!j.is_object()) throw UsageError(where + " must be a JSON object");
    for (const auto& [k, v] : j.items())
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw UsageError("unknown key '" + k + "' in " + where);
}

template <class T> T get_or(const Json& j, const char* key, T fallback) {
    if (!j.contains(key) || j[key].is_null()) return fallback;
    return j[key].get<T>();
}

inline bool safe_name(const std::string& s) {
    if (s.empty() || s[0] == '.') return false;
    return std::all_of(s.begin(), s.end(),
                       [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'; });
}

inline std::string elongated_id(datagen::Elongated k) { return k == datagen::Elongated::Long ? "long" : "spiral"; }

inline datagen::Elongated parse_elongated(const std::string& s) {
    if (s == "long") return datagen::Elongated::Long;
    if (s == "spiral") return datagen::Elongated::Spiral;
    throw UsageError("unknown elongated kind '" + s + "' (expected long or spiral)");
}

inline DatasetEntry parse_dataset_entry(const Json& j, std::uint64_t master) {
    check_keys(j,
               {"name", "group", "csv", "label_column", "k_star", "archetype", "seed", "per_cluster_n", "separation",
                "n", "kind", "level", "recipe"},
               "dataset entry");
    DatasetEntry e;
    e.name = j.at("name").get<std::string>();
    if (!safe_name(e.name)) throw UsageError("dataset name '" + e.name + "' must use [A-Za-z0-9_.-]");
    if (j.contains("csv") == j.contains("archetype"))
        throw UsageError("dataset '" + e.name + "' needs exactly one of 'csv' or 'archetype'");
    if (j.contains("csv")) {
        e.csv = j["csv"].get<std::string>();
        e.label_column = get_or<std::string>(j, "label_column", "label");
        if (j.contains("k_star")) e.k_star = j["k_star"].get<int>();
        e.group = get_or<std::string>(j, "group", "");
        return e;
    }
    datagen::GeneratorSpec g;
    g.archetype = datagen::parse_archetype(j["archetype"].get<std::string>());
    g.name = e.name;
    g.seed = get_or<std::uint64_t>(j, "seed", derive_seed(master, hash_name("gen"), hash_name(e.name)));
    g.k_star = get_or<int>(j, "k_star", g.k_star);
    g.per_cluster_n = get_or<std::size_t>(j, "per_cluster_n", g.per_cluster_n);
    g.separation = get_or<double>(j, "separation", g.separation);
    g.n = get_or<std::size_t>(j, "n", g.n);
    g.kind = parse_elongated(get_or<std::string>(j, "kind", elongated_id(g.kind)));
    g.level = get_or<int>(j, "level", g.level);
    g.recipe = datagen::parse_recipe(get_or<std::string>(j, "recipe", std::string(datagen::recipe_id(g.recipe))));
    e.generator = g;
    e.group = get_or<std::string>(j, "group", std::string(datagen::group_of(g.archetype)));
    return e;
}

inline Json dataset_entry_json(const DatasetEntry& e) {
    Json j;
    j["name"] = e.name;
    j["group"] = e.group;
    if (e.csv) {
        j["csv"] = *e.csv;
        j["label_column"] = e.label_column;
        if (e.k_star) j["k_star"] = *e.k_star;
        return j;
    }
    const auto& g = *e.generator;
    j["archetype"] = std::string(datagen::archetype_id(g.archetype));
    j["seed"] = g.seed;
    switch (g.archetype) {
    case datagen::Archetype::GaussianBlobs:
        j["k_star"] = g.k_star;
        j["per_cluster_n"] = g.per_cluster_n;
        j["separation"] = g.separation;
        break;
    case datagen::Archetype::Nested: j["level"] = g.level; break;
    case datagen::Archetype::Elongated:
        j["kind"] = elongated_id(g.kind);
        j["n"] = g.n;
        break;
    case datagen::Archetype::Mixed: j["recipe"] = std::string(datagen::recipe_id(g.recipe)); break;
    }
    return j;
}

inline ObjectiveSpec parse_objective(const Json& j) {
    if (!j.is_string()) throw UsageError("objective ids must be strings");
    return criteria::parse_spec(j.get<std::string>());
}

} // namespace detail

/// Parse a campaign document. `seed_override` wins over the document's seed.
inline CampaignConfig parse_config(const Json& j, std::optional<std::uint64_t> seed_override = std::nullopt) {
    try {
        detail::check_keys(j,
                           {"seed", "out", "jobs", "runs", "formats", "initializers", "objectives", "pairs", "emoc",
                            "store_partitions", "datasets"},
                           "config");
        CampaignConfig c;
        c.seed = seed_override.value_or(detail::get_or<std::uint64_t>(j, "seed", 0));
        c.out = detail::get_or<std::string>(j, "out", c.out);
        c.jobs = detail::get_or<std::size_t>(j, "jobs", c.jobs);
        c.runs = detail::get_or<std::size_t>(j, "runs", c.runs);
        if (c.runs < 1) throw UsageError("runs must be at least 1");
        if (j.contains("formats")) {
            c.formats.clear();
            for (const auto& f : j["formats"]) c.formats.push_back(report::parse_format(f.get<std::string>()));
        }
        if (j.contains("initializers")) {
            c.initializers.clear();
            for (const auto& a : j["initializers"]) c.initializers.push_back(init::parse_algorithm(a.get<std::string>()));
            if (c.initializers.empty()) throw UsageError("initializers must not be empty");
        }
        if (j.contains("objectives")) {
            for (const auto& o : j["objectives"]) c.objectives.push_back(detail::parse_objective(o));
        } else {
            for (auto cr : criteria::all_criteria) c.objectives.push_back(criteria::spec(cr));
        }
        if (c.objectives.empty()) throw UsageError("objectives must not be empty");
        if (j.contains("pairs")) {
            for (const auto& p : j["pairs"]) {
                if (!p.is_array() || p.size() != 2) throw UsageError("each pair must list two objective ids");
                c.pairs.emplace_back(detail::parse_objective(p[0]), detail::parse_objective(p[1]));
            }
        } else {
            c.pairs = default_pairs();
        }
        const Json em = j.contains("emoc") ? j["emoc"] : Json::object();
        detail::check_keys(em,
                           {"population_size", "generations", "crossover_prob", "mutation_prob", "L", "relevant_loci",
                            "delta_percent"},
                           "emoc");
        c.emoc.population_size = detail::get_or<std::size_t>(em, "population_size", c.emoc.population_size);
        c.emoc.generations = detail::get_or<std::size_t>(em, "generations", c.emoc.generations);
        c.emoc.crossover_prob = detail::get_or<double>(em, "crossover_prob", c.emoc.crossover_prob);
        if (em.contains("mutation_prob") && !em["mutation_prob"].is_null()) c.emoc.mutation_prob = em["mutation_prob"].get<double>();
        c.emoc.L = detail::get_or<std::size_t>(em, "L", c.emoc.L);
        if (em.contains("relevant_loci") && !em["relevant_loci"].is_null())
            c.emoc.relevant_loci = em["relevant_loci"].get<std::size_t>();
        if (em.contains("delta_percent") && !em["delta_percent"].is_null()) c.delta_percent = em["delta_percent"].get<double>();
        if (c.emoc.relevant_loci && c.delta_percent) throw UsageError("set at most one of relevant_loci and delta_percent");
        // validate with a placeholder pair; real objectives are set per cell
        auto probe = c.emoc;
        probe.objectives = {criteria::spec(criteria::Criterion::Var), criteria::spec(criteria::Criterion::Con)};
        probe.validate();
        const auto store = detail::get_or<std::string>(j, "store_partitions", "best");
        if (store != "best" && store != "all") throw UsageError("store_partitions must be 'best' or 'all'");
        c.store_all_partitions = store == "all";
        if (!j.contains("datasets") || !j["datasets"].is_array() || j["datasets"].empty())
            throw UsageError("config needs a non-empty 'datasets' array");
        for (const auto& d : j["datasets"]) {
            auto e = detail::parse_dataset_entry(d, c.seed);
            for (const auto& other : c.datasets)
                if (other.name == e.name) throw UsageError("duplicate dataset name '" + e.name + "'");
            c.datasets.push_back(std::move(e));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

/// Fully resolved config, defaults included. The output directory and worker
/// count are left out: neither changes any result byte.
inline Json config_json(const CampaignConfig& c) {
    Json j;
    j["seed"] = c.seed;
    j["runs"] = c.runs;
    auto& f = j["formats"] = Json::array();
    for (auto x : c.formats) f.push_back(std::string(report::format_id(x)));
    auto& in = j["initializers"] = Json::array();
    for (auto a : c.initializers) in.push_back(std::string(init::algorithm_id(a)));
    auto& ob = j["objectives"] = Json::array();
    for (const auto& o : c.objectives) ob.push_back(criteria::format_spec(o));
    auto& pr = j["pairs"] = Json::array();
    for (const auto& p : c.pairs) pr.push_back({criteria::format_spec(p.first), criteria::format_spec(p.second)});
    Json em;
    em["population_size"] = c.emoc.population_size;
    em["generations"] = c.emoc.generations;
    em["crossover_prob"] = c.emoc.crossover_prob;
    em["mutation_prob"] = c.emoc.mutation_prob ? Json(*c.emoc.mutation_prob) : Json("1/relevant_loci");
    em["L"] = c.emoc.L;
    if (c.delta_percent) em["delta_percent"] = *c.delta_percent;
    else em["relevant_loci"] = c.emoc.relevant_loci ? Json(*c.emoc.relevant_loci) : Json("ceil(5*sqrt(n))");
    j["emoc"] = em;
    j["store_partitions"] = c.store_all_partitions ? "all" : "best";
    j["ari_selection"] = "best_ari_on_front";
    j["std"] = "population";
    auto& ds = j["datasets"] = Json::array();
    for (const auto& d : c.datasets) ds.push_back(detail::dataset_entry_json(d));
    return j;
}

inline CampaignConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override = std::nullopt) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config " + path + ": " + e.what());
    }
    return parse_config(j, seed_override);
}

// ---------------------------------------------------------------- file output

/// Write `content` to `path` via a temporary and rename, unless the file already
/// holds exactly these bytes. Returns true when the file changed.
inline bool write_if_changed(const fs::path& path, const std::string& content) {
    {
        std::ifstream in(path, std::ios::binary);
        if (in) {
            std::ostringstream ss;
            ss << in.rdbuf();
            if (ss.str() == content) return false;
        }
    }
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out << content;
        if (!out) throw DataError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
    return true;
}

inline std::optional<std::string> read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

/// Runs fn(0..count-1) on up to `jobs` threads. The first failure by index is rethrown.
inline void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
    std::vector<std::exception_ptr> errors(count);
    if (jobs == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// ------------------------------------------------------------------- datasets

struct Layout {
    fs::path root;
    fs::path datasets() const { return root / "datasets"; }
    fs::path populations() const { return root / "populations"; }
    fs::path admissibility() const { return root / "admissibility"; }
    fs::path runs() const { return root / "runs"; }
    fs::path summary() const { return root / "summary"; }
    fs::path population_file(const std::string& ds, init::Algorithm a) const {
        return populations() / (ds + "." + std::string(init::algorithm_id(a)) + ".json");
    }
};

inline Dataset resolve_dataset(const DatasetEntry& e) {
    if (e.generator) return datagen::generate(*e.generator);
    return load_dataset(*e.csv, e.label_column.empty() ? std::nullopt : std::optional<std::string>(e.label_column),
                        e.name);
}

inline std::vector<Dataset> resolve_datasets(const CampaignConfig& c) {
    std::vector<Dataset> out;
    for (const auto& e : c.datasets) out.push_back(resolve_dataset(e));
    return out;
}

inline int k_star_of(const DatasetEntry& e, const Dataset& ds) {
    if (e.k_star) return *e.k_star;
    if (!ds.has_labels()) throw DataError(ds.name() + ": no labels and no k_star given");
    return ds.k_star();
}

inline std::uint64_t fingerprint(const Dataset& ds) { return hash_name(dataset_to_csv(ds)); }

inline void write_manifest(const CampaignConfig& c, const Layout& l) {
    write_if_changed(l.root / "manifest.json", config_json(c).dump(2) + "\n");
}

// ------------------------------------------------------------------- commands

inline void cmd_gen(const CampaignConfig& c) {
    const Layout l{c.out};
    write_manifest(c, l);
    Json manifest = Json::array();
    for (const auto& e : c.datasets) {
        const Dataset ds = resolve_dataset(e);
        Json m = detail::dataset_entry_json(e);
        m["n"] = ds.size();
        m["d"] = ds.dim();
        m["k_star"] = ds.has_labels() ? ds.k_star() : 0;
        if (e.generator) {
            const std::string file = e.name + ".csv";
            write_if_changed(l.datasets() / file, dataset_to_csv(ds));
            m["file"] = file;
        }
        manifest.push_back(std::move(m));
    }
    write_if_changed(l.datasets() / "manifest.json", manifest.dump(2) + "\n");
}

inline std::string population_key(const Dataset& ds, init::Algorithm a, int k_star, std::uint64_t seed) {
    return hex(derive_seed(fingerprint(ds), hash_name(init::algorithm_id(a)), derive_seed(seed, static_cast<std::uint64_t>(k_star))));
}

inline std::uint64_t population_seed(const CampaignConfig& c, const std::string& name) {
    return derive_seed(c.seed, hash_name("init"), hash_name(name));
}

/// Writes one population file per (dataset, initializer); existing files with a matching key are kept.
inline std::size_t cmd_init(const CampaignConfig& c) {
    const Layout l{c.out};
    write_manifest(c, l);
    const auto datasets = resolve_datasets(c);
    struct Task {
        std::size_t d;
        init::Algorithm a;
    };
    std::vector<Task> tasks;
    for (std::size_t d = 0; d < datasets.size(); ++d)
        for (auto a : c.initializers) tasks.push_back({d, a});
    std::atomic<std::size_t> computed{0};
    parallel_for(tasks.size(), c.jobs, [&](std::size_t i) {
        const auto& ds = datasets[tasks[i].d];
        const auto& e = c.datasets[tasks[i].d];
        const int k_star = k_star_of(e, ds);
        const std::uint64_t seed = population_seed(c, e.name);
        const std::string key = population_key(ds, tasks[i].a, k_star, seed);
        const auto path = l.population_file(e.name, tasks[i].a);
        if (auto text = read_file(path)) {
            try {
                if (Json::parse(*text).value("key", "") == key) return;
            } catch (const nlohmann::json::exception&) {
            }
        }
        const auto pop = init::generate_population(ds, tasks[i].a, k_star, seed);
        write_if_changed(path, json_io::population_json(pop, e.name, seed, key).dump(1) + "\n");
        ++computed;
    });
    return computed;
}

inline init::InitPopulation load_population(const Layout& l, const std::string& name, init::Algorithm a,
                                            const Dataset& ds) {
    const auto path = l.population_file(name, a);
    auto text = read_file(path);
    if (!text) throw DataError("missing population file " + path.string() + " (run 'init' first)");
    try {
        return json_io::population_from(Json::parse(*text), ds.size());
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

inline std::vector<admissibility::AdmissibilityTable> build_tables(const CampaignConfig& c,
                                                                  const std::vector<Dataset>& datasets) {
    const Layout l{c.out};
    std::vector<admissibility::AdmissibilityTable> tables;
    for (auto a : c.initializers) {
        std::vector<init::InitPopulation> pops;
        for (std::size_t d = 0; d < datasets.size(); ++d)
            pops.push_back(load_population(l, c.datasets[d].name, a, datasets[d]));
        admissibility::AdmissibilityTable t;
        t.initializer = std::string(init::algorithm_id(a));
        t.specs = c.objectives;
        t.cells.resize(datasets.size());
        for (std::size_t d = 0; d < datasets.size(); ++d) {
            if (!datasets[d].has_labels())
                throw DataError(datasets[d].name() + ": admissibility needs ground-truth labels");
            t.datasets.push_back(c.datasets[d].name);
            t.groups.push_back(c.datasets[d].group);
            t.cells[d].resize(c.objectives.size());
        }
        parallel_for(datasets.size() * c.objectives.size(), c.jobs, [&](std::size_t i) {
            const std::size_t d = i / c.objectives.size(), o = i % c.objectives.size();
            t.cells[d][o] = admissibility::evaluate_cell(datasets[d], pops[d], c.objectives[o]);
        });
        t.recount();
        tables.push_back(std::move(t));
    }
    return tables;
}

inline void write_documents(const fs::path& dir, const std::vector<report::Document>& docs) {
    for (const auto& d : docs) write_if_changed(dir / d.name, d.content);
}

inline std::vector<admissibility::AdmissibilityTable> cmd_admissibility(const CampaignConfig& c) {
    const Layout l{c.out};
    write_manifest(c, l);
    const auto tables = build_tables(c, resolve_datasets(c));
    for (auto f : c.formats) write_documents(l.admissibility(), report::render_tables(tables, {}, f));
    return tables;
}

struct OptimizeStats {
    std::size_t cells = 0;    // (dataset, initializer, pair, run) cells
    std::size_t computed = 0; // cells actually run
    std::vector<eval::RunSummary> summaries;
};

inline std::string run_key(const CampaignConfig& c, const Dataset& ds, const std::string& init_id, const Pair& p,
                           std::uint64_t seed) {
    Json k = config_json(c)["emoc"];
    k["pair"] = pair_id(p);
    k["init"] = init_id;
    k["seed"] = seed;
    return hex(derive_seed(hash_name(k.dump()), fingerprint(ds)));
}

inline std::uint64_t run_seed(const CampaignConfig& c, const std::string& ds, const std::string& init_id,
                              const std::string& pair, std::size_t run) {
    return derive_seed(c.seed, hash_name(ds + "/" + init_id + "/" + pair), static_cast<std::uint64_t>(run));
}

inline fs::path run_file(const Layout& l, const std::string& ds, const std::string& init_id, const std::string& pair,
                         std::size_t run) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "run_%03zu.json", run);
    return l.runs() / ds / init_id / pair / buf;
}

/// One EMOC run of `pair` from `pop`, scored against the truth.
/// `r` carries the identifying fields; the outcome fields are filled in.
inline std::pair<json_io::RunRecord, Json> execute_run(const CampaignConfig& c, const Dataset& ds,
                                                       const init::InitPopulation& pop, const Pair& p,
                                                       json_io::RunRecord r) {
    if (!ds.has_labels()) throw DataError(ds.name() + ": optimize needs ground-truth labels");
    emoc::EmocConfig cfg = c.emoc;
    cfg.objectives = {p.first, p.second};
    cfg.seed = r.seed;
    if (c.delta_percent) cfg.relevant_loci = emoc::relevant_count_for_percent(ds.size(), *c.delta_percent);
    const auto res = emoc::evolve(ds, cfg, pop);
    const Partition& truth = *ds.truth();
    std::vector<double> aris;
    for (const auto& m : res.front) aris.push_back(eval::ari(m.partition, truth));
    r.best_ari = *std::max_element(aris.begin(), aris.end());
    std::vector<double> truth_values;
    try {
        const auto tv = criteria::evaluate_vector(ds, truth, cfg.objectives);
        truth_values = tv.values;
        r.truth_dominated = emoc::truth_dominated(res.front, tv);
    } catch (const criteria::CriterionError&) {
        r.truth_dominated = false;
    }
    r.evaluations = res.evaluations;
    r.relevant_loci = res.relevant_loci;
    r.disqualified_init = res.disqualified_init.size();
    return {r, json_io::run_json(r, res, aris, truth_values, c.store_all_partitions)};
}

inline OptimizeStats cmd_optimize(const CampaignConfig& c) {
    const Layout l{c.out};
    write_manifest(c, l);
    const auto datasets = resolve_datasets(c);
    std::vector<std::vector<init::InitPopulation>> pops(datasets.size());
    for (std::size_t d = 0; d < datasets.size(); ++d)
        for (auto a : c.initializers) pops[d].push_back(load_population(l, c.datasets[d].name, a, datasets[d]));

    struct Task {
        std::size_t d, a, p, run;
    };
    std::vector<Task> tasks;
    for (std::size_t d = 0; d < datasets.size(); ++d)
        for (std::size_t a = 0; a < c.initializers.size(); ++a)
            for (std::size_t p = 0; p < c.pairs.size(); ++p)
                for (std::size_t r = 0; r < c.runs; ++r) tasks.push_back({d, a, p, r});

    OptimizeStats stats;
    stats.cells = tasks.size();
    std::vector<json_io::RunRecord> records(tasks.size());
    std::atomic<std::size_t> computed{0};
    parallel_for(tasks.size(), c.jobs, [&](std::size_t i) {
        const auto& t = tasks[i];
        const auto& name = c.datasets[t.d].name;
        const std::string init_id(init::algorithm_id(c.initializers[t.a]));
        const std::string pid = pair_id(c.pairs[t.p]);
        const std::uint64_t seed = run_seed(c, name, init_id, pid, t.run);
        const std::string key = run_key(c, datasets[t.d], init_id, c.pairs[t.p], seed);
        const auto path = run_file(l, name, init_id, pid, t.run);
        if (auto text = read_file(path)) {
            try {
                auto rec = json_io::run_from(Json::parse(*text));
                if (rec.key == key) {
                    records[i] = rec;
                    return;
                }
            } catch (const std::exception&) {
            }
        }
        json_io::RunRecord id;
        id.dataset = name;
        id.initializer = init_id;
        id.pair = pid;
        id.run = t.run;
        id.seed = seed;
        id.key = key;
        auto [rec, doc] = execute_run(c, datasets[t.d], pops[t.d][t.a], c.pairs[t.p], id);
        write_if_changed(path, doc.dump(1) + "\n");
        records[i] = rec;
        ++computed;
    });
    stats.computed = computed;

    for (std::size_t i = 0; i < tasks.size(); i += c.runs) {
        std::vector<double> aris;
        std::vector<bool> dom;
        for (std::size_t r = 0; r < c.runs; ++r) {
            aris.push_back(records[i + r].best_ari);
            dom.push_back(records[i + r].truth_dominated);
        }
        const auto& t = tasks[i];
        stats.summaries.push_back(eval::summarize_runs(c.datasets[t.d].name, c.datasets[t.d].group,
                                                       std::string(init::algorithm_id(c.initializers[t.a])),
                                                       pair_id(c.pairs[t.p]), std::move(aris), std::move(dom)));
    }
    for (auto f : c.formats) write_documents(l.summary(), report::render_tables({}, stats.summaries, f));
    return stats;
}

/// Collects rendered tables into one markdown file. Returns false when no
/// artifacts were found (the report then holds only a notice).
inline bool cmd_report(const fs::path& root) {
    if (!fs::is_directory(root)) throw DataError("output directory " + root.string() + " does not exist");
    std::string out = "# Admissibility and objective-pair report\n\n";
    auto sorted_files = [](const fs::path& dir, const std::string& ext) {
        std::vector<fs::path> v;
        if (fs::is_directory(dir))
            for (const auto& e : fs::directory_iterator(dir))
                if (e.is_regular_file() && e.path().extension() == ext) v.push_back(e.path());
        std::sort(v.begin(), v.end());
        return v;
    };
    auto section = [&](const fs::path& dir, const std::string& title) {
        auto md = sorted_files(dir, ".md");
        auto csv = sorted_files(dir, ".csv");
        if (md.empty() && csv.empty()) return false;
        out += "## " + title + "\n\n";
        if (!md.empty()) {
            for (const auto& p : md) out += *read_file(p) + "\n";
        } else {
            for (const auto& p : csv) out += "`" + p.filename().string() + "`\n\n```\n" + *read_file(p) + "```\n\n";
        }
        return true;
    };
    bool any = section(root / "admissibility", "Admissibility");
    any = section(root / "summary", "Objective pairs") || any;
    const auto box = sorted_files(root / "summary", ".csv");
    bool has_box = false;
    for (const auto& p : box)
        if (p.filename().string().rfind("boxplot_", 0) == 0) {
            if (!has_box) out += "## Box-plot data\n\n";
            has_box = true;
            out += "- [" + p.filename().string() + "](summary/" + p.filename().string() + ")\n";
        }
    if (has_box) out += "\n";
    if (!any) out += "_No admissibility tables or run summaries were found._\n";
    write_if_changed(root / "report.md", out);
    return any;
}

} // namespace admissa::campaign
