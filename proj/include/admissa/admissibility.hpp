#pragma once

// Classifies an objective on a (dataset, initial population) pair: does some
// base partition already look better than the ground truth (inadmissible), is
// the truth itself among the base partitions, or neither.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "criteria.hpp"
#include "init.hpp"
#include "pareto.hpp"

namespace admissa::admissibility {

using criteria::Direction;
using criteria::ObjectiveSpec;
using criteria::ObjectiveVector;

/// Pareto dominance between evaluated vectors over the same spec list.
inline bool dominates(const ObjectiveVector& u, const ObjectiveVector& v) {
    if (u.specs != v.specs) throw UsageError("dominates: mismatched objective spec lists");
    return dominates_min(to_minimization(u.values, u.specs), to_minimization(v.values, v.specs));
}

enum class Verdict { Inadmissible, OptimalInInit, Admissible };

inline constexpr std::string_view verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Inadmissible: return "inadmissible";
    case Verdict::OptimalInInit: return "optimal_in_init";
    case Verdict::Admissible: return "admissible";
    }
    return "?";
}

/// Table legend: x for inadmissible, check mark for truth found, blank otherwise.
inline constexpr std::string_view verdict_symbol(Verdict v) {
    switch (v) {
    case Verdict::Inadmissible: return "×";
    case Verdict::OptimalInInit: return "✓";
    case Verdict::Admissible: return "";
    }
    return "";
}

struct Classification {
    Verdict verdict = Verdict::Admissible;
    std::optional<std::size_t> witness; // index into the value list
    double margin = 0.0;                // best non-truth value vs truth; positive = base looks better
};

/// `is_truth[i]` marks values whose partition equals the truth; those never
/// count toward inadmissibility. When empty, no value is treated as the truth.
inline Classification classify_objective(std::span<const double> values, double true_value, Direction dir,
                                         bool truth_found, std::span<const char> is_truth = {}) {
    if (values.empty()) throw UsageError("classify_objective: empty value list");
    if (!is_truth.empty() && is_truth.size() != values.size())
        throw UsageError("classify_objective: truth mask length mismatch");
    auto truth_at = [&](std::size_t i) { return !is_truth.empty() && is_truth[i]; };
    auto gain = [&](double v) { return dir == Direction::Minimize ? true_value - v : v - true_value; };

    Classification out;
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (truth_at(i)) continue;
        if (!best || gain(values[i]) > gain(values[*best])) best = i;
    }
    if (best) out.margin = gain(values[*best]);

    if (best && criteria::strictly_better(values[*best], true_value, dir)) {
        out.verdict = Verdict::Inadmissible;
        out.witness = best;
    } else if (truth_found) {
        out.verdict = Verdict::OptimalInInit;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (truth_at(i)) {
                out.witness = i;
                break;
            }
    }
    return out;
}

struct Skip {
    std::size_t member = 0; // population index
    std::string reason;
};

struct Cell {
    std::optional<Classification> result; // empty when the truth itself is not evaluable
    double true_value = 0.0;
    std::vector<Skip> skipped;
    std::string note;
};

struct AdmissibilityTable {
    std::string initializer;
    std::vector<std::string> datasets;
    std::vector<std::string> groups;
    std::vector<ObjectiveSpec> specs;
    std::vector<std::vector<Cell>> cells; // [dataset][objective]
    std::vector<std::size_t> in_count;    // per objective
    std::vector<std::size_t> op_count;

    void recount() {
        in_count.assign(specs.size(), 0);
        op_count.assign(specs.size(), 0);
        for (const auto& row : cells)
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (!row[j].result) continue;
                if (row[j].result->verdict == Verdict::Inadmissible) ++in_count[j];
                if (row[j].result->verdict == Verdict::OptimalInInit) ++op_count[j];
            }
    }
};

/// One dataset, one population, one objective.
inline Cell evaluate_cell(const Dataset& ds, const init::InitPopulation& pop, const ObjectiveSpec& spec) {
    if (!ds.has_labels()) throw DataError(ds.name() + ": admissibility needs ground-truth labels");
    const Partition& truth = *ds.truth();
    Cell cell;
    try {
        cell.true_value = criteria::evaluate(ds, truth, spec);
    } catch (const criteria::CriterionError& e) {
        cell.note = std::string("truth not evaluable: ") + e.what();
        return cell;
    }
    std::vector<double> values;
    std::vector<char> is_truth;
    std::vector<std::size_t> member_of;
    for (std::size_t i = 0; i < pop.members.size(); ++i) {
        const auto& p = pop.members[i].partition;
        try {
            values.push_back(criteria::evaluate(ds, p, spec));
        } catch (const criteria::CriterionError& e) {
            cell.skipped.push_back({i, e.what()});
            continue;
        }
        is_truth.push_back(p.same_grouping(truth) ? 1 : 0);
        member_of.push_back(i);
    }
    if (values.empty()) {
        cell.note = "no evaluable base partition";
        return cell;
    }
    bool truth_found = false;
    for (const auto& m : pop.members) truth_found = truth_found || m.partition.same_grouping(truth);
    auto c = classify_objective(values, cell.true_value, spec.direction(), truth_found, is_truth);
    if (c.witness) c.witness = member_of[*c.witness];
    cell.result = c;
    return cell;
}

struct LabeledPopulation {
    const Dataset* dataset = nullptr;
    const init::InitPopulation* population = nullptr;
    std::string group;
};

inline AdmissibilityTable build_admissibility_table(const std::vector<LabeledPopulation>& inputs,
                                                    std::string initializer, const std::vector<ObjectiveSpec>& specs) {
    AdmissibilityTable t;
    t.initializer = std::move(initializer);
    t.specs = specs;
    for (const auto& in : inputs) {
        t.datasets.push_back(in.dataset->name());
        t.groups.push_back(in.group);
        auto& row = t.cells.emplace_back();
        for (const auto& s : specs) row.push_back(evaluate_cell(*in.dataset, *in.population, s));
    }
    t.recount();
    return t;
}

} // namespace admissa::admissibility
