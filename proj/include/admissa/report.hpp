#pragma once

// Renders admissibility matrices, ARI summaries and box-plot data as CSV, JSON
// or Markdown documents. Rendering is pure; callers decide where bytes go.

#include <charconv>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "admissibility.hpp"
#include "eval.hpp"

namespace admissa::report {

enum class Format { Csv, Json, Markdown };

inline Format parse_format(std::string_view s) {
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    if (s == "markdown" || s == "md") return Format::Markdown;
    throw UsageError("unknown format '" + std::string(s) + "' (expected csv, json or markdown)");
}

inline constexpr std::string_view format_id(Format f) {
    switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Markdown: return "markdown";
    }
    return "?";
}

inline constexpr std::string_view extension(Format f) {
    switch (f) {
    case Format::Csv: return "csv";
    case Format::Json: return "json";
    case Format::Markdown: return "md";
    }
    return "?";
}

struct Document {
    std::string name; // relative file name
    std::string content;
};

/// Shortest round-trip decimal form.
inline std::string num(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline std::string fixed4(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

inline std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

/// Legend symbol for a cell; "-" marks a cell whose truth is not evaluable.
inline std::string cell_symbol(const admissibility::Cell& c) {
    return c.result ? std::string(admissibility::verdict_symbol(c.result->verdict)) : std::string("-");
}

/// A truth-dominated frequency at or above one half is underlined.
inline bool underlined(const eval::RunSummary& s) { return s.truth_dominated_freq >= 0.5; }

inline std::vector<std::string> spec_names(const std::vector<criteria::ObjectiveSpec>& specs) {
    std::vector<std::string> out;
    for (const auto& s : specs) out.push_back(criteria::format_spec(s));
    return out;
}

namespace detail {

inline std::string table_csv(const admissibility::AdmissibilityTable& t) {
    std::string out = "dataset,group";
    for (const auto& n : spec_names(t.specs)) out += "," + csv_field(n);
    out += '\n';
    for (std::size_t i = 0; i < t.datasets.size(); ++i) {
        out += csv_field(t.datasets[i]) + "," + csv_field(t.groups[i]);
        for (const auto& c : t.cells[i]) out += "," + cell_symbol(c);
        out += '\n';
    }
    return out;
}

inline std::string counts_csv(const admissibility::AdmissibilityTable& t) {
    std::string out = "objective,IN,OP\n";
    const auto names = spec_names(t.specs);
    for (std::size_t j = 0; j < names.size(); ++j)
        out += csv_field(names[j]) + "," + std::to_string(t.in_count[j]) + "," + std::to_string(t.op_count[j]) + "\n";
    return out;
}

inline nlohmann::ordered_json table_json(const admissibility::AdmissibilityTable& t) {
    nlohmann::ordered_json j;
    j["initializer"] = t.initializer;
    j["objectives"] = spec_names(t.specs);
    j["legend"] = {{"inadmissible", "×"}, {"optimal_in_init", "✓"}, {"admissible", ""}, {"undefined", "-"}};
    auto& rows = j["datasets"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < t.datasets.size(); ++i) {
        nlohmann::ordered_json r;
        r["dataset"] = t.datasets[i];
        r["group"] = t.groups[i];
        auto& cells = r["cells"] = nlohmann::ordered_json::array();
        for (std::size_t k = 0; k < t.specs.size(); ++k) {
            const auto& c = t.cells[i][k];
            nlohmann::ordered_json cj;
            cj["objective"] = criteria::format_spec(t.specs[k]);
            if (c.result) {
                cj["verdict"] = std::string(admissibility::verdict_name(c.result->verdict));
                cj["symbol"] = std::string(admissibility::verdict_symbol(c.result->verdict));
                cj["witness"] = c.result->witness ? nlohmann::ordered_json(*c.result->witness) : nlohmann::ordered_json();
                cj["margin"] = c.result->margin;
                cj["true_value"] = c.true_value;
            } else {
                cj["verdict"] = nullptr;
                cj["symbol"] = "-";
            }
            auto& sk = cj["skipped"] = nlohmann::ordered_json::array();
            for (const auto& s : c.skipped) sk.push_back({{"member", s.member}, {"reason", s.reason}});
            if (!c.note.empty()) cj["note"] = c.note;
            cells.push_back(std::move(cj));
        }
        rows.push_back(std::move(r));
    }
    auto& sum = j["summary"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < t.specs.size(); ++k)
        sum.push_back({{"objective", criteria::format_spec(t.specs[k])}, {"IN", t.in_count[k]}, {"OP", t.op_count[k]}});
    return j;
}

inline std::string table_markdown(const admissibility::AdmissibilityTable& t) {
    const auto names = spec_names(t.specs);
    std::string out = "### Admissibility, initializer `" + t.initializer + "`\n\n";
    out += "× inadmissible, ✓ truth in the initial population, blank admissible, - undefined.\n\n";
    out += "| dataset | group |";
    for (const auto& n : names) out += " " + n + " |";
    out += "\n|---|---|";
    for (std::size_t j = 0; j < names.size(); ++j) out += ":-:|";
    out += '\n';
    for (std::size_t i = 0; i < t.datasets.size(); ++i) {
        out += "| " + t.datasets[i] + " | " + t.groups[i] + " |";
        for (const auto& c : t.cells[i]) out += " " + cell_symbol(c) + " |";
        out += '\n';
    }
    out += "\n| objective | IN | OP |\n|---|--:|--:|\n";
    for (std::size_t j = 0; j < names.size(); ++j)
        out += "| " + names[j] + " | " + std::to_string(t.in_count[j]) + " | " + std::to_string(t.op_count[j]) + " |\n";
    return out;
}

using SummaryGroups = std::map<std::string, std::vector<const eval::RunSummary*>>;

inline SummaryGroups by_initializer(const std::vector<eval::RunSummary>& summaries) {
    SummaryGroups g;
    for (const auto& s : summaries) g[s.initializer].push_back(&s);
    return g;
}

inline std::string summary_csv(const std::vector<const eval::RunSummary*>& rows) {
    std::string out = "dataset,group,pair,mean_ari,std_ari,truth_dominated_freq\n";
    for (const auto* s : rows)
        out += csv_field(s->dataset) + "," + csv_field(s->group) + "," + csv_field(s->pair) + "," + num(s->mean) + "," +
               num(s->std) + "," + num(s->truth_dominated_freq) + "\n";
    return out;
}

inline std::string box_csv(const std::vector<const eval::RunSummary*>& rows) {
    std::string out = "dataset,pair,count,min,q1,median,q3,max,whisker_low,whisker_high,outliers\n";
    for (const auto* s : rows) {
        const auto b = eval::box_stats(s->best_aris);
        std::string outl;
        for (std::size_t i = 0; i < b.outliers.size(); ++i) outl += (i ? ";" : "") + num(b.outliers[i]);
        out += csv_field(s->dataset) + "," + csv_field(s->pair) + "," + std::to_string(b.count) + "," + num(b.min) +
               "," + num(b.q1) + "," + num(b.median) + "," + num(b.q3) + "," + num(b.max) + "," + num(b.whisker_low) +
               "," + num(b.whisker_high) + "," + outl + "\n";
    }
    return out;
}

inline nlohmann::ordered_json summary_json(const std::string& init, const std::vector<const eval::RunSummary*>& rows) {
    nlohmann::ordered_json j;
    j["initializer"] = init;
    j["selection"] = "best_ari_on_front";
    j["std"] = "population";
    auto& arr = j["summaries"] = nlohmann::ordered_json::array();
    for (const auto* s : rows) {
        const auto b = eval::box_stats(s->best_aris);
        nlohmann::ordered_json r;
        r["dataset"] = s->dataset;
        r["group"] = s->group;
        r["pair"] = s->pair;
        r["mean_ari"] = s->mean;
        r["std_ari"] = s->std;
        r["truth_dominated_freq"] = s->truth_dominated_freq;
        r["best_aris"] = s->best_aris;
        r["truth_dominated"] = s->truth_dominated;
        r["box"] = {{"count", b.count},   {"min", b.min},          {"q1", b.q1},
                    {"median", b.median}, {"q3", b.q3},            {"max", b.max},
                    {"whisker_low", b.whisker_low}, {"whisker_high", b.whisker_high}, {"outliers", b.outliers}};
        arr.push_back(std::move(r));
    }
    return j;
}

inline std::string summary_markdown(const std::string& init, const std::vector<const eval::RunSummary*>& rows) {
    std::vector<std::string> pairs, datasets;
    std::map<std::pair<std::string, std::string>, const eval::RunSummary*> at;
    std::map<std::string, std::string> group;
    for (const auto* s : rows) {
        if (std::find(pairs.begin(), pairs.end(), s->pair) == pairs.end()) pairs.push_back(s->pair);
        if (std::find(datasets.begin(), datasets.end(), s->dataset) == datasets.end()) datasets.push_back(s->dataset);
        at[{s->dataset, s->pair}] = s;
        group[s->dataset] = s->group;
    }
    std::string out = "### Best-on-front ARI, initializer `" + init + "`\n\n";
    out += "Mean ± population std over runs. Underlined: the front dominated the true partition in at least half "
           "of the runs.\n\n| dataset | group |";
    for (const auto& p : pairs) out += " " + p + " |";
    out += "\n|---|---|";
    for (std::size_t i = 0; i < pairs.size(); ++i) out += "--:|";
    out += '\n';
    for (const auto& d : datasets) {
        out += "| " + d + " | " + group[d] + " |";
        for (const auto& p : pairs) {
            auto it = at.find({d, p});
            if (it == at.end()) {
                out += "  |";
                continue;
            }
            std::string v = fixed4(it->second->mean) + " ± " + fixed4(it->second->std);
            out += " " + (underlined(*it->second) ? "<u>" + v + "</u>" : v) + " |";
        }
        out += '\n';
    }
    out += "\n| dataset | pair | min | q1 | median | q3 | max |\n|---|---|--:|--:|--:|--:|--:|\n";
    for (const auto* s : rows) {
        const auto b = eval::box_stats(s->best_aris);
        out += "| " + s->dataset + " | " + s->pair + " | " + fixed4(b.min) + " | " + fixed4(b.q1) + " | " +
               fixed4(b.median) + " | " + fixed4(b.q3) + " | " + fixed4(b.max) + " |\n";
    }
    return out;
}

} // namespace detail

/// One document per table (plus its IN/OP counts in CSV) and per initializer
/// of run summaries (plus box-plot data in CSV). Empty input yields no documents.
inline std::vector<Document> render_tables(const std::vector<admissibility::AdmissibilityTable>& tables,
                                           const std::vector<eval::RunSummary>& summaries, Format format) {
    std::vector<Document> docs;
    const std::string ext(extension(format));
    for (const auto& t : tables) {
        const std::string base = "admissibility_" + t.initializer;
        switch (format) {
        case Format::Csv:
            docs.push_back({base + ".csv", detail::table_csv(t)});
            docs.push_back({base + "_counts.csv", detail::counts_csv(t)});
            break;
        case Format::Json: docs.push_back({base + ".json", detail::table_json(t).dump(2) + "\n"}); break;
        case Format::Markdown: docs.push_back({base + ".md", detail::table_markdown(t)}); break;
        }
    }
    for (const auto& [init, rows] : detail::by_initializer(summaries)) {
        const std::string base = "summary_" + init;
        switch (format) {
        case Format::Csv:
            docs.push_back({base + ".csv", detail::summary_csv(rows)});
            docs.push_back({"boxplot_" + init + ".csv", detail::box_csv(rows)});
            break;
        case Format::Json: docs.push_back({base + ".json", detail::summary_json(init, rows).dump(2) + "\n"}); break;
        case Format::Markdown: docs.push_back({base + ".md", detail::summary_markdown(init, rows)}); break;
        }
    }
    return docs;
}

} // namespace admissa::report
