#include <gtest/gtest.h>

#include <admissa/datagen.hpp>
#include <admissa/report.hpp>

#include "fixtures.hpp"

using namespace admissa;
using namespace admissa::report;
using criteria::Criterion;

namespace {

admissibility::AdmissibilityTable one_cell() {
    static auto ds = fixtures::fix4();
    static auto pop = init::generate_population(ds, init::Algorithm::MST, 2, 1);
    return admissibility::build_admissibility_table({{&ds, &pop, "G0"}}, "mst", {criteria::spec(Criterion::Var)});
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] == '\n') {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    return out;
}

} // namespace

TEST(Render, EmptyInputGivesNoDocuments) {
    for (auto f : {Format::Csv, Format::Json, Format::Markdown}) EXPECT_TRUE(render_tables({}, {}, f).empty());
}

TEST(Render, UnknownFormatRejected) {
    EXPECT_THROW(parse_format("xlsx"), UsageError);
    EXPECT_EQ(parse_format("md"), Format::Markdown);
    for (auto f : {Format::Csv, Format::Json, Format::Markdown}) EXPECT_EQ(parse_format(format_id(f)), f);
}

TEST(Render, OneCellCsvCarriesLegendSymbol) {
    auto docs = render_tables({one_cell()}, {}, Format::Csv);
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_EQ(docs[0].name, "admissibility_mst.csv");
    EXPECT_EQ(docs[0].content, "dataset,group,var\nfix4,G0,×\n");
    EXPECT_EQ(docs[1].content, "objective,IN,OP\nvar,1,0\n");
}

TEST(Render, MarkdownHasInOpColumns) {
    auto docs = render_tables({one_cell()}, {}, Format::Markdown);
    ASSERT_EQ(docs.size(), 1u);
    EXPECT_NE(docs[0].content.find("| objective | IN | OP |"), std::string::npos);
    EXPECT_NE(docs[0].content.find("| var | 1 | 0 |"), std::string::npos);
}

TEST(Render, JsonCarriesVerdictRecords) {
    auto docs = render_tables({one_cell()}, {}, Format::Json);
    ASSERT_EQ(docs.size(), 1u);
    auto j = nlohmann::json::parse(docs[0].content);
    const auto& cell = j["datasets"][0]["cells"][0];
    EXPECT_EQ(cell["verdict"], "inadmissible");
    EXPECT_EQ(cell["true_value"].get<double>(), 0.5);
    EXPECT_TRUE(cell["witness"].is_number());
    EXPECT_EQ(j["summary"][0]["IN"], 1);
}

TEST(Render, UndefinedCellShowsDash) {
    auto t = one_cell();
    t.cells[0][0].result.reset();
    t.recount();
    EXPECT_EQ(t.in_count[0], 0u);
    auto docs = render_tables({t}, {}, Format::Csv);
    EXPECT_EQ(docs[0].content, "dataset,group,var\nfix4,G0,-\n");
}

TEST(Summary, AggregatesAndColumns) {
    auto s = eval::summarize_runs("d", "G1", "mst", "var+con", {1.0, 0.5}, {true, false});
    EXPECT_EQ(s.mean, 0.75);
    EXPECT_EQ(s.std, 0.25);
    EXPECT_EQ(s.truth_dominated_freq, 0.5);
    EXPECT_TRUE(underlined(s));
    EXPECT_THROW(eval::summarize_runs("d", "G1", "mst", "p", {1.0}, {}), UsageError);

    auto docs = render_tables({}, {s}, Format::Csv);
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_EQ(docs[0].name, "summary_mst.csv");
    auto rows = lines(docs[0].content);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], "dataset,group,pair,mean_ari,std_ari,truth_dominated_freq");
    EXPECT_EQ(rows[1], "d,G1,var+con,0.75,0.25,0.5");
    EXPECT_EQ(docs[1].name, "boxplot_mst.csv");
    EXPECT_EQ(lines(docs[1].content)[1], "d,var+con,2,0.5,0.625,0.75,0.875,1,0.5,1,");

    auto md = render_tables({}, {s}, Format::Markdown);
    EXPECT_NE(md[0].content.find("<u>0.7500 ± 0.2500</u>"), std::string::npos);
}

TEST(Summary, DeterministicRunsGiveZeroStd) {
    std::vector<double> aris(30, 0.8125);
    auto s = eval::summarize_runs("d", "G1", "mst", "p", aris, std::vector<bool>(30, false));
    EXPECT_EQ(s.std, 0.0);
    EXPECT_EQ(s.mean, 0.8125);
    EXPECT_FALSE(underlined(s));
}

TEST(Summary, SplitsByInitializer) {
    auto a = eval::summarize_runs("d", "G1", "mst", "p", {1.0}, {false});
    auto b = eval::summarize_runs("d", "G1", "km", "p", {0.5}, {false});
    auto docs = render_tables({}, {a, b}, Format::Json);
    ASSERT_EQ(docs.size(), 2u);
    EXPECT_EQ(docs[0].name, "summary_km.json");
    EXPECT_EQ(docs[1].name, "summary_mst.json");
}

TEST(FormatSpec, RoundTripsParse) {
    for (const char* text : {"var", "con:L=5", "con:penalty=rank", "xb:m=1.5", "dcd:k_size=3", "con:L=4,penalty=rank"}) {
        auto s = criteria::parse_spec(text);
        EXPECT_EQ(criteria::format_spec(s), text);
        EXPECT_EQ(criteria::parse_spec(criteria::format_spec(s)), s);
    }
}

TEST(CsvField, Quotes) {
    EXPECT_EQ(csv_field("plain"), "plain");
    EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
    EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}
