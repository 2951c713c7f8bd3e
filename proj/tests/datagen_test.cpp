#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include <admissa/csv_io.hpp>
#include <admissa/datagen.hpp>
#include <admissa/eval.hpp>
#include <admissa/init.hpp>

using namespace admissa;
using namespace admissa::datagen;

namespace {

std::span<const int> labels(const Dataset& ds) { return ds.truth()->assignment(); }

int label_count(const Dataset& ds) {
    std::set<int> s(labels(ds).begin(), labels(ds).end());
    return static_cast<int>(s.size());
}

void expect_valid(const Dataset& ds, std::size_t n, int k) {
    EXPECT_EQ(ds.size(), n);
    EXPECT_EQ(ds.dim(), 2u);
    ASSERT_TRUE(ds.truth());
    EXPECT_EQ(ds.truth()->k(), k);
    EXPECT_EQ(label_count(ds), k);
    for (double v : ds.flat()) EXPECT_TRUE(std::isfinite(v));
}

} // namespace

TEST(Blobs, SizeAndLabels) {
    expect_valid(gen_blobs(20, 50, 10.0, 1), 1000, 20);
    expect_valid(gen_blobs(2, 1, 0.0, 1), 2, 2);
    EXPECT_THROW(gen_blobs(1, 10, 10.0, 1), UsageError);
    EXPECT_THROW(gen_blobs(3, 0, 10.0, 1), UsageError);
}

TEST(Blobs, KMeansRecoversWellSeparated) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto ds = gen_blobs(5, 40, 10.0, seed);
        EXPECT_GE(eval::ari(init::kmeans(ds, 5, seed), *ds.truth()), 0.99) << seed;
    }
}

TEST(Elongated, SizesAndBoundary) {
    expect_valid(gen_elongated(Elongated::Long, 1000, 2), 1000, 2);
    expect_valid(gen_elongated(Elongated::Spiral, 1000, 2), 1000, 2);
    expect_valid(gen_elongated(Elongated::Spiral, 20, 2), 20, 2);
    EXPECT_THROW(gen_elongated(Elongated::Long, 19, 2), UsageError);
}

TEST(Nested, LevelsShareGeometry) {
    auto a = gen_nested(1, 4), b = gen_nested(2, 4), c = gen_nested(3, 4);
    expect_valid(a, 588, 2);
    expect_valid(b, 588, 5);
    expect_valid(c, 588, 13);
    EXPECT_TRUE(std::equal(a.flat().begin(), a.flat().end(), c.flat().begin(), c.flat().end()));
    EXPECT_TRUE(std::equal(a.flat().begin(), a.flat().end(), b.flat().begin(), b.flat().end()));
    // each level refines the one above
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); j += 37)
            if (labels(c)[i] == labels(c)[j]) {
                EXPECT_EQ(labels(b)[i], labels(b)[j]);
                EXPECT_EQ(labels(a)[i], labels(a)[j]);
            }
    EXPECT_THROW(gen_nested(0, 1), UsageError);
    EXPECT_THROW(gen_nested(4, 1), UsageError);
}

TEST(Mixed, Recipes) {
    expect_valid(gen_mixed(Recipe::ThreeMc, 1), 400, 3);
    expect_valid(gen_mixed(Recipe::Aggregation, 1), 788, 7);
    expect_valid(gen_mixed(Recipe::SpiralSquare, 1), 2000, 6);
    EXPECT_EQ(parse_recipe("aggregation"), Recipe::Aggregation);
    EXPECT_THROW(parse_recipe("moons"), UsageError);
    for (auto r : {Recipe::ThreeMc, Recipe::Aggregation, Recipe::SpiralSquare}) EXPECT_EQ(parse_recipe(recipe_id(r)), r);
}

TEST(Archetype, ParseAndGroups) {
    EXPECT_EQ(parse_archetype("nested"), Archetype::Nested);
    EXPECT_THROW(parse_archetype("rings"), UsageError);
    EXPECT_EQ(group_of(Archetype::GaussianBlobs), "G1");
    EXPECT_EQ(group_of(Archetype::Mixed), "G4");
    for (auto a : {Archetype::GaussianBlobs, Archetype::Nested, Archetype::Elongated, Archetype::Mixed})
        EXPECT_EQ(parse_archetype(archetype_id(a)), a);
}

TEST(Generate, DeterministicBytes) {
    std::vector<GeneratorSpec> specs(4);
    specs[0].archetype = Archetype::GaussianBlobs;
    specs[1].archetype = Archetype::Nested;
    specs[1].level = 2;
    specs[2].archetype = Archetype::Elongated;
    specs[2].kind = Elongated::Spiral;
    specs[2].n = 300;
    specs[3].archetype = Archetype::Mixed;
    specs[3].recipe = Recipe::Aggregation;
    for (auto& s : specs) {
        s.seed = 12;
        EXPECT_EQ(dataset_to_csv(generate(s)), dataset_to_csv(generate(s)));
        auto other = s;
        other.seed = 13;
        EXPECT_NE(dataset_to_csv(generate(s)), dataset_to_csv(generate(other)));
    }
}

TEST(Generate, CsvRoundTrip) {
    auto ds = gen_mixed(Recipe::ThreeMc, 3, "three");
    std::istringstream in(dataset_to_csv(ds));
    auto back = parse_dataset(in, "three", "label");
    ASSERT_EQ(back.size(), ds.size());
    EXPECT_TRUE(std::equal(back.flat().begin(), back.flat().end(), ds.flat().begin()));
    EXPECT_TRUE(back.truth()->same_grouping(*ds.truth()));
}
