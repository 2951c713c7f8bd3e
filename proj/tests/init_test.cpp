#include <gtest/gtest.h>

#include <admissa/datagen.hpp>
#include <admissa/eval.hpp>
#include <admissa/init.hpp>

#include "fixtures.hpp"

using namespace admissa;
using namespace admissa::init;

TEST(KMeans, Fix4AnySeed) {
    auto ds = fixtures::fix4();
    for (std::uint64_t seed = 0; seed < 50; ++seed)
        EXPECT_TRUE(kmeans(ds, 2, seed).same_grouping(fixtures::fix4_truth())) << seed;
}

TEST(KMeans, Boundaries) {
    auto ds = fixtures::fix4();
    EXPECT_EQ(kmeans(ds, 4, 1), Partition::singletons(4));
    EXPECT_THROW(kmeans(ds, 5, 1), UsageError);
}

TEST(KMeans, TwcvNonIncreasing) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        auto ds = fixtures::random_instance(rng, 60, 2, 1).dataset();
        Rng run_rng(static_cast<std::uint64_t>(t));
        auto run = kmeans_single(ds, 2 + t % 6, run_rng, 100);
        for (std::size_t i = 1; i < run.twcv_history.size(); ++i)
            EXPECT_LE(run.twcv_history[i], run.twcv_history[i - 1] + 1e-9);
    }
}

TEST(KMeans, RecoversSeparatedBlobs) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto ds = datagen::gen_blobs(6, 40, 10.0, seed);
        EXPECT_GE(eval::ari(kmeans(ds, 6, seed), *ds.truth()), 0.99);
    }
}

TEST(Linkage, Fix4) {
    auto ds = fixtures::fix4();
    EXPECT_TRUE(linkage(ds, 2, Linkage::Single).same_grouping(fixtures::fix4_truth()));
    EXPECT_TRUE(linkage(ds, 2, Linkage::Average).same_grouping(fixtures::fix4_truth()));
    EXPECT_EQ(linkage(ds, 4, Linkage::Single), Partition::singletons(4));
    EXPECT_EQ(linkage(ds, 1, Linkage::Average), Partition::single_cluster(4));
    EXPECT_THROW(linkage(ds, 5, Linkage::Single), UsageError);
}

TEST(Linkage, SingleLinkageEqualsMstCut) {
    // single linkage at k merges along the n-k lightest MST edges
    Rng rng(17);
    for (int t = 0; t < 10; ++t) {
        auto ds = fixtures::random_instance(rng, 30, 2, 1).dataset();
        auto tree = minimum_spanning_tree(ds.distances());
        for (int k = 1; k <= 30; k += 4) {
            DisjointSets sets(30);
            for (std::size_t i = 0; i + static_cast<std::size_t>(k) < 30; ++i) sets.unite(tree.edges[i].a, tree.edges[i].b);
            EXPECT_TRUE(linkage(ds, k, Linkage::Single).same_grouping(Partition(sets.labels()))) << k;
        }
    }
}

TEST(Linkage, AverageMatchesNaiveRecomputation) {
    Rng rng(23);
    for (int t = 0; t < 5; ++t) {
        auto in = fixtures::random_instance(rng, 18, 2, 1);
        auto ds = in.dataset();
        // naive UPGMA: recompute every cluster distance from members each step
        std::vector<std::vector<std::size_t>> cl;
        for (std::size_t i = 0; i < 18; ++i) cl.push_back({i});
        Dendrogram tree(ds, Linkage::Average);
        for (int k = 17; k >= 1; --k) {
            double best = 1e300;
            std::size_t bi = 0, bj = 0;
            for (std::size_t i = 0; i < cl.size(); ++i)
                for (std::size_t j = i + 1; j < cl.size(); ++j) {
                    double s = 0.0;
                    for (auto a : cl[i])
                        for (auto b : cl[j]) s += oracle::dist(in.points[a], in.points[b]);
                    s /= static_cast<double>(cl[i].size() * cl[j].size());
                    if (s < best - 1e-12) {
                        best = s;
                        bi = i;
                        bj = j;
                    }
                }
            cl[bi].insert(cl[bi].end(), cl[bj].begin(), cl[bj].end());
            cl.erase(cl.begin() + static_cast<std::ptrdiff_t>(bj));
            std::vector<int> lab(18);
            for (std::size_t c = 0; c < cl.size(); ++c)
                for (auto a : cl[c]) lab[a] = static_cast<int>(c);
            EXPECT_TRUE(tree.cut(k).same_grouping(Partition::from_labels(lab))) << k;
        }
    }
}

TEST(Snn, Fix4AndDegenerate) {
    auto ds = fixtures::fix4();
    EXPECT_TRUE(snn_cluster(ds, {1, 0, 1}).same_grouping(fixtures::fix4_truth()));
    EXPECT_EQ(snn_cluster(ds, {1, 0, 5}), Partition::singletons(4));
    EXPECT_THROW(snn_cluster(ds, {4, 0, 1}), UsageError);
}

TEST(Snn, RecoversThreeBlobs) {
    auto ds = datagen::gen_blobs(3, 60, 12.0, 7);
    EXPECT_DOUBLE_EQ(eval::ari(snn_cluster(ds, {10, 3, 5}), *ds.truth()), 1.0);
}

TEST(MstCluster, Fix4) {
    auto ds = fixtures::fix4();
    EXPECT_TRUE(mst_cluster(ds, 2).same_grouping(fixtures::fix4_truth()));
    EXPECT_EQ(mst_cluster(ds, 4), Partition::singletons(4));
    EXPECT_THROW(mst_cluster(ds, 5), UsageError);
    // the cross edge scores 2, the unit edges 1
    MstCutter cut(ds);
    EXPECT_EQ(cut.ranked()[0].di, 2u);
    EXPECT_EQ(cut.ranked()[0].edge.weight, 10.0);
}

TEST(MstCluster, NestedAcrossK) {
    Rng rng(5);
    auto ds = fixtures::random_instance(rng, 40, 2, 1).dataset();
    MstCutter cut(ds);
    for (int k = 1; k < 40; ++k) {
        auto coarse = cut.cut(k), fine = cut.cut(k + 1);
        EXPECT_EQ(fine.k(), k + 1);
        // every fine cluster sits inside one coarse cluster
        std::vector<int> parent(static_cast<std::size_t>(fine.k()), -1);
        for (std::size_t i = 0; i < 40; ++i) {
            auto& p = parent[static_cast<std::size_t>(fine[i])];
            if (p < 0) p = coarse[i];
            EXPECT_EQ(p, coarse[i]);
        }
    }
}

TEST(MstCluster, SeparatesElongatedChains) {
    auto ds = datagen::gen_elongated(datagen::Elongated::Long, 1000, 3);
    EXPECT_DOUBLE_EQ(eval::ari(mst_cluster(ds, 2), *ds.truth()), 1.0);
}

TEST(Population, RangeArithmetic) {
    auto ds = fixtures::fix4();
    auto pop = generate_population(ds, Algorithm::MST, 2, 1);
    ASSERT_EQ(pop.members.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(pop.members[i].k, static_cast<int>(i) + 2);
    auto km = generate_population(ds, Algorithm::KM, 1, 1);
    EXPECT_EQ(km.members.size(), 1u);
    EXPECT_THROW(generate_population(ds, Algorithm::KM, 3, 1), UsageError);
}

TEST(Population, DeterministicAndDuplicateFree) {
    auto ds = datagen::gen_blobs(4, 25, 8.0, 2);
    for (auto algo : all_algorithms) {
        auto a = generate_population(ds, algo, 4, 99);
        auto b = generate_population(ds, algo, 4, 99);
        ASSERT_EQ(a.members.size(), b.members.size());
        for (std::size_t i = 0; i < a.members.size(); ++i) {
            EXPECT_EQ(a.members[i].partition, b.members[i].partition);
            for (std::size_t j = 0; j < i; ++j)
                EXPECT_FALSE(a.members[i].partition.same_grouping(a.members[j].partition));
            if (algo != Algorithm::SNN) {
                EXPECT_TRUE(a.members[i].in_range);
                EXPECT_GE(a.members[i].k, 2);
                EXPECT_LE(a.members[i].k, 8);
            }
        }
    }
}

TEST(Population, TwentyBlobsMstContainsTruth) {
    auto ds = datagen::gen_blobs(20, 50, 10.0, 1);
    auto pop = generate_population(ds, Algorithm::MST, 20, 1);
    bool found = false;
    for (auto& m : pop.members) found = found || eval::ari(m.partition, *ds.truth()) == 1.0;
    EXPECT_TRUE(found);
}
