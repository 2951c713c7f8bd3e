#pragma once

// Seeded 2-D generators for four dataset families: Gaussian blobs, a nested
// hierarchy, elongated shapes, and mixed composites. Every point carries a
// ground-truth label.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include "dataset.hpp"
#include "rng.hpp"

namespace admissa::datagen {

namespace detail {

struct Builder {
    std::vector<double> flat;
    std::vector<int> labels;

    void add(double x, double y, int label) {
        flat.push_back(x);
        flat.push_back(y);
        labels.push_back(label);
    }

    void blob(Rng& rng, double cx, double cy, double sd, std::size_t count, int label) {
        for (std::size_t i = 0; i < count; ++i) {
            const double x = rng.normal(cx, sd);
            const double y = rng.normal(cy, sd);
            add(x, y, label);
        }
    }

    void box(Rng& rng, double x0, double y0, double side, std::size_t count, int label) {
        for (std::size_t i = 0; i < count; ++i) {
            const double x = rng.uniform(x0, x0 + side);
            const double y = rng.uniform(y0, y0 + side);
            add(x, y, label);
        }
    }

    /// Archimedean arm r = b * theta, rotated by `phase`, theta uniform in [t0, t1].
    void spiral_arm(Rng& rng, double cx, double cy, double b, double phase, double t0, double t1, double noise,
                    std::size_t count, int label) {
        for (std::size_t i = 0; i < count; ++i) {
            const double t = rng.uniform(t0, t1);
            const double r = b * t;
            const double nx = rng.normal(0.0, noise);
            const double ny = rng.normal(0.0, noise);
            add(cx + r * std::cos(t + phase) + nx, cy + r * std::sin(t + phase) + ny, label);
        }
    }

    Dataset build(std::string name) && {
        return Dataset(std::move(name), std::move(flat), 2, std::move(labels));
    }
};

} // namespace detail

/// Isotropic unit-variance blobs with centers on a square grid `separation` apart.
inline Dataset gen_blobs(int k_star, std::size_t per_cluster_n, double separation, std::uint64_t seed,
                         std::string name = "") {
    if (k_star < 2) throw UsageError("gen_blobs: k* must be at least 2");
    if (per_cluster_n < 1) throw UsageError("gen_blobs: per_cluster_n must be at least 1");
    if (!(separation >= 0.0)) throw UsageError("gen_blobs: separation must be non-negative");
    Rng rng(seed);
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(k_star))));
    detail::Builder b;
    for (int c = 0; c < k_star; ++c)
        b.blob(rng, separation * (c % cols), separation * (c / cols), 1.0, per_cluster_n, c);
    return std::move(b).build(name.empty() ? "blobs" : std::move(name));
}

enum class Elongated { Long, Spiral };

/// Two elongated clusters: parallel noisy strips, or two interleaved spiral arms.
inline Dataset gen_elongated(Elongated kind, std::size_t n, std::uint64_t seed, std::string name = "") {
    if (n < 20) throw UsageError("gen_elongated: n must be at least 20");
    Rng rng(seed);
    detail::Builder b;
    const std::size_t first = n / 2;
    if (kind == Elongated::Long) {
        for (std::size_t i = 0; i < n; ++i) {
            const int label = i < first ? 0 : 1;
            const double x = rng.uniform(0.0, 100.0);
            const double y = rng.normal(label == 0 ? 0.0 : 4.0, 0.1);
            b.add(x, y, label);
        }
        return std::move(b).build(name.empty() ? "long" : std::move(name));
    }
    b.spiral_arm(rng, 0.0, 0.0, 1.0, 0.0, std::numbers::pi / 2, 4.0 * std::numbers::pi, 0.05, first, 0);
    b.spiral_arm(rng, 0.0, 0.0, 1.0, std::numbers::pi, std::numbers::pi / 2, 4.0 * std::numbers::pi, 0.05, n - first, 1);
    return std::move(b).build(name.empty() ? "spiral" : std::move(name));
}

/// Thirteen blobs grouped into five mid-level groups and two top-level groups.
/// All levels share one point set; `level` picks 2, 5 or 13 labels.
inline Dataset gen_nested(int level, std::uint64_t seed, std::string name = "") {
    if (level < 1 || level > 3) throw UsageError("gen_nested: level must be 1, 2 or 3");
    struct Blob {
        double x, y;
        int mid, top;
    };
    // groups of 3, 3, 2 on the left, 3, 2 on the right
    static constexpr Blob layout[13] = {
        {0, 0, 0, 0},   {4, 0, 0, 0},   {2, 3.5, 0, 0},                      //
        {0, 14, 1, 0},  {4, 14, 1, 0},  {2, 17.5, 1, 0},                     //
        {14, 4, 2, 0},  {14, 10, 2, 0},                                      //
        {44, 0, 3, 1},  {48, 0, 3, 1},  {46, 3.5, 3, 1},                     //
        {44, 14, 4, 1}, {48, 14, 4, 1},
    };
    Rng rng(seed);
    detail::Builder b;
    for (int c = 0; c < 13; ++c) {
        const std::size_t count = 45 + (c < 3 ? 1 : 0); // 588 points
        const int label = level == 1 ? layout[c].top : level == 2 ? layout[c].mid : c;
        b.blob(rng, layout[c].x, layout[c].y, 0.5, count, label);
    }
    return std::move(b).build(name.empty() ? "nested_s" + std::to_string(level) : std::move(name));
}

enum class Recipe { ThreeMc, Aggregation, SpiralSquare };

inline Recipe parse_recipe(std::string_view id) {
    if (id == "3mc") return Recipe::ThreeMc;
    if (id == "aggregation") return Recipe::Aggregation;
    if (id == "spiralsquare") return Recipe::SpiralSquare;
    throw UsageError("unknown mixed recipe '" + std::string(id) + "'");
}

inline constexpr std::string_view recipe_id(Recipe r) {
    switch (r) {
    case Recipe::ThreeMc: return "3mc";
    case Recipe::Aggregation: return "aggregation";
    case Recipe::SpiralSquare: return "spiralsquare";
    }
    return "?";
}

/// Composites of blobs, rings, lines, boxes and spirals.
inline Dataset gen_mixed(Recipe recipe, std::uint64_t seed, std::string name = "") {
    Rng rng(seed);
    detail::Builder b;
    switch (recipe) {
    case Recipe::ThreeMc: {
        // a ring around a blob, and a separate bar (n = 400)
        for (int i = 0; i < 200; ++i) {
            const double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double r = rng.normal(10.0, 0.3);
            b.add(r * std::cos(t), r * std::sin(t), 0);
        }
        b.blob(rng, 0.0, 0.0, 1.0, 100, 1);
        for (int i = 0; i < 100; ++i) b.add(rng.uniform(16.0, 30.0), rng.normal(0.0, 0.3), 2);
        break;
    }
    case Recipe::Aggregation: {
        // seven blobs of uneven size; blobs 0 and 1 joined by a thin bridge (n = 788)
        struct B {
            double x, y, sd;
            std::size_t count;
        };
        static constexpr B blobs[7] = {{0, 0, 1.0, 150}, {12, 0, 1.0, 150}, {0, 14, 1.2, 170}, {14, 14, 0.8, 100},
                                       {28, 2, 0.7, 60},  {28, 14, 0.9, 80}, {22, 26, 0.6, 38}};
        for (int c = 0; c < 7; ++c) b.blob(rng, blobs[c].x, blobs[c].y, blobs[c].sd, blobs[c].count, c);
        for (int i = 0; i < 40; ++i) {
            const double x = 2.5 + 7.0 * (i + 0.5) / 40.0;
            b.add(x, rng.normal(0.0, 0.08), x < 6.0 ? 0 : 1);
        }
        break;
    }
    case Recipe::SpiralSquare: {
        // two spiral arms and four uniform squares (n = 2000)
        b.spiral_arm(rng, 0.0, 0.0, 1.0, 0.0, std::numbers::pi / 2, 3.0 * std::numbers::pi, 0.05, 500, 0);
        b.spiral_arm(rng, 0.0, 0.0, 1.0, std::numbers::pi, std::numbers::pi / 2, 3.0 * std::numbers::pi, 0.05, 500, 1);
        b.box(rng, 16.0, -10.0, 6.0, 250, 2);
        b.box(rng, 16.0, 4.0, 6.0, 250, 3);
        b.box(rng, 26.0, -10.0, 6.0, 250, 4);
        b.box(rng, 26.0, 4.0, 6.0, 250, 5);
        break;
    }
    }
    return std::move(b).build(name.empty() ? std::string(recipe_id(recipe)) : std::move(name));
}

enum class Archetype { GaussianBlobs, Nested, Elongated, Mixed };

inline Archetype parse_archetype(std::string_view id) {
    if (id == "gaussian_blobs") return Archetype::GaussianBlobs;
    if (id == "nested") return Archetype::Nested;
    if (id == "elongated") return Archetype::Elongated;
    if (id == "mixed") return Archetype::Mixed;
    throw UsageError("unknown archetype '" + std::string(id) + "'");
}

inline constexpr std::string_view archetype_id(Archetype a) {
    switch (a) {
    case Archetype::GaussianBlobs: return "gaussian_blobs";
    case Archetype::Nested: return "nested";
    case Archetype::Elongated: return "elongated";
    case Archetype::Mixed: return "mixed";
    }
    return "?";
}

/// Dataset group of an archetype: G1 blobs, G2 nested, G3 elongated, G4 mixed.
inline constexpr std::string_view group_of(Archetype a) {
    switch (a) {
    case Archetype::GaussianBlobs: return "G1";
    case Archetype::Nested: return "G2";
    case Archetype::Elongated: return "G3";
    case Archetype::Mixed: return "G4";
    }
    return "?";
}

struct GeneratorSpec {
    Archetype archetype = Archetype::GaussianBlobs;
    std::string name;
    std::uint64_t seed = 0;
    int k_star = 3;                 // blobs
    std::size_t per_cluster_n = 50; // blobs
    double separation = 10.0;       // blobs
    std::size_t n = 1000;           // elongated
    Elongated kind = Elongated::Long;
    int level = 1; // nested
    Recipe recipe = Recipe::ThreeMc;
};

inline Dataset generate(const GeneratorSpec& s) {
    switch (s.archetype) {
    case Archetype::GaussianBlobs: return gen_blobs(s.k_star, s.per_cluster_n, s.separation, s.seed, s.name);
    case Archetype::Nested: return gen_nested(s.level, s.seed, s.name);
    case Archetype::Elongated: return gen_elongated(s.kind, s.n, s.seed, s.name);
    case Archetype::Mixed: return gen_mixed(s.recipe, s.seed, s.name);
    }
    throw InvariantError("unhandled archetype");
}

} // namespace admissa::datagen
