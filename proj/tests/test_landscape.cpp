#include <gtest/gtest.h>

#include <cstdlib>

#include "cantorland/landscape.hpp"

using namespace cantorland;

namespace {

const GroupSpec F2 = GroupSpec::free_group(2);
const GroupSpec Z = GroupSpec::integers();

std::vector<std::int64_t> ternary_numbers_up_to(std::int64_t limit)
{
    std::vector<std::int64_t> out{0};
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (std::int64_t d : {0, 3}) {
            const auto next = out[i] * 10 + d;
            if (next != 0 && next <= limit && std::find(out.begin(), out.end(), next) == out.end())
                out.push_back(next);
        }
    }
    return out;
}

// Brute force over ternary t <= 10^6: 1 + least k >= 0 with 10^k | t and |n - t| < 10^k.
int brute_ternary_height(std::int64_t n)
{
    static const auto ternary = ternary_numbers_up_to(1'000'000);
    const auto x = std::llabs(n);
    std::int64_t scale = 1;
    for (int k = 0; k < 8; ++k, scale *= 10)
        for (auto t : ternary)
            if (t % scale == 0 && std::llabs(x - t) < scale)
                return k + 1;
    return -1;
}

// Least k >= 1 with some ternary multiple t of 10^k and |n - t| <= 10^k:
// on the line, products of anchors 3 * 10^n are the ternary multiples of 10.
int brute_fractal_height(std::int64_t n)
{
    static const auto ternary = ternary_numbers_up_to(1'000'000);
    std::int64_t scale = 10;
    for (int k = 1; k < 8; ++k, scale *= 10)
        for (auto t : ternary)
            if (t % scale == 0 && std::llabs(n - t) <= scale)
                return k;
    return -1;
}

}  // namespace

TEST(Ternary, HeightOneOnTernaryNumbers)
{
    EXPECT_EQ(ternary_height(0), 1);
    EXPECT_EQ(ternary_height(3), 1);
    EXPECT_EQ(ternary_height(30), 1);
    EXPECT_EQ(ternary_height(303), 1);
}

TEST(Ternary, Examples)
{
    EXPECT_EQ(ternary_height(5), 2);
    EXPECT_EQ(ternary_height(150), 4);
    EXPECT_EQ(ternary_height(-5), 2);
}

TEST(Ternary, MatchesBruteForceOnSymmetricRange)
{
    for (std::int64_t n = -1000; n <= 1000; ++n)
        ASSERT_EQ(ternary_height(n), brute_ternary_height(n)) << n;
}

TEST(Ternary, SlopeBound)
{
    for (std::int64_t n = -20000; n < 20000; ++n)
        ASSERT_LE(std::abs(ternary_height(n) - ternary_height(n + 1)), 1) << n;
}

TEST(Fractal, IdentityHasHeightOne)
{
    const auto rule = fractal_landscape(F2, AnchorSet::powers(F2, 2));
    EXPECT_EQ(rule.height(identity(F2)), 1);
    const auto zrule = fractal_landscape(Z, AnchorSet::powers(Z, 3));
    EXPECT_EQ(zrule.height(identity(Z)), 1);
}

TEST(Fractal, LineMatchesIndependentFormula)
{
    const auto rule = fractal_landscape(Z, AnchorSet::powers(Z, 4));
    for (std::int64_t n = -1000; n <= 1000; ++n)
        ASSERT_EQ(rule.height(Word::power(Z, n)), brute_fractal_height(n)) << n;
}

TEST(Fractal, DiffersFromTernaryRule)
{
    const auto rule = fractal_landscape(Z, AnchorSet::powers(Z, 3));
    EXPECT_EQ(rule.height(Word::power(Z, 5)), 1);
    EXPECT_EQ(ternary_height(5), 2);
}

TEST(Fractal, NearQ1MeansHeightOne)
{
    const AnchorSet anchors = AnchorSet::powers(Z, 3);
    const FractalPoints points(Z, anchors);
    const auto rule = fractal_landscape(Z, anchors);
    const Window w(Z, 500);
    for (VertexId v = 0; v < w.size(); ++v) {
        const auto g = w.word(v);
        for (const auto& p : points.points())
            if (FractalPoints::in_level(p, 1) && dist(g, p.word) <= 10)
                ASSERT_EQ(rule.height(g), 1) << to_string(g);
    }
}

TEST(Fractal, AnchorBulletsHold)
{
    EXPECT_FALSE(check_anchor_bullets(FractalPoints(Z, AnchorSet::powers(Z, 4)), 4).has_value());
    EXPECT_FALSE(check_anchor_bullets(FractalPoints(F2, AnchorSet::powers(F2, 3)), 3).has_value());
}

TEST(Fractal, RejectsBadAnchors)
{
    AnchorSet bad;
    bad.anchors.push_back(Word::power(Z, 31));
    EXPECT_THROW(fractal_landscape(Z, bad), std::invalid_argument);
}

TEST(River, Heights)
{
    const auto rule = river_landscape();
    EXPECT_EQ(rule.height(identity(F2)), 1);
    EXPECT_EQ(rule.height(reduce(F2, {1, 1})), 1);
    EXPECT_EQ(rule.height(reduce(F2, {1})), 2);
    EXPECT_EQ(rule.height(reduce(F2, {1, 2})), 3);
    EXPECT_THROW(river_landscape(Z), std::invalid_argument);
    EXPECT_THROW(river_landscape(GroupSpec::free_group(1)), std::invalid_argument);
}

TEST(River, HeightIsDistanceToImagePlusOne)
{
    const Window w(F2, 7);
    const auto rule = river_landscape();
    std::vector<VertexId> image;
    for (VertexId v = 0; v < w.size(); ++v)
        if (river::on_river(w.word(v)))
            image.push_back(v);
    const auto d = w.bfs(image);
    for (VertexId v = 0; v < w.size(); ++v)
        ASSERT_EQ(rule.height(w.word(v)), d[v] + 1) << to_string(w.word(v));
}

TEST(River, ImagePointsHaveFourImageNeighbours)
{
    const Window w(F2, 8);
    for (VertexId v = 0; v < w.core_size(6); ++v) {
        if (!river::on_river(w.word(v)))
            continue;
        int count = 0;
        for (const auto& [u, d] : w.ball_around(v, 2))
            count += (d == 2 && river::on_river(w.word(u)));
        EXPECT_EQ(count, 4) << to_string(w.word(v));
    }
}

TEST(River, EmbeddingDoublesDistances)
{
    const Window w(F2, 4);
    for (VertexId a = 0; a < w.size(); a += 3)
        for (VertexId b = 0; b < w.size(); b += 5)
            EXPECT_EQ(dist(river::embed(w.word(a)), river::embed(w.word(b))), 2 * dist(w.word(a), w.word(b)));
}

TEST(Axioms, RiverSlopeOnBallOfRadiusEight)
{
    const Window w(F2, 8);
    const auto r = verify_axioms(river_landscape(), w);
    EXPECT_TRUE(r.pass);
    // Exhaustive edge scan, independent of the report.
    const auto h = river_landscape().heights(w);
    for (VertexId v = 0; v < w.size(); ++v)
        for (auto u : w.adjacency(v))
            ASSERT_LE(std::abs(h[u] - h[v]), 1);
}

TEST(Axioms, ConstantHeightFailsVisibility)
{
    const Window w(F2, 6);
    const auto r = verify_axioms(constant_landscape(F2, 1), w);
    ASSERT_FALSE(r.pass);
    EXPECT_EQ(r.violation->axiom, 4);
    EXPECT_EQ(r.violation->parameter, 2);
    EXPECT_FALSE(r.constants.M.empty());
    EXPECT_FALSE(r.constants.N.empty());
}

TEST(Axioms, SlopeViolationReported)
{
    const Window w(F2, 6);
    const LandscapeRule steep(Provenance::custom, F2, [](const Word& g) { return g.length() == 1 ? 3 : 1; });
    const auto r = verify_axioms(steep, w);
    ASSERT_FALSE(r.pass);
    EXPECT_EQ(r.violation->axiom, 1);
}

TEST(Axioms, TernaryVisibilityOfHeightTwo)
{
    const Window w(Z, 10000);
    const auto r = verify_axioms(ternary_landscape(), w);
    ASSERT_TRUE(r.pass);
    EXPECT_LE(r.constants.S.at(2), 40);
    // Direct scan on the line for each core point.
    const auto core = static_cast<std::int64_t>(r.constants.core_radius);
    for (int m = 2; m <= 3; ++m) {
        std::int64_t worst = 1;
        for (std::int64_t n = -core; n <= core; ++n) {
            std::int64_t d = 0;
            while (ternary_height(n - d) < m && ternary_height(n + d) < m)
                ++d;
            worst = std::max(worst, d);
        }
        EXPECT_EQ(r.constants.S.at(m), worst) << m;
    }
}

TEST(Axioms, ReportsAllConstantsAtLeastOne)
{
    const Window w(F2, 9);
    const auto r = verify_axioms(river_landscape(), w);
    ASSERT_TRUE(r.pass);
    for (const auto* t : {&r.constants.M, &r.constants.N, &r.constants.S})
        for (const auto& [k, v] : *t)
            EXPECT_GE(v, 1);
}

TEST(Components, TernaryHeightOneIsolated)
{
    const Window w(Z, 10000);
    const auto c = components_leq(ternary_landscape(), w, 1);
    EXPECT_LE(c.max_size, 3u);
    EXPECT_EQ(c.max_size, 1u);
}

TEST(Components, TernaryMatchesIntervalFormula)
{
    // {H <= n} is a union of intervals of length 2 * 10^(n-1) - 1 around ternary multiples of 10^(n-1).
    const Window w(Z, 10000);
    for (int n = 1; n <= 4; ++n) {
        const auto c = components_leq(ternary_landscape(), w, n);
        std::int64_t expected = 2;
        for (int i = 1; i < n; ++i)
            expected *= 10;
        EXPECT_EQ(static_cast<std::int64_t>(c.max_size), expected - 1) << n;
    }
}

TEST(Components, TernaryStabilizes)
{
    for (int n = 1; n <= 2; ++n) {
        const auto small = components_leq(ternary_landscape(), Window(Z, 1000), n).max_size;
        const auto large = components_leq(ternary_landscape(), Window(Z, 10000), n).max_size;
        EXPECT_EQ(small, large);
    }
}

TEST(Components, RiverIsNotHilly)
{
    const Window w(F2, 8);
    const auto rule = river_landscape();
    // The river itself is a discrete set (its points are two apart)...
    EXPECT_EQ(components_leq(rule, w, 1).max_size, 1u);
    // ...and its 1-neighbourhood is one connected piece spanning the core.
    const auto c2 = components_leq(rule, w, 2);
    EXPECT_EQ(c2.components.size(), 1u);
    const auto h = rule.heights(w);
    std::size_t low = 0;
    for (VertexId v = 0; v < w.size(); ++v)
        low += h[v] <= 2;
    EXPECT_EQ(c2.max_size, low);
}

TEST(Components, WholeCoreAboveMaxHeight)
{
    const Window w(F2, 5);
    const auto c = components_leq(river_landscape(), w, 6);
    EXPECT_EQ(c.components.size(), 1u);
    EXPECT_EQ(c.max_size, w.size());
}

TEST(Components, RejectsZero) { EXPECT_THROW(components_leq(river_landscape(), Window(F2, 2), 0), std::invalid_argument); }

TEST(Materialize, LabelsAndHeights)
{
    auto w = ball(F2, 4);
    const auto z = materialize(river_landscape(), w, 22);
    ASSERT_EQ(z.labels.size(), w->size());
    EXPECT_EQ(z.labels[0].size(), 22u);
    const auto padded = pad_even(z);
    EXPECT_EQ(padded.label_bits, 44u);
    for (VertexId v = 0; v < w->size(); ++v) {
        EXPECT_EQ(project_odd(padded.labels[v]), z.labels[v]);
        EXPECT_EQ(project_even(padded.labels[v]), BitString(22));
    }
}
