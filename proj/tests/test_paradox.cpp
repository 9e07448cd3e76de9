#include <gtest/gtest.h>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/max_cardinality_matching.hpp>

#include <numeric>
#include <random>
#include <set>

#include "cantorland/cheeger.hpp"
#include "cantorland/paradox.hpp"

using namespace cantorland;

namespace {

const GroupSpec F2 = GroupSpec::free_group(2);

std::size_t boost_matching_size(const std::vector<std::vector<std::uint32_t>>& adj, std::uint32_t right)
{
    using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    const auto left = adj.size();
    Graph g(left + right);
    for (std::size_t l = 0; l < left; ++l)
        for (auto r : adj[l])
            boost::add_edge(l, left + r, g);
    std::vector<boost::graph_traits<Graph>::vertex_descriptor> mate(left + right);
    boost::edmonds_maximum_cardinality_matching(g, &mate[0]);
    return boost::matching_size(g, &mate[0]);
}

std::shared_ptr<const Window> f2_ball(std::size_t r) { return ball(F2, r); }

// River landscape with padded labels of the given final length.
Landscape padded_river(std::size_t radius, std::size_t final_bits = 256)
{
    return pad_even(materialize(river_landscape(), f2_ball(radius), final_bits / 2));
}

LocalSet height_one_target(const Landscape& z, std::size_t m) { return LocalSet::explicit_set(m, observed_patterns(z, m, 1, 1)); }

void expect_valid_doubling(const DoublingMaps& maps, const std::vector<VertexId>& t, const Window& w)
{
    ASSERT_EQ(maps.status, DoublingStatus::saturated);
    std::set<VertexId> tset(t.begin(), t.end()), images;
    std::vector<VertexId> expected_domain;
    for (auto v : t)
        if (w.length(v) <= maps.core_radius)
            expected_domain.push_back(v);
    EXPECT_EQ(maps.domain, expected_domain);
    for (std::size_t i = 0; i < maps.domain.size(); ++i) {
        for (auto y : {maps.phi[i], maps.psi[i]}) {
            EXPECT_TRUE(tset.count(y));
            EXPECT_TRUE(images.insert(y).second) << "image used twice";
            EXPECT_LT(dist(w.word(y), w.word(maps.domain[i])), maps.K);
        }
    }
}

}  // namespace

TEST(Matching, AgreesWithEdmondsOnRandomBipartiteGraphs)
{
    std::mt19937 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint32_t left = rng() % 40 + 1, right = rng() % 40 + 1;
        std::bernoulli_distribution edge((rng() % 20 + 1) / 100.0);
        std::vector<std::vector<std::uint32_t>> adj(left);
        for (std::uint32_t l = 0; l < left; ++l)
            for (std::uint32_t r = 0; r < right; ++r)
                if (edge(rng))
                    adj[l].push_back(r);
        const BipartiteMatching hk(adj, right);
        ASSERT_EQ(hk.size(), boost_matching_size(adj, right)) << trial;
        for (std::uint32_t l = 0; l < left; ++l) {
            const auto r = hk.left_partners()[l];
            if (r == BipartiteMatching::kFree)
                continue;
            EXPECT_EQ(hk.right_partners()[r], l);
            EXPECT_NE(std::find(adj[l].begin(), adj[l].end(), r), adj[l].end());
        }
    }
}

TEST(Matching, SaturationOfPerfectMatching)
{
    std::vector<std::vector<std::uint32_t>> adj{{0, 1}, {0}, {2}};
    const BipartiteMatching hk(adj, 3);
    EXPECT_TRUE(hk.saturates_left());
    EXPECT_EQ(hk.left_partners()[1], 0u);
    const BipartiteMatching starved({{0}, {0}}, 1);
    EXPECT_FALSE(starved.saturates_left());
    EXPECT_EQ(starved.size(), 1u);
}

TEST(Covering, Basics)
{
    const Window w(F2, 5);
    EXPECT_FALSE(covering_radius({}, w, 5).has_value());
    std::vector<VertexId> all(w.size());
    std::iota(all.begin(), all.end(), 0);
    EXPECT_EQ(covering_radius(all, w, 5), 0);
    EXPECT_EQ(covering_radius({0}, w, 5), 5);
}

TEST(Covering, RiverRadiusIsLargestCoreHeightMinusOne)
{
    const auto w = f2_ball(8);
    const auto h = river_landscape().heights(*w);
    std::vector<VertexId> t;
    for (VertexId v = 0; v < w->size(); ++v)
        if (h[v] == 1)
            t.push_back(v);
    for (std::size_t core = 0; core <= 8; ++core) {
        int expected = 0;
        for (VertexId v = 0; v < w->core_size(core); ++v)
            expected = std::max(expected, h[v] - 1);
        EXPECT_EQ(covering_radius(t, *w, core), expected) << core;
    }
    EXPECT_GT(covering_radius(t, *w, 6).value(), 1);
}

TEST(Covering, HighGroundMatchesDirectScan)
{
    const auto w = f2_ball(6);
    const auto h = river_landscape().heights(*w);
    std::vector<VertexId> t;
    for (VertexId v = 0; v < w->size(); ++v)
        if (h[v] >= 3)
            t.push_back(v);
    std::size_t expected = 0;
    for (VertexId v = 0; v < w->core_size(3); ++v) {
        std::size_t nearest = SIZE_MAX;
        for (auto u : t)
            nearest = std::min(nearest, dist(w->word(u), w->word(v)));
        expected = std::max(expected, nearest);
    }
    EXPECT_EQ(covering_radius(t, *w, 3), static_cast<int>(expected));
}

TEST(SetGraphs, RiverGraphIsOneFourRegularComponent)
{
    const auto w = f2_ball(8);
    std::vector<VertexId> t;
    for (VertexId v = 0; v < w->size(); ++v)
        if (river::on_river(w->word(v)))
            t.push_back(v);
    const auto g = river_graph(t, *w, 6);
    EXPECT_EQ(g.components, 1u);
    EXPECT_EQ(g.core_components, 1u);
    EXPECT_EQ(g.max_degree, 4u);
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i)
        if (w->length(g.vertices[i]) <= 6)
            EXPECT_EQ(g.adjacency[i].size(), 4u);
    // A tree: edges = vertices - 1.
    EXPECT_EQ(g.edges, g.vertices.size() - 1);
}

TEST(SetGraphs, BuildGTUsesThreeTimesCovering)
{
    const auto w = f2_ball(6);
    const std::vector<VertexId> t{0, 1, 5};
    const auto g = build_GT(t, 1, *w, 6);
    EXPECT_EQ(g.threshold, 3u);
    EXPECT_EQ(g.edges, 3u);
    const auto g0 = build_GT(t, 0, *w, 6);
    EXPECT_EQ(g0.edges, 0u);
    EXPECT_EQ(g0.components, 3u);
}

TEST(Doubling, EmptyTarget)
{
    const auto w = f2_ball(5);
    const auto maps = find_doubling({}, *w, 1);
    EXPECT_EQ(maps.status, DoublingStatus::empty);
    EXPECT_EQ(maps.core_radius, 4u);
}

TEST(Doubling, RiverHeightOnePoints)
{
    const auto z = materialize(river_landscape(), f2_ball(10), 22);
    const auto target = height_one_target(z, 1);
    const auto t = realize(target, z);
    const auto maps = find_doubling(t, *z.window, 1);
    expect_valid_doubling(maps, t, *z.window);
    EXPECT_LE(maps.K, 6u);
}

TEST(Doubling, WholeBall)
{
    const auto w = f2_ball(8);
    std::vector<VertexId> t(w->size());
    std::iota(t.begin(), t.end(), 0);
    const auto maps = find_doubling(t, *w, 0);
    expect_valid_doubling(maps, t, *w);
    EXPECT_LE(maps.K, 4u);
}

TEST(Doubling, LeastSaturatingK)
{
    const auto w = f2_ball(8);
    std::vector<VertexId> t(w->size());
    std::iota(t.begin(), t.end(), 0);
    const auto maps = find_doubling(t, *w, 0);
    ASSERT_EQ(maps.status, DoublingStatus::saturated);
    if (maps.K > 2) {
        const auto below = find_doubling(t, *w, 0, {2, maps.K - 1});
        EXPECT_EQ(below.status, DoublingStatus::inconclusive);
        EXPECT_LT(below.matched_fraction, 1.0);
    }
    const auto again = find_doubling(t, *w, 0, {maps.K, maps.K});
    EXPECT_EQ(again.status, DoublingStatus::saturated);
    EXPECT_EQ(again.phi, maps.phi);
}

TEST(Doubling, SinglePointIsInconclusive)
{
    const auto w = f2_ball(6);
    const auto maps = find_doubling({0}, *w, 0);
    EXPECT_EQ(maps.status, DoublingStatus::inconclusive);
    EXPECT_DOUBLE_EQ(maps.matched_fraction, 0.5);
}

TEST(Pieces, TranslatorsGroupTheMaps)
{
    const auto w = f2_ball(4);
    DoublingMaps maps;
    maps.status = DoublingStatus::saturated;
    maps.domain = {0, 1};
    maps.phi = {0, 1};                                     // identity
    maps.psi = {*w->find(reduce(F2, {2})), *w->find(reduce(F2, {1, 2}))};  // x -> x b
    const auto split = extract_pieces(maps, *w);
    EXPECT_EQ(split.p, 1u);
    EXPECT_EQ(split.q, 1u);
    ASSERT_EQ(split.pieces.size(), 2u);
    EXPECT_TRUE(split.pieces[0].translator.is_identity());
    EXPECT_EQ(split.pieces[1].translator, reduce(F2, {-2}));
    // gamma * member recovers the domain point.
    for (std::size_t i = 0; i < 2; ++i)
        EXPECT_EQ(mul(w->word(maps.psi[i]), split.pieces[1].translator), w->word(maps.domain[i]));
}

TEST(Relabel, WritesMembershipOnEvenChannels)
{
    const auto z = padded_river(5, 64);
    const std::vector<std::vector<VertexId>> pieces{{0, 3}, {7}, {}};
    RelabelPlan plan;
    const auto out = relabel(z, pieces, 5, &plan);
    EXPECT_EQ(plan.channels, (std::vector<std::size_t>{6, 8, 10}));
    EXPECT_EQ(out.channel_ceiling, 10u);
    for (VertexId v = 0; v < z.window->size(); ++v) {
        EXPECT_EQ(out.labels[v].prefix(5), z.labels[v].prefix(5));
        EXPECT_EQ(project_odd(out.labels[v]), project_odd(z.labels[v]));
        EXPECT_EQ(out.labels[v].at(6), v == 0 || v == 3);
        EXPECT_EQ(out.labels[v].at(8), v == 7);
        EXPECT_FALSE(out.labels[v].at(10));
        EXPECT_EQ(out.heights[v], z.heights[v]);
    }
    EXPECT_THROW(relabel(out, pieces, 9, nullptr), ChannelCollision);
    EXPECT_NO_THROW(relabel(out, pieces, 10, nullptr));
    EXPECT_THROW(relabel(out, std::vector<std::vector<VertexId>>(40), 10, nullptr), BudgetError);
    EXPECT_EQ(plan_channels(4, 2).channels, (std::vector<std::size_t>{6, 8}));
}

TEST(Certificate, TrivialForEmptyTarget)
{
    const auto z = padded_river(5, 64);
    const auto c = trivial_certificate(LocalSet::explicit_set(2), *z.window);
    EXPECT_EQ(c.p, 0u);
    EXPECT_EQ(c.q, 1u);
    EXPECT_EQ(c.core_radius, 3u);
    EXPECT_TRUE(verify_certificate(z, c).pass);
}

TEST(Certificate, RiverCertificatePassesAndMutationsFail)
{
    const auto z = padded_river(9);
    const auto target = height_one_target(z, 1);
    const auto step = paradoxicalize(z, target, 1);
    ASSERT_TRUE(step.certificate.has_value());
    const auto& cert = *step.certificate;
    const auto report = verify_certificate(step.relabeled, cert);
    EXPECT_TRUE(report.pass) << report.first_failure();
    EXPECT_EQ(report.clauses.size(), 3u);
    EXPECT_GE(cert.p, 1u);
    EXPECT_GE(cert.q, 1u);

    // The relabeling is what makes the pieces visible.
    EXPECT_FALSE(verify_certificate(z, cert).pass);

    auto bad_translator = cert;
    bad_translator.translators[0] = mul(bad_translator.translators[0], generator(F2, 2));
    const auto r1 = verify_certificate(step.relabeled, bad_translator);
    EXPECT_FALSE(r1.pass);
    EXPECT_FALSE(r1.first_failure().empty());

    auto swapped = cert;
    std::swap(swapped.pieces.front(), swapped.pieces.back());
    EXPECT_FALSE(verify_certificate(step.relabeled, swapped).pass);

    auto shared = cert;
    shared.pieces[1] = shared.pieces[0];
    const auto r2 = verify_certificate(step.relabeled, shared);
    EXPECT_FALSE(r2.clauses[1].pass);

    auto outside = cert;
    outside.pieces[0] = LocalSet::cylinder(cert.l, 1, 100);
    EXPECT_FALSE(verify_certificate(step.relabeled, outside).clauses[0].pass);

    auto miscounted = cert;
    miscounted.p += 1;
    EXPECT_THROW(verify_certificate(step.relabeled, miscounted), std::invalid_argument);

    EXPECT_THROW(verify_certificate(padded_river(8), cert), WindowMismatch);
}

TEST(Pipeline, SingleTarget)
{
    const auto z = padded_river(9);
    const auto r = paradoxicalize_sequence(z, {height_one_target(z, 1)});
    ASSERT_FALSE(r.halted) << r.halt_reason;
    ASSERT_EQ(r.certificates.size(), 1u);
    EXPECT_TRUE(r.all_pass());
    EXPECT_TRUE(r.certificates[0].verification->pass);
}

TEST(Pipeline, EmptySecondTarget)
{
    const auto z = padded_river(9);
    const auto r = paradoxicalize_sequence(z, {LocalSet::explicit_set(2), height_one_target(z, 1)});
    ASSERT_FALSE(r.halted) << r.halt_reason;
    ASSERT_EQ(r.certificates.size(), 2u);
    EXPECT_EQ(r.targets[0].m, 1u);
    EXPECT_EQ(r.maps[1].status, DoublingStatus::empty);
    EXPECT_EQ(r.certificates[1].p, 0u);
    EXPECT_TRUE(r.all_pass());
}

TEST(Pipeline, ThreeTargetsStayValid)
{
    const auto z = padded_river(10);
    std::vector<LocalSet> targets{
        LocalSet::explicit_set(1, observed_patterns(z, 1, 2, 2)),
        height_one_target(z, 2),
        height_one_target(z, 1),
    };
    const auto r = paradoxicalize_sequence(z, targets);
    ASSERT_FALSE(r.halted) << r.halt_reason;
    ASSERT_EQ(r.matrix.size(), 3u);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t k = 0; k < 3; ++k) {
            if (k < a)
                EXPECT_FALSE(r.matrix[a][k].has_value());
            else
                EXPECT_EQ(r.matrix[a][k], std::optional<bool>(true)) << a << "," << k;
        }
    // Channels of later steps sit above earlier ones.
    for (std::size_t k = 1; k < 3; ++k)
        if (!r.certificates[k].channels.empty() && !r.certificates[k - 1].channels.empty())
            EXPECT_GT(r.certificates[k].channels.front(), r.certificates[k - 1].channels.back());
    // Odd label positions never change.
    for (VertexId v = 0; v < z.window->size(); ++v)
        ASSERT_EQ(project_odd(r.final.labels[v]), project_odd(z.labels[v]));
}

TEST(Pipeline, HaltsWhenInconclusive)
{
    // Mark the identity alone on channel 2, then ask to double that single point.
    const auto z = relabel(padded_river(6), {{0}}, 1);
    const auto target = LocalSet::cylinder(2, 2, 100);
    ASSERT_EQ(realize(target, z), std::vector<VertexId>{0});
    PipelineOptions opts;
    opts.doubling.k_ceiling = 3;
    const auto r = paradoxicalize_sequence(z, {target}, opts);
    EXPECT_TRUE(r.halted);
    EXPECT_FALSE(r.all_pass());
    EXPECT_TRUE(r.certificates.empty());
    EXPECT_FALSE(r.halt_reason.empty());
}

TEST(Cheeger, SpectralBoundHoldsForSubsets)
{
    const auto w = f2_ball(8);
    std::vector<VertexId> t;
    for (VertexId v = 0; v < w->size(); ++v)
        if (river::on_river(w->word(v)))
            t.push_back(v);
    const auto g = river_graph(t, *w, 6);
    const auto est = cheeger_lower_bound(g, *w, 6);
    ASSERT_TRUE(est.has_value());
    EXPECT_GT(est->interior, 0u);
    EXPECT_GE(est->edge_bound, 0.0);
    std::vector<std::uint32_t> inner;
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i)
        if (w->length(g.vertices[i]) <= 6)
            inner.push_back(i);
    std::mt19937 rng(2);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<char> in(g.vertices.size(), 0);
        std::size_t size = 0;
        std::bernoulli_distribution pick((trial % 9 + 1) / 10.0);
        for (auto i : inner)
            if (pick(rng)) {
                in[i] = 1;
                ++size;
            }
        std::size_t boundary = 0;
        for (auto i : inner)
            if (in[i])
                for (auto j : g.adjacency[i])
                    boundary += !in[j];
        EXPECT_GE(static_cast<double>(boundary) + 1e-9, est->edge_bound * static_cast<double>(size));
    }
    EXPECT_FALSE(cheeger_lower_bound(river_graph({}, *w, 6), *w, 6).has_value());
}
