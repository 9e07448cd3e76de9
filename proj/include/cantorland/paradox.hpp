#pragma once

// Doubling maps by bounded-displacement matching, translator pieces,
// relabeling onto fresh even channels, and the step-by-step pipeline.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorland/certificate.hpp"
#include "cantorland/checker.hpp"
#include "cantorland/matching.hpp"
#include "cantorland/patterns.hpp"

namespace cantorland {

/// Least R such that every core vertex has a T point within R, searched in the
/// whole window. nullopt when T is empty or misses some core vertex entirely.
inline std::optional<int> covering_radius(const std::vector<VertexId>& t, const Window& window, std::size_t core_radius)
{
    if (t.empty())
        return std::nullopt;
    const auto d = window.bfs(t);
    int worst = 0;
    for (VertexId v = 0; v < window.core_size(core_radius); ++v) {
        if (d[v] < 0)
            return std::nullopt;
        worst = std::max(worst, d[v]);
    }
    return worst;
}

/// A graph on a vertex subset: members joined when their distance is at most
/// the threshold.
struct SetGraph {
    std::vector<VertexId> vertices;
    std::vector<std::vector<std::uint32_t>> adjacency;  ///< indices into vertices
    std::size_t threshold = 0;
    std::size_t edges = 0;
    std::size_t max_degree = 0;
    std::size_t components = 0;
    std::size_t core_components = 0;  ///< components meeting the core
};

inline SetGraph distance_graph(const std::vector<VertexId>& members, const Window& window, std::size_t threshold,
                               std::size_t core_radius)
{
    SetGraph g;
    g.vertices = members;
    std::sort(g.vertices.begin(), g.vertices.end());
    g.threshold = threshold;
    std::vector<std::uint32_t> slot(window.size(), BipartiteMatching::kFree);
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i)
        slot[g.vertices[i]] = i;
    g.adjacency.resize(g.vertices.size());
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i) {
        for (const auto& [u, d] : window.ball_around(g.vertices[i], static_cast<int>(threshold)))
            if (d > 0 && slot[u] != BipartiteMatching::kFree)
                g.adjacency[i].push_back(slot[u]);
        std::sort(g.adjacency[i].begin(), g.adjacency[i].end());
        g.edges += g.adjacency[i].size();
        g.max_degree = std::max(g.max_degree, g.adjacency[i].size());
    }
    g.edges /= 2;
    std::vector<std::uint32_t> comp(g.vertices.size(), BipartiteMatching::kFree);
    for (std::uint32_t s = 0; s < g.vertices.size(); ++s) {
        if (comp[s] != BipartiteMatching::kFree)
            continue;
        const auto id = static_cast<std::uint32_t>(g.components++);
        std::vector<std::uint32_t> stack{s};
        comp[s] = id;
        bool meets_core = false;
        while (!stack.empty()) {
            const auto x = stack.back();
            stack.pop_back();
            meets_core = meets_core || window.length(g.vertices[x]) <= core_radius;
            for (auto y : g.adjacency[x])
                if (comp[y] == BipartiteMatching::kFree) {
                    comp[y] = id;
                    stack.push_back(y);
                }
        }
        g.core_components += meets_core;
    }
    return g;
}

/// G_T: members of T adjacent when d <= 3 R_T.
inline SetGraph build_GT(const std::vector<VertexId>& t, int covering, const Window& window, std::size_t core_radius)
{
    return distance_graph(t, window, 3 * static_cast<std::size_t>(covering), core_radius);
}

/// The river graph: river points adjacent when d <= C.
inline SetGraph river_graph(const std::vector<VertexId>& river_points, const Window& window, std::size_t core_radius)
{
    return distance_graph(river_points, window, river::kBilipschitz, core_radius);
}

enum class DoublingStatus { empty, saturated, inconclusive };

inline std::string to_string(DoublingStatus s)
{
    switch (s) {
    case DoublingStatus::empty: return "empty";
    case DoublingStatus::saturated: return "saturated";
    case DoublingStatus::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct DoublingOptions {
    std::size_t k_start = 2;
    std::size_t k_ceiling = 6;
};

/// phi, psi : T_core -> T, injective with disjoint images and d(x, phi x) < K.
/// T_core = T n B_{R - m - (K - 1)}, so every candidate image lies where T
/// was realized.
struct DoublingMaps {
    DoublingStatus status = DoublingStatus::inconclusive;
    std::size_t K = 0;
    std::size_t core_radius = 0;
    std::vector<VertexId> domain;
    std::vector<VertexId> phi;
    std::vector<VertexId> psi;
    double matched_fraction = 0.0;  ///< best fraction of the 2|T_core| copies matched
    std::size_t best_K = 0;
};

/// t: the realized set on B_{R-m}, in enumeration order.
inline DoublingMaps find_doubling(const std::vector<VertexId>& t, const Window& window, std::size_t m,
                                  const DoublingOptions& options = {})
{
    DoublingMaps out;
    if (t.empty()) {
        out.status = DoublingStatus::empty;
        out.core_radius = window.radius() >= m ? window.radius() - m : 0;
        out.matched_fraction = 1.0;
        return out;
    }
    if (window.radius() < m)
        throw CollarError("window radius below the target radius");
    const auto realized = window.radius() - m;
    std::vector<std::uint32_t> slot(window.size(), BipartiteMatching::kFree);
    for (std::uint32_t i = 0; i < t.size(); ++i) {
        if (window.length(t[i]) > realized)
            throw std::invalid_argument("T has a member outside B_" + std::to_string(realized));
        slot[t[i]] = i;
    }
    const auto last_k = std::min(options.k_ceiling, realized + 1);
    for (std::size_t k = std::max<std::size_t>(options.k_start, 1); k <= last_k; ++k) {
        const auto core = realized - (k - 1);
        std::vector<VertexId> domain;
        for (auto v : t)
            if (window.length(v) <= core)
                domain.push_back(v);
        if (domain.empty())
            continue;
        std::vector<std::vector<std::uint32_t>> adj;
        adj.reserve(2 * domain.size());
        for (auto x : domain) {
            std::vector<std::uint32_t> near;
            for (const auto& [u, d] : window.ball_around(x, static_cast<int>(k) - 1))
                if (slot[u] != BipartiteMatching::kFree)
                    near.push_back(slot[u]);
            std::sort(near.begin(), near.end());
            adj.push_back(near);
            adj.push_back(std::move(near));
        }
        const BipartiteMatching matching(std::move(adj), static_cast<std::uint32_t>(t.size()));
        const double fraction = static_cast<double>(matching.size()) / static_cast<double>(2 * domain.size());
        if (fraction > out.matched_fraction || out.best_K == 0) {
            out.matched_fraction = fraction;
            out.best_K = k;
        }
        if (matching.saturates_left()) {
            out.status = DoublingStatus::saturated;
            out.K = k;
            out.core_radius = core;
            out.domain = std::move(domain);
            const auto& partner = matching.left_partners();
            for (std::size_t i = 0; i < out.domain.size(); ++i) {
                out.phi.push_back(t[partner[2 * i]]);
                out.psi.push_back(t[partner[2 * i + 1]]);
            }
            out.matched_fraction = 1.0;
            out.best_K = k;
            return out;
        }
    }
    out.status = DoublingStatus::inconclusive;
    return out;
}

struct Piece {
    Word translator;
    std::vector<VertexId> members;
};

/// Pieces grouped by translator gamma = phi(x)^-1 x: the phi pieces, then the
/// psi pieces, each sorted by translator in enumeration order.
struct PieceSplit {
    std::vector<Piece> pieces;
    std::size_t p = 0;
    std::size_t q = 0;
};

inline PieceSplit extract_pieces(const DoublingMaps& maps, const Window& window)
{
    PieceSplit out;
    for (const auto* images : {&maps.phi, &maps.psi}) {
        std::map<Word, std::vector<VertexId>> by_translator;
        for (std::size_t i = 0; i < maps.domain.size(); ++i) {
            const auto y = (*images)[i];
            by_translator[mul(inverse(window.word(y)), window.word(maps.domain[i]))].push_back(y);
        }
        for (auto& [g, members] : by_translator) {
            std::sort(members.begin(), members.end());
            out.pieces.push_back({g, std::move(members)});
        }
        (images == &maps.phi ? out.p : out.q) = by_translator.size();
    }
    return out;
}

class ChannelCollision : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RelabelPlan {
    std::size_t floor = 0;  ///< m'
    std::vector<std::size_t> channels;
};

/// Even positions a_1 < ... < a_n above m'.
inline RelabelPlan plan_channels(std::size_t m_prime, std::size_t count)
{
    RelabelPlan plan;
    plan.floor = m_prime;
    std::size_t a = (m_prime % 2 == 0) ? m_prime + 2 : m_prime + 1;
    for (std::size_t i = 0; i < count; ++i, a += 2)
        plan.channels.push_back(a);
    return plan;
}

/// Writes membership of the i-th piece at channel a_i: 1 on members, 0 on
/// every other vertex. Positions up to m' and all odd positions are kept.
inline Landscape relabel(const Landscape& z, const std::vector<std::vector<VertexId>>& pieces, std::size_t m_prime,
                         RelabelPlan* plan_out = nullptr)
{
    if (m_prime < z.channel_ceiling)
        throw ChannelCollision("floor " + std::to_string(m_prime) + " is below the occupied channel ceiling " +
                               std::to_string(z.channel_ceiling));
    const auto plan = plan_channels(m_prime, pieces.size());
    if (!plan.channels.empty() && plan.channels.back() > z.label_bits)
        throw BudgetError("relabeling needs channel " + std::to_string(plan.channels.back()) + " but labels have " +
                          std::to_string(z.label_bits) + " bits");
    Landscape out = z;
    out.provenance = Provenance::relabeled;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto a = plan.channels[i];
        for (auto& label : out.labels)
            label.set(a, false);
        for (auto v : pieces[i])
            out.labels[v].set(a, true);
    }
    if (!plan.channels.empty())
        out.channel_ceiling = plan.channels.back();
    if (plan_out)
        *plan_out = plan;
    return out;
}

/// The certificate of an empty realization: p = 0, q = 1, one empty piece.
inline DoublingCertificate trivial_certificate(const LocalSet& target, const Window& window)
{
    DoublingCertificate c;
    c.spec = window.spec();
    c.window_radius = window.radius();
    c.m = target.m;
    c.target = target;
    c.l = target.m;
    c.p = 0;
    c.q = 1;
    c.pieces = {LocalSet::explicit_set(target.m)};
    c.translators = {identity(window.spec())};
    c.core_radius = local_core_radius(target, window);
    return c;
}

struct Paradoxicalization {
    DoublingMaps maps;
    Landscape relabeled;
    std::optional<DoublingCertificate> certificate;  ///< absent when inconclusive
};

/// Realize, double, cut into pieces and relabel for one target.
inline Paradoxicalization paradoxicalize(const Landscape& z, const LocalSet& target, std::size_t m_prime,
                                         const DoublingOptions& options = {})
{
    Paradoxicalization out;
    const auto& window = *z.window;
    const auto t = realize(target, z);
    out.maps = find_doubling(t, window, target.support_radius(), options);
    if (out.maps.status == DoublingStatus::inconclusive) {
        out.relabeled = z;
        return out;
    }
    if (out.maps.status == DoublingStatus::empty) {
        out.relabeled = z;
        out.certificate = trivial_certificate(target, window);
        return out;
    }
    const auto split = extract_pieces(out.maps, window);
    std::vector<std::vector<VertexId>> members;
    for (const auto& piece : split.pieces)
        members.push_back(piece.members);
    RelabelPlan plan;
    out.relabeled = relabel(z, members, m_prime, &plan);

    DoublingCertificate c;
    c.spec = window.spec();
    c.window_radius = window.radius();
    c.m = target.m;
    c.target = target;
    c.K = out.maps.K;
    c.p = split.p;
    c.q = split.q;
    c.channels = plan.channels;
    c.l = std::max(target.m + 1, plan.channels.empty() ? 0 : plan.channels.back());
    for (std::size_t i = 0; i < split.pieces.size(); ++i) {
        Height top = 1;
        for (auto v : split.pieces[i].members)
            top = std::max(top, z.heights[v]);
        c.pieces.push_back(LocalSet::cylinder(c.l, plan.channels[i], top));
        c.translators.push_back(split.pieces[i].translator);
    }
    c.core_radius = out.maps.core_radius;
    out.certificate = std::move(c);
    return out;
}

struct PipelineOptions {
    DoublingOptions doubling;
};

struct PipelineResult {
    Landscape initial;
    Landscape final;
    std::vector<LocalSet> targets;  ///< in processing order
    std::vector<DoublingCertificate> certificates;
    std::vector<DoublingMaps> maps;
    /// matrix[a][k] for k >= a: certificate a checked against the rule after step k.
    std::vector<std::vector<std::optional<bool>>> matrix;
    bool halted = false;
    std::string halt_reason;

    bool all_pass() const
    {
        if (halted)
            return false;
        for (const auto& row : matrix)
            for (const auto& cell : row)
                if (cell && !*cell)
                    return false;
        return true;
    }
};

/// Sorts the targets canonically and processes them in turn, each on fresh
/// channels above every earlier one. After step k every earlier certificate
/// is checked again against the new rule.
inline PipelineResult paradoxicalize_sequence(const Landscape& z0, std::vector<LocalSet> targets,
                                              const PipelineOptions& options = {})
{
    std::stable_sort(targets.begin(), targets.end(), canonical_less);
    PipelineResult out;
    out.initial = z0;
    out.final = z0;
    out.targets = targets;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        const auto m_prime = std::max(targets[k].m, out.final.channel_ceiling);
        auto step = paradoxicalize(out.final, targets[k], m_prime, options.doubling);
        out.maps.push_back(step.maps);
        if (!step.certificate) {
            out.halted = true;
            out.halt_reason = "target " + std::to_string(k + 1) + ": matching inconclusive up to K = " +
                              std::to_string(options.doubling.k_ceiling) + " (best fraction " +
                              std::to_string(step.maps.matched_fraction) + ")";
            break;
        }
        out.final = std::move(step.relabeled);
        out.certificates.push_back(std::move(*step.certificate));
        out.matrix.emplace_back(targets.size());
        for (std::size_t a = 0; a <= k; ++a) {
            const auto report = verify_certificate(out.final, out.certificates[a]);
            out.matrix[a][k] = report.pass;
            if (a == k)
                out.certificates[a].verification = report;
        }
    }
    return out;
}

}  // namespace cantorland
