#pragma once

// Landscapes: height functions H : Gamma -> {1, 2, ...} together with Cantor
// labels. A LandscapeRule is the pure height rule; materialising it on a
// window attaches the proper labeling and yields a Landscape, the finite
// configuration every later stage works on.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorland/bits.hpp"
#include "cantorland/labeling.hpp"
#include "cantorland/river.hpp"
#include "cantorland/window.hpp"

namespace cantorland {

using Height = int;

enum class Provenance { fractal, ternary, river, relabeled, custom };

inline std::string to_string(Provenance p)
{
    switch (p) {
    case Provenance::fractal: return "fractal";
    case Provenance::ternary: return "ternary";
    case Provenance::river: return "river";
    case Provenance::relabeled: return "relabeled";
    case Provenance::custom: return "custom";
    }
    return "custom";
}

inline Provenance provenance_from_string(const std::string& s)
{
    if (s == "fractal") return Provenance::fractal;
    if (s == "ternary") return Provenance::ternary;
    if (s == "river") return Provenance::river;
    if (s == "relabeled") return Provenance::relabeled;
    if (s == "custom") return Provenance::custom;
    throw std::invalid_argument("unknown provenance '" + s + "'");
}

/// Which bits the labels carry.
///  proper:  lambda itself;
///  coded:   interleave(lambda, witness code);
///  padded:  interleave(coded, 0...), leaving the even positions free.
enum class LabelStage { proper, coded, padded };

inline std::string to_string(LabelStage s)
{
    switch (s) {
    case LabelStage::proper: return "proper";
    case LabelStage::coded: return "coded";
    case LabelStage::padded: return "padded";
    }
    return "proper";
}

inline LabelStage label_stage_from_string(const std::string& s)
{
    if (s == "proper") return LabelStage::proper;
    if (s == "coded") return LabelStage::coded;
    if (s == "padded") return LabelStage::padded;
    throw std::invalid_argument("unknown label stage '" + s + "'");
}

class LandscapeRule {
public:
    using HeightFn = std::function<Height(const Word&)>;

    LandscapeRule(Provenance provenance, GroupSpec spec, HeightFn height)
        : provenance_(provenance), spec_(spec), height_(std::move(height))
    {
    }

    Provenance provenance() const { return provenance_; }
    const GroupSpec& spec() const { return spec_; }
    Height height(const Word& w) const { return height_(w); }

    std::vector<Height> heights(const Window& window) const
    {
        std::vector<Height> h(window.size());
        for (VertexId v = 0; v < window.size(); ++v)
            h[v] = height_(window.word(v));
        return h;
    }

private:
    Provenance provenance_;
    GroupSpec spec_;
    HeightFn height_;
};

/// A landscape restricted to a window: heights and label prefixes per vertex.
struct Landscape {
    std::shared_ptr<const Window> window;
    Provenance provenance = Provenance::custom;
    LabelStage stage = LabelStage::proper;
    std::vector<Height> heights;
    std::vector<BitString> labels;
    std::size_t label_bits = 0;
    /// Highest label position already used as a membership channel.
    std::size_t channel_ceiling = 0;

    Height height(VertexId v) const { return heights[v]; }
    const BitString& label(VertexId v) const { return labels[v]; }
};

/// Heights from the rule, labels from the greedy proper labeling.
inline Landscape materialize(const LandscapeRule& rule, std::shared_ptr<const Window> window, std::size_t label_bits)
{
    if (!(rule.spec() == window->spec()))
        throw MixedGroupError();
    Landscape z;
    z.window = window;
    z.provenance = rule.provenance();
    z.stage = LabelStage::proper;
    z.heights = rule.heights(*window);
    z.label_bits = label_bits;
    const ProperLabeling labeling(window, label_bits);
    z.labels.reserve(window->size());
    for (VertexId v = 0; v < window->size(); ++v)
        z.labels.push_back(labeling.label(v, label_bits));
    return z;
}

/// Interleaves every label with zeros, doubling its length; odd positions keep
/// the old label and the even positions become free channels.
inline Landscape pad_even(const Landscape& z)
{
    Landscape out = z;
    out.stage = LabelStage::padded;
    out.label_bits = 2 * z.label_bits;
    const BitString zeros(z.label_bits);
    for (auto& l : out.labels)
        l = interleave(l, zeros);
    out.channel_ceiling = 0;
    return out;
}

// ---------------------------------------------------------------------------
// Height rules

/// Constant height; a landscape only when the group is finite, useful as a
/// negative control for the axiom checks.
inline LandscapeRule constant_landscape(GroupSpec spec, Height h)
{
    return LandscapeRule(Provenance::custom, spec, [h](const Word&) { return h; });
}

/// Digits all 0 or 3.
inline bool is_ternary(std::uint64_t n)
{
    do {
        const auto digit = n % 10;
        if (digit != 0 && digit != 3)
            return false;
        n /= 10;
    } while (n != 0);
    return true;
}

/// H(n) = 1 + min{k >= 0 : |n - t| < 10^k for a ternary t divisible by 10^k},
/// with H(-n) = H(n). Height 1 is exactly the ternary numbers.
inline Height ternary_height(std::int64_t n)
{
    const std::uint64_t x = static_cast<std::uint64_t>(n < 0 ? -n : n);
    std::uint64_t scale = 1;
    for (Height k = 0;; ++k, scale *= 10) {
        // t = 10^k t' with t' ternary and |x/10^k - t'| < 1, so t' is q or q + 1.
        const std::uint64_t q = x / scale;
        const std::uint64_t r = x % scale;
        if (is_ternary(q) || (r != 0 && is_ternary(q + 1)))
            return k + 1;
    }
}

inline LandscapeRule ternary_landscape()
{
    return LandscapeRule(Provenance::ternary, GroupSpec::integers(),
                         [](const Word& w) { return ternary_height(w.exponent()); });
}

/// Anchors gamma_1, gamma_2, ... with |gamma_n| = 3 * 10^n.
struct AnchorSet {
    std::vector<Word> anchors;

    static std::uint64_t scale(std::size_t n)
    {
        std::uint64_t s = 3;
        for (std::size_t i = 0; i < n; ++i)
            s *= 10;
        return s;
    }

    void validate(const GroupSpec& spec) const
    {
        for (std::size_t i = 0; i < anchors.size(); ++i) {
            if (!(anchors[i].spec() == spec))
                throw MixedGroupError();
            if (anchors[i].length() != scale(i + 1))
                throw std::invalid_argument("anchor " + std::to_string(i + 1) + " has length " +
                                            std::to_string(anchors[i].length()) + ", expected " +
                                            std::to_string(scale(i + 1)));
        }
    }

    /// Default anchors: powers of the generators in turn, a^30, b^300, ...
    static AnchorSet powers(const GroupSpec& spec, std::size_t count)
    {
        AnchorSet set;
        for (std::size_t n = 1; n <= count; ++n) {
            const auto len = scale(n);
            if (spec.kind == GroupKind::integers) {
                set.anchors.push_back(Word::power(spec, static_cast<std::int64_t>(len)));
            } else {
                const auto g = static_cast<Letter>((n - 1) % static_cast<std::size_t>(spec.rank) + 1);
                set.anchors.push_back(Word::from_reduced(spec, std::vector<Letter>(len, g)));
            }
        }
        return set;
    }
};

/// The fractal point set A = union of A_n, with A_0 = {e} and
/// A_n = A_{n-1} u gamma_n A_{n-1}. Each element carries the smallest anchor
/// index in its product (infinity for e), which decides its Q-levels.
class FractalPoints {
public:
    struct Point {
        Word word;
        std::size_t lowest_index;  // n_1; SIZE_MAX for the identity
    };

    FractalPoints(GroupSpec spec, const AnchorSet& anchors)
    {
        anchors.validate(spec);
        points_.push_back({identity(spec), SIZE_MAX});
        for (std::size_t n = 1; n <= anchors.anchors.size(); ++n) {
            const auto existing = points_.size();
            for (std::size_t i = 0; i < existing; ++i) {
                const auto& p = points_[i];
                points_.push_back({mul(anchors.anchors[n - 1], p.word), std::min(p.lowest_index, n)});
            }
        }
    }

    const std::vector<Point>& points() const { return points_; }

    /// Q_l = {e} u {products whose smallest anchor index is >= l}.
    static bool in_level(const Point& p, std::size_t l) { return p.lowest_index >= l; }

private:
    std::vector<Point> points_;
};

inline std::uint64_t pow10(std::size_t l)
{
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < l; ++i)
        s *= 10;
    return s;
}

struct BulletViolation {
    int bullet = 0;
    std::size_t level_a = 0;
    std::size_t level_b = 0;
    Word a;
    Word b;
};

/// The two separation properties of the levels Q_1 .. Q_max_level:
///  1. distinct points of Q_n have disjoint 10^n-balls;
///  2. for k < l, a 10^k-ball around Q_k is inside or disjoint from a
///     10^l-ball around Q_l.
/// Ball inclusion and disjointness are decided metrically, which is exact in
/// trees and on the line.
inline std::optional<BulletViolation> check_anchor_bullets(const FractalPoints& points, std::size_t max_level)
{
    const auto& pts = points.points();
    for (std::size_t k = 1; k <= max_level; ++k) {
        const auto rk = pow10(k);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (!FractalPoints::in_level(pts[i], k))
                continue;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (i == j)
                    continue;
                const auto d = dist(pts[i].word, pts[j].word);
                if (FractalPoints::in_level(pts[j], k) && d <= 2 * rk)
                    return BulletViolation{1, k, k, pts[i].word, pts[j].word};
                for (std::size_t l = k + 1; l <= max_level; ++l) {
                    if (!FractalPoints::in_level(pts[j], l))
                        continue;
                    const auto rl = pow10(l);
                    const bool inside = d + rk <= rl;
                    const bool apart = d > rk + rl;
                    if (!inside && !apart)
                        return BulletViolation{2, k, l, pts[i].word, pts[j].word};
                }
            }
        }
    }
    return std::nullopt;
}

/// H(gamma) = least l >= 1 with gamma in B_{10^l}(delta) for some delta in Q_l.
inline LandscapeRule fractal_landscape(GroupSpec spec, const AnchorSet& anchors)
{
    auto points = std::make_shared<const FractalPoints>(spec, anchors);
    return LandscapeRule(Provenance::fractal, spec, [points](const Word& w) {
        for (std::size_t l = 1;; ++l) {
            const auto radius = pow10(l);
            if (w.length() <= radius)
                return static_cast<Height>(l);  // e is in every Q_l
            for (const auto& p : points->points())
                if (FractalPoints::in_level(p, l) && dist(w, p.word) <= radius)
                    return static_cast<Height>(l);
        }
    });
}

/// H(gamma) = d_G(river, gamma) + 1 for the letter-doubling river.
inline LandscapeRule river_landscape(GroupSpec spec = GroupSpec::free_group(2))
{
    river::require_river_group(spec);
    return LandscapeRule(Provenance::river, spec, [](const Word& w) {
        return static_cast<Height>(river::distance_to_river(w) + 1);
    });
}

// ---------------------------------------------------------------------------
// Axiom verification

struct StructureConstants {
    std::map<int, int> M;  ///< n -> return-to-height-1 radius
    std::map<int, int> N;  ///< l -> radius holding l height-1 points around a height-1 point
    std::map<int, int> S;  ///< m -> radius in which every ball sees height >= m
    std::map<int, int> Q;  ///< n -> largest component of {H <= n}
    std::size_t core_radius = 0;
};

struct AxiomViolation {
    int axiom = 0;
    VertexId vertex = kNoVertex;
    VertexId other = kNoVertex;
    int parameter = 0;
    std::string detail;
};

struct AxiomReport {
    bool pass = true;
    StructureConstants constants;
    std::optional<AxiomViolation> violation;
};

struct AxiomOptions {
    /// Core radius; defaults to (R - 1) / 2 so witnesses for core vertices
    /// stay inside the window.
    std::optional<std::size_t> core_radius;
    int max_density_count = 8;  ///< l ranges over 1..this
};

inline std::size_t default_axiom_core(const Window& window)
{
    return window.radius() == 0 ? 0 : (window.radius() - 1) / 2;
}

/// Empirical structure constants of a height field on a window, or the first
/// violation. Witnesses are searched in the whole window; constants are the
/// least values that work for every core vertex, floored at 1.
inline AxiomReport verify_axioms(const std::vector<Height>& heights, const Window& window, const AxiomOptions& options = {})
{
    AxiomReport report;
    const auto core = options.core_radius.value_or(default_axiom_core(window));
    report.constants.core_radius = core;
    const auto core_count = window.core_size(core);
    auto fail = [&](AxiomViolation v) {
        report.pass = false;
        report.violation = std::move(v);
        return report;
    };

    Height max_core = 1;
    for (VertexId v = 0; v < core_count; ++v) {
        if (heights[v] < 1)
            return fail({0, v, kNoVertex, heights[v], "height below 1"});
        max_core = std::max(max_core, heights[v]);
    }

    // 1: slope bound on every core edge.
    for (VertexId v = 0; v < core_count; ++v)
        for (auto u : window.adjacency(v))
            if (std::abs(heights[v] - heights[u]) > 1)
                return fail({1, v, u, 0, "heights " + std::to_string(heights[v]) + " and " + std::to_string(heights[u])});

    std::vector<VertexId> level1;
    for (VertexId v = 0; v < window.size(); ++v)
        if (heights[v] == 1)
            level1.push_back(v);

    // 2: bounded return to height 1.
    const auto d1 = window.bfs(level1);
    for (VertexId v = 0; v < core_count; ++v) {
        if (d1[v] < 0)
            return fail({2, v, kNoVertex, heights[v], "no height-1 vertex in the window"});
        auto& m = report.constants.M[heights[v]];
        m = std::max({m, d1[v], 1});
    }

    // 3: density of height 1 around height-1 points.
    for (VertexId v = 0; v < core_count; ++v) {
        if (heights[v] != 1)
            continue;
        const auto d = window.bfs({v});
        std::vector<int> found;
        for (VertexId u = 0; u < window.size(); ++u)
            if (heights[u] == 1 && d[u] >= 0)
                found.push_back(d[u]);
        std::sort(found.begin(), found.end());
        for (int l = 1; l <= options.max_density_count; ++l) {
            if (found.size() < static_cast<std::size_t>(l))
                return fail({3, v, kNoVertex, l, "fewer than " + std::to_string(l) + " height-1 vertices in the window"});
            auto& n = report.constants.N[l];
            n = std::max({n, found[static_cast<std::size_t>(l) - 1], 1});
        }
    }

    // 4: every core ball reaches height m.
    for (Height m = 1; m <= std::max<Height>(2, max_core); ++m) {
        std::vector<VertexId> high;
        for (VertexId v = 0; v < window.size(); ++v)
            if (heights[v] >= m)
                high.push_back(v);
        const auto dm = window.bfs(high);
        for (VertexId v = 0; v < core_count; ++v) {
            if (dm[v] < 0)
                return fail({4, v, kNoVertex, m, "no vertex of height >= " + std::to_string(m) + " in the window"});
            auto& s = report.constants.S[m];
            s = std::max({s, dm[v], 1});
        }
    }
    return report;
}

inline AxiomReport verify_axioms(const LandscapeRule& rule, const Window& window, const AxiomOptions& options = {})
{
    return verify_axioms(rule.heights(window), window, options);
}

struct Components {
    std::vector<std::vector<VertexId>> components;
    std::size_t max_size = 0;
};

/// Connected components of {H <= n} among core vertices, using core edges.
inline Components components_leq(const std::vector<Height>& heights, const Window& window, Height n,
                                 std::optional<std::size_t> core_radius = std::nullopt)
{
    if (n < 1)
        throw std::invalid_argument("components_leq needs n >= 1");
    const auto core = core_radius.value_or(window.radius());
    const auto count = window.core_size(core);
    std::vector<char> seen(count, 0);
    Components out;
    for (VertexId s = 0; s < count; ++s) {
        if (seen[s] || heights[s] > n)
            continue;
        std::vector<VertexId> comp{s};
        seen[s] = 1;
        for (std::size_t i = 0; i < comp.size(); ++i) {
            for (auto u : window.adjacency(comp[i])) {
                if (u < count && !seen[u] && heights[u] <= n) {
                    seen[u] = 1;
                    comp.push_back(u);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.max_size = std::max(out.max_size, comp.size());
        out.components.push_back(std::move(comp));
    }
    return out;
}

inline Components components_leq(const LandscapeRule& rule, const Window& window, Height n,
                                 std::optional<std::size_t> core_radius = std::nullopt)
{
    return components_leq(rule.heights(window), window, n, core_radius);
}

/// Fills constants.Q with the largest component of {H <= n} for every n
/// below the largest core height.
inline void attach_hilly_constants(AxiomReport& report, const std::vector<Height>& heights, const Window& window)
{
    const auto core = report.constants.core_radius;
    const auto count = window.core_size(core);
    Height max_core = 1;
    for (VertexId v = 0; v < count; ++v)
        max_core = std::max(max_core, heights[v]);
    for (Height n = 1; n < max_core; ++n)
        report.constants.Q[n] = static_cast<int>(components_leq(heights, window, n, core).max_size);
}

}  // namespace cantorland
