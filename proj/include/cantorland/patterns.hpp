#pragma once

// Labeled balls Theta^m, local sets (preimages of finite pattern sets) and the
// window-relative absent / recurrent / undetermined classification.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorland/landscape.hpp"
#include "cantorland/localset.hpp"

namespace cantorland {

/// Offsets of B_m(e) in ball order, as (parent offset, letter) steps, so a
/// labeled ball can be read off any window vertex by walking outwards.
class BallStencil {
public:
    BallStencil(const GroupSpec& spec, std::size_t m) : m_(m)
    {
        const Window w(spec, m);
        parent_.resize(w.size());
        letter_.resize(w.size());
        for (VertexId v = 0; v < w.size(); ++v) {
            parent_[v] = w.parent(v);
            letter_[v] = w.last_letter(v);
        }
    }

    std::size_t radius() const { return m_; }
    std::size_t size() const { return parent_.size(); }

    /// Window ids of v * delta for every delta, or nullopt if the ball leaves
    /// the window.
    std::optional<std::vector<VertexId>> place(const Window& window, VertexId v) const
    {
        std::vector<VertexId> ids(size());
        ids[0] = v;
        for (std::size_t j = 1; j < size(); ++j) {
            const auto u = window.step(ids[parent_[j]], letter_[j]);
            if (u == kNoVertex)
                return std::nullopt;
            ids[j] = u;
        }
        return ids;
    }

private:
    std::size_t m_;
    std::vector<VertexId> parent_;
    std::vector<Letter> letter_;
};

class CollarError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

inline PatternBall theta(const Landscape& z, const BallStencil& stencil, VertexId v)
{
    const auto m = stencil.radius();
    if (m > z.label_bits)
        throw std::invalid_argument("pattern radius " + std::to_string(m) + " exceeds the " +
                                    std::to_string(z.label_bits) + " materialised label bits");
    const auto ids = stencil.place(*z.window, v);
    if (!ids)
        throw CollarError("the radius-" + std::to_string(m) + " ball around " + to_string(z.window->word(v)) +
                          " leaves the window");
    PatternBall b;
    b.m = m;
    b.entries.reserve(ids->size());
    for (auto u : *ids)
        b.entries.push_back({z.labels[u].prefix(m), z.heights[u]});
    return b;
}

/// Theta^m_z(gamma) on the landscape's window.
inline PatternBall theta(const Landscape& z, const Word& gamma, std::size_t m)
{
    const auto v = z.window->find(gamma);
    if (!v)
        throw CollarError("word " + to_string(gamma) + " lies outside the window");
    return theta(z, BallStencil(z.window->spec(), m), *v);
}

/// Default core for a local set: vertices whose support ball fits.
inline std::size_t local_core_radius(const LocalSet& s, const Window& w)
{
    return w.radius() >= s.support_radius() ? w.radius() - s.support_radius() : 0;
}

/// Core vertices of the landscape's window that lie in the local set, in
/// enumeration order.
inline std::vector<VertexId> realize(const LocalSet& s, const Landscape& z, std::optional<std::size_t> core_radius = std::nullopt)
{
    const auto& w = *z.window;
    const auto core = core_radius.value_or(local_core_radius(s, w));
    if (w.radius() < s.support_radius() || core + s.support_radius() > w.radius())
        throw CollarError("core radius " + std::to_string(core) + " plus local radius " +
                          std::to_string(s.support_radius()) + " exceeds the window radius " +
                          std::to_string(w.radius()));
    std::vector<VertexId> out;
    const auto count = w.core_size(core);
    if (s.kind == LocalSet::Kind::center_bit) {
        if (s.center_bit > z.label_bits)
            throw std::invalid_argument("cylinder bit beyond the materialised labels");
        for (VertexId v = 0; v < count; ++v)
            if (z.labels[v].at(s.center_bit) && z.heights[v] <= s.max_height)
                out.push_back(v);
        return out;
    }
    if (s.patterns.empty())
        return out;
    std::set<std::string> keys;
    for (const auto& p : s.patterns)
        keys.insert(p.canonical());
    const BallStencil stencil(w.spec(), s.m);
    for (VertexId v = 0; v < count; ++v)
        if (keys.count(theta(z, stencil, v).canonical()))
            out.push_back(v);
    return out;
}

/// Every pattern observed at a core vertex with center height in [lo, hi].
inline std::set<PatternBall> observed_patterns(const Landscape& z, std::size_t m, Height lo, Height hi,
                                               std::optional<std::size_t> core_radius = std::nullopt)
{
    const auto& w = *z.window;
    if (w.radius() < m)
        throw CollarError("window radius " + std::to_string(w.radius()) + " below pattern radius " + std::to_string(m));
    const auto core = core_radius.value_or(w.radius() - m);
    const BallStencil stencil(w.spec(), m);
    std::set<PatternBall> out;
    for (VertexId v = 0; v < w.core_size(core); ++v)
        if (z.heights[v] >= lo && z.heights[v] <= hi)
            out.insert(theta(z, stencil, v));
    return out;
}

enum class Verdict { absent, recurrent, undetermined };

inline std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::absent: return "absent";
    case Verdict::recurrent: return "recurrent";
    case Verdict::undetermined: return "undetermined";
    }
    return "undetermined";
}

struct PatternVerdict {
    PatternBall pattern;
    Verdict verdict = Verdict::undetermined;
    /// Recurrent: the largest distance from an inner height-1 vertex to the
    /// nearest occurrence.
    std::optional<int> recurrence_radius;
    std::size_t occurrences = 0;
};

struct PatternReport {
    std::size_t window_radius = 0;
    std::size_t pattern_radius = 0;
    std::size_t occurrence_core = 0;  ///< occurrences counted on B_{R-m}
    std::size_t inner_core = 0;       ///< height-1 vertices checked on B_{R-m-collar}
    std::vector<PatternVerdict> verdicts;
};

/// Window-relative classification of the observed patterns (plus any extra
/// queried patterns). A pattern is recurrent when every inner height-1
/// vertex sees an occurrence within the collar; absent when it never occurs
/// on the occurrence core.
inline PatternReport classify_patterns(const Landscape& z, std::size_t m, std::size_t collar,
                                       const std::vector<PatternBall>& queries = {})
{
    const auto& w = *z.window;
    if (w.radius() < m + collar)
        throw CollarError("window radius " + std::to_string(w.radius()) + " below pattern radius plus collar");
    PatternReport report;
    report.window_radius = w.radius();
    report.pattern_radius = m;
    report.occurrence_core = w.radius() - m;
    report.inner_core = w.radius() - m - collar;

    const BallStencil stencil(w.spec(), m);
    std::vector<std::pair<PatternBall, std::vector<VertexId>>> seen;
    {
        std::map<std::string, std::size_t> slot;
        for (VertexId v = 0; v < w.core_size(report.occurrence_core); ++v) {
            auto b = theta(z, stencil, v);
            auto key = b.canonical();
            auto it = slot.find(key);
            if (it == slot.end()) {
                slot.emplace(std::move(key), seen.size());
                seen.push_back({std::move(b), {v}});
            } else {
                seen[it->second].second.push_back(v);
            }
        }
    }
    std::sort(seen.begin(), seen.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<VertexId> inner_level1;
    for (VertexId v = 0; v < w.core_size(report.inner_core); ++v)
        if (z.heights[v] == 1)
            inner_level1.push_back(v);

    for (auto& [pattern, where] : seen) {
        PatternVerdict pv{pattern, Verdict::recurrent, 0, where.size()};
        const auto d = w.bfs(where, static_cast<int>(collar));
        int worst = 0;
        for (auto v : inner_level1) {
            if (d[v] < 0) {
                pv.verdict = Verdict::undetermined;
                break;
            }
            worst = std::max(worst, d[v]);
        }
        if (pv.verdict == Verdict::recurrent)
            pv.recurrence_radius = worst;
        else
            pv.recurrence_radius.reset();
        report.verdicts.push_back(std::move(pv));
    }
    for (const auto& q : queries) {
        const bool found = std::any_of(seen.begin(), seen.end(), [&](const auto& s) { return s.first == q; });
        if (!found)
            report.verdicts.push_back({q, Verdict::absent, std::nullopt, 0});
    }
    return report;
}

}  // namespace cantorland
