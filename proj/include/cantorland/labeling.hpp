#pragma once

// Proper Cantor labelings. The label of a vertex is the concatenation of
// one-hot blocks zeta_1 zeta_2 ..., where block k has d^k + 1 bits and marks
// the colour of the vertex in a proper colouring of the distance-<=k graph.
//
// Colourings are greedy in the enumeration order. A vertex only competes with
// earlier vertices, which are never longer than itself, so the colour computed
// on any window containing the vertex agrees with the greedy colouring of the
// whole group.

#include <limits>
#include <memory>
#include <stdexcept>
#include <vector>

#include "cantorland/bits.hpp"
#include "cantorland/window.hpp"

namespace cantorland {

/// d^k + 1, the palette size (and block length) at scale k.
inline std::uint64_t block_length(const GroupSpec& spec, std::size_t k)
{
    const auto d = static_cast<std::uint64_t>(spec.degree());
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (p > std::numeric_limits<std::uint64_t>::max() / d)
            return std::numeric_limits<std::uint64_t>::max();
        p *= d;
    }
    return p + 1;
}

/// S_r: the prefix length after block r, so that labels of distinct vertices
/// at distance <= r already differ in their first S_r bits.
inline std::uint64_t separation_index(const GroupSpec& spec, std::size_t r)
{
    std::uint64_t total = 0;
    for (std::size_t k = 1; k <= r; ++k) {
        const auto b = block_length(spec, k);
        if (total > std::numeric_limits<std::uint64_t>::max() - b)
            return std::numeric_limits<std::uint64_t>::max();
        total += b;
    }
    return total;
}

/// Greedy colouring of the distance-<=k graph in enumeration order. Valid for
/// any k: earlier vertices within distance k of v are no longer than v, so they
/// lie in the window together with a geodesic to v.
inline std::vector<std::uint32_t> greedy_distance_coloring(const Window& window, std::size_t k)
{
    std::vector<std::uint32_t> color(window.size(), 1);
    if (k == 0)
        return color;
    std::vector<std::uint32_t> seen_at;  // seen_at[c] == v+1 marks colour c as taken for v
    for (VertexId v = 0; v < window.size(); ++v) {
        const auto nearby = window.ball_around(v, static_cast<int>(k));
        if (seen_at.size() < nearby.size() + 2)
            seen_at.resize(nearby.size() + 2, 0);
        for (const auto& [u, d] : nearby) {
            if (u < v && color[u] < seen_at.size())
                seen_at[color[u]] = v + 1;
        }
        std::uint32_t c = 1;
        while (seen_at[c] == v + 1)
            ++c;
        color[v] = c;
    }
    return color;
}

/// Greedy proper colouring of the distance-<=k graph, colours 1..d^k+1,
/// indexed by vertex id.
inline std::vector<std::uint32_t> color_graph_power(const Window& window, std::size_t k)
{
    if (window.radius() < k)
        throw std::invalid_argument("window radius " + std::to_string(window.radius()) +
                                    " is smaller than the colouring distance " + std::to_string(k));
    return greedy_distance_coloring(window, k);
}

/// Materialised proper labeling of a window, to a fixed prefix length.
class ProperLabeling {
public:
    ProperLabeling(std::shared_ptr<const Window> window, std::size_t prefix_bits)
        : window_(std::move(window)), prefix_bits_(prefix_bits)
    {
        std::size_t covered = 0;
        for (std::size_t k = 1; covered < prefix_bits_; ++k) {
            if (ball_size(window_->spec(), k) > kMaxColoringBall)
                throw BudgetError("label prefix of " + std::to_string(prefix_bits_) +
                                  " bits needs a distance-" + std::to_string(k) + " colouring, over budget");
            colorings_.push_back(greedy_distance_coloring(*window_, k));
            covered += static_cast<std::size_t>(block_length(window_->spec(), k));
        }
    }

    std::size_t prefix_bits() const { return prefix_bits_; }
    const Window& window() const { return *window_; }

    /// lambda_k colour of a vertex, k >= 1.
    std::uint32_t color(VertexId v, std::size_t k) const { return colorings_.at(k - 1)[v]; }

    /// (lambda(v))_s for s <= prefix_bits().
    BitString label(VertexId v, std::size_t s) const
    {
        if (s > prefix_bits_)
            throw std::out_of_range("label prefix " + std::to_string(s) + " exceeds the materialised " +
                                    std::to_string(prefix_bits_) + " bits");
        BitString out(s);
        std::size_t offset = 0;
        for (std::size_t k = 1; offset < s; ++k) {
            const auto pos = offset + colorings_[k - 1][v];
            if (pos <= s)
                out.set(pos, true);
            offset += static_cast<std::size_t>(block_length(window_->spec(), k));
        }
        return out;
    }

    BitString label(const Word& w, std::size_t s) const
    {
        const auto v = window_->find(w);
        if (!v)
            throw std::out_of_range("word " + to_string(w) + " lies outside the labelled window");
        return label(*v, s);
    }

private:
    static constexpr std::uint64_t kMaxColoringBall = 20'000;

    std::shared_ptr<const Window> window_;
    std::size_t prefix_bits_;
    std::vector<std::vector<std::uint32_t>> colorings_;
};

/// proper_label(gamma, s) on the smallest window that holds gamma.
inline BitString proper_label(const Word& w, std::size_t s)
{
    auto window = ball(w.spec(), w.length());
    return ProperLabeling(window, s).label(w, s);
}

}  // namespace cantorland
