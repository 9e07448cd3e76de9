#pragma once

// Finite windows B_R(G, e) of a Cayley graph. Vertices are stored in the
// deterministic enumeration order (length, then letter order), so vertex 0 is
// the identity and a vertex id doubles as a stable name across runs.

#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorland/group.hpp"

namespace cantorland {

using VertexId = std::uint32_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();
inline constexpr std::uint64_t kDefaultVertexBudget = 500'000;

class BudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Window {
public:
    /// Enumerates B_R; throws BudgetError if |B_R| exceeds the vertex budget.
    Window(GroupSpec spec, std::size_t radius, std::uint64_t vertex_budget = kDefaultVertexBudget)
        : spec_(spec), radius_(radius)
    {
        const auto count = ball_size(spec, radius);
        if (count > vertex_budget)
            throw BudgetError("ball of radius " + std::to_string(radius) + " in " + to_string(spec) + " has " +
                              std::to_string(count) + " vertices, over the budget of " +
                              std::to_string(vertex_budget));
        build(static_cast<std::size_t>(count));
    }

    const GroupSpec& spec() const { return spec_; }
    std::size_t radius() const { return radius_; }
    std::size_t size() const { return lengths_.size(); }

    std::size_t length(VertexId v) const { return lengths_[v]; }

    /// The group element of a vertex.
    Word word(VertexId v) const
    {
        if (spec_.kind == GroupKind::integers) {
            const auto n = static_cast<std::int64_t>(lengths_[v]);
            return Word::power(spec_, (v % 2 == 1) ? n : -n);
        }
        std::vector<Letter> letters(lengths_[v]);
        for (VertexId u = v; u != 0; u = parent_[u])
            letters[lengths_[u] - 1] = last_[u];
        return Word::from_reduced(spec_, std::move(letters));
    }

    /// Right neighbour v * sigma, or kNoVertex if it leaves the window.
    VertexId step(VertexId v, Letter sigma) const
    {
        return neighbors_[static_cast<std::size_t>(v) * degree() + static_cast<std::size_t>(letter_order(sigma))];
    }

    /// Neighbour along the generator with the given letter_order slot.
    VertexId step_slot(VertexId v, int slot) const
    {
        return neighbors_[static_cast<std::size_t>(v) * degree() + static_cast<std::size_t>(slot)];
    }

    int degree() const { return spec_.degree(); }

    /// Tree parent in the enumeration (kNoVertex for the identity) and the
    /// letter that leads from it: word(v) = word(parent(v)) * last_letter(v).
    VertexId parent(VertexId v) const { return parent_[v]; }
    Letter last_letter(VertexId v) const { return last_[v]; }

    /// In-window neighbours of v in letter order.
    std::vector<VertexId> adjacency(VertexId v) const
    {
        std::vector<VertexId> out;
        for (int s = 0; s < degree(); ++s) {
            const auto u = step_slot(v, s);
            if (u != kNoVertex)
                out.push_back(u);
        }
        return out;
    }

    /// v * w, walking the letters of w; kNoVertex if the walk leaves the window.
    VertexId multiply(VertexId v, const Word& w) const
    {
        if (!(w.spec() == spec_))
            throw MixedGroupError();
        if (spec_.kind == GroupKind::integers) {
            const std::int64_t target = signed_value(v) + w.exponent();
            return find_integer(target);
        }
        for (Letter l : w.free_letters()) {
            v = step(v, l);
            if (v == kNoVertex)
                return kNoVertex;
        }
        return v;
    }

    std::optional<VertexId> find(const Word& w) const
    {
        if (!(w.spec() == spec_))
            throw MixedGroupError();
        if (w.length() > radius_)
            return std::nullopt;
        const auto v = multiply(0, w);
        if (v == kNoVertex)
            return std::nullopt;
        return v;
    }

    bool contains(const Word& w) const { return find(w).has_value(); }

    /// Vertices with |v| <= r form the prefix [0, ball_size(r)) of the order.
    std::size_t core_size(std::size_t core_radius) const
    {
        if (core_radius >= radius_)
            return size();
        return static_cast<std::size_t>(ball_size(spec_, core_radius));
    }

    bool in_core(VertexId v, std::size_t core_radius) const { return lengths_[v] <= core_radius; }

    /// Breadth-first distances from a source set, limited to max_depth.
    /// Unreached vertices get -1.
    std::vector<int> bfs(const std::vector<VertexId>& sources, int max_depth = std::numeric_limits<int>::max()) const
    {
        std::vector<int> d(size(), -1);
        std::deque<VertexId> queue;
        for (auto s : sources) {
            if (d[s] != 0) {
                d[s] = 0;
                queue.push_back(s);
            }
        }
        while (!queue.empty()) {
            const auto v = queue.front();
            queue.pop_front();
            if (d[v] >= max_depth)
                continue;
            for (int s = 0; s < degree(); ++s) {
                const auto u = step_slot(v, s);
                if (u != kNoVertex && d[u] < 0) {
                    d[u] = d[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        return d;
    }

    /// Vertices within distance r of v, in order of discovery (by distance).
    std::vector<std::pair<VertexId, int>> ball_around(VertexId v, int r) const
    {
        std::vector<std::pair<VertexId, int>> out{{v, 0}};
        if (spec_.kind == GroupKind::free) {
            // Tree: expand without revisiting the parent edge.
            std::vector<int> came_from{-1};
            for (std::size_t i = 0; i < out.size(); ++i) {
                const auto [u, du] = out[i];
                if (du == r)
                    continue;
                for (int s = 0; s < degree(); ++s) {
                    if (came_from[i] >= 0 && s == (came_from[i] ^ 1))
                        continue;
                    const auto w = step_slot(u, s);
                    if (w == kNoVertex)
                        continue;
                    out.emplace_back(w, du + 1);
                    came_from.push_back(s);
                }
            }
            return out;
        }
        const auto base = signed_value(v);
        for (int k = 1; k <= r; ++k) {
            for (int sign : {1, -1}) {
                const auto u = find_integer(base + sign * k);
                if (u != kNoVertex)
                    out.emplace_back(u, k);
            }
        }
        return out;
    }

    /// Signed integer value of a vertex of an integers window.
    std::int64_t signed_value(VertexId v) const
    {
        const auto n = static_cast<std::int64_t>(lengths_[v]);
        return (v % 2 == 1) ? n : -n;
    }

    VertexId find_integer(std::int64_t n) const
    {
        const auto mag = static_cast<std::uint64_t>(n < 0 ? -n : n);
        if (mag > radius_)
            return kNoVertex;
        if (n == 0)
            return 0;
        return static_cast<VertexId>(n > 0 ? 2 * mag - 1 : 2 * mag);
    }

private:
    void build(std::size_t count)
    {
        const auto d = static_cast<std::size_t>(degree());
        lengths_.assign(count, 0);
        parent_.assign(count, kNoVertex);
        last_.assign(count, 0);
        neighbors_.assign(count * d, kNoVertex);
        if (spec_.kind == GroupKind::integers) {
            for (VertexId v = 1; v < count; ++v) {
                lengths_[v] = (v + 1) / 2;
                last_[v] = (v % 2 == 1) ? Letter{1} : Letter{-1};
            }
            for (VertexId v = 0; v < count; ++v) {
                const auto n = signed_value(v);
                neighbors_[v * d + 0] = find_integer(n + 1);
                neighbors_[v * d + 1] = find_integer(n - 1);
                if (v > 0)
                    parent_[v] = find_integer(n > 0 ? n - 1 : n + 1);
            }
            return;
        }
        VertexId next = 1;
        for (VertexId v = 0; v < count; ++v) {
            if (lengths_[v] == radius_)
                continue;
            for (std::size_t s = 0; s < d; ++s) {
                const Letter l = letter_from_order(static_cast<int>(s));
                if (v != 0 && l == -last_[v])
                    continue;
                const VertexId u = next++;
                lengths_[u] = lengths_[v] + 1;
                parent_[u] = v;
                last_[u] = l;
                neighbors_[v * d + s] = u;
                neighbors_[u * d + static_cast<std::size_t>(letter_order(static_cast<Letter>(-l)))] = v;
            }
        }
    }

    GroupSpec spec_;
    std::size_t radius_;
    std::vector<std::uint32_t> lengths_;
    std::vector<VertexId> parent_;
    std::vector<Letter> last_;
    std::vector<VertexId> neighbors_;
};

/// Window construction as a free function; matches the ball enumeration.
inline std::shared_ptr<const Window> ball(GroupSpec spec, std::size_t radius,
                                          std::uint64_t vertex_budget = kDefaultVertexBudget)
{
    return std::make_shared<const Window>(spec, radius, vertex_budget);
}

}  // namespace cantorland
