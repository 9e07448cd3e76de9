#pragma once

// Hopcroft-Karp maximum bipartite matching. Adjacency lists are scanned in
// the order given, so equal inputs always give equal matchings.

#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

namespace cantorland {

class BipartiteMatching {
public:
    static constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

    /// adjacency[l] lists the right vertices (0..right_count-1) of left vertex l.
    BipartiteMatching(std::vector<std::vector<std::uint32_t>> adjacency, std::uint32_t right_count)
        : adj_(std::move(adjacency)), match_left_(adj_.size(), kFree), match_right_(right_count, kFree),
          layer_(adj_.size())
    {
        while (layer())
            for (std::uint32_t l = 0; l < adj_.size(); ++l)
                if (match_left_[l] == kFree)
                    augment(l);
    }

    std::size_t size() const
    {
        std::size_t n = 0;
        for (auto r : match_left_)
            n += (r != kFree);
        return n;
    }

    bool saturates_left() const { return size() == adj_.size(); }

    /// Right partner of each left vertex, or kFree.
    const std::vector<std::uint32_t>& left_partners() const { return match_left_; }
    const std::vector<std::uint32_t>& right_partners() const { return match_right_; }

private:
    static constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

    bool layer()
    {
        std::deque<std::uint32_t> queue;
        for (std::uint32_t l = 0; l < adj_.size(); ++l) {
            if (match_left_[l] == kFree) {
                layer_[l] = 0;
                queue.push_back(l);
            } else {
                layer_[l] = kInf;
            }
        }
        bool reachable_free = false;
        while (!queue.empty()) {
            const auto l = queue.front();
            queue.pop_front();
            for (auto r : adj_[l]) {
                const auto next = match_right_[r];
                if (next == kFree) {
                    reachable_free = true;
                } else if (layer_[next] == kInf) {
                    layer_[next] = layer_[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        return reachable_free;
    }

    // Iterative DFS along the layered graph.
    bool augment(std::uint32_t root)
    {
        struct Frame {
            std::uint32_t left;
            std::size_t edge;
        };
        std::vector<Frame> stack{{root, 0}};
        while (!stack.empty()) {
            auto& f = stack.back();
            if (f.edge == adj_[f.left].size()) {
                layer_[f.left] = kInf;
                stack.pop_back();
                continue;
            }
            const auto r = adj_[f.left][f.edge++];
            const auto next = match_right_[r];
            if (next == kFree) {
                // Flip the path recorded on the stack.
                for (std::size_t i = stack.size(); i-- > 0;) {
                    const auto l = stack[i].left;
                    const auto rr = adj_[l][stack[i].edge - 1];
                    match_left_[l] = rr;
                    match_right_[rr] = l;
                }
                return true;
            }
            if (layer_[next] == layer_[f.left] + 1)
                stack.push_back({next, 0});
        }
        return false;
    }

    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::uint32_t> match_left_;
    std::vector<std::uint32_t> match_right_;
    std::vector<std::uint32_t> layer_;
};

}  // namespace cantorland
