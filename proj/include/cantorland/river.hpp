#pragma once

// The river in a free group: the letter-doubling embedding of the Cayley tree
// into itself, x1 x2 ... xn -> x1 x1 x2 x2 ... xn xn. Distances scale by
// exactly 2, so the embedding is bilipschitz with constant 2. Its image is the
// set of words made of doubled letters ("paired words").

#include <stdexcept>
#include <vector>

#include "cantorland/group.hpp"

namespace cantorland::river {

inline constexpr int kBilipschitz = 2;

inline void require_river_group(const GroupSpec& spec)
{
    if (spec.kind != GroupKind::free || spec.rank < 2)
        throw std::invalid_argument("the river needs a free group of rank >= 2, got " + to_string(spec));
}

/// Length of the longest prefix built from doubled letters.
inline std::size_t paired_prefix_length(const Word& w)
{
    const auto l = w.free_letters();
    std::size_t i = 0;
    while (i + 1 < l.size() && l[i] == l[i + 1])
        i += 2;
    return i;
}

inline bool on_river(const Word& w) { return paired_prefix_length(w) == w.length(); }

/// Psi: tree vertex (a reduced word) to its doubled image.
inline Word embed(const Word& tree_vertex)
{
    std::vector<Letter> out;
    out.reserve(2 * tree_vertex.length());
    for (Letter l : tree_vertex.free_letters()) {
        out.push_back(l);
        out.push_back(l);
    }
    return Word::from_reduced(tree_vertex.spec(), std::move(out));
}

/// Psi^-1 on the image.
inline Word unembed(const Word& river_point)
{
    if (!on_river(river_point))
        throw std::invalid_argument("word " + to_string(river_point) + " is not on the river");
    const auto l = river_point.free_letters();
    std::vector<Letter> out;
    out.reserve(l.size() / 2);
    for (std::size_t i = 0; i < l.size(); i += 2)
        out.push_back(l[i]);
    return Word::from_reduced(river_point.spec(), std::move(out));
}

/// Distance from w to the river. The nearest river points are the paired
/// prefix p and, when w continues past p, p x x for the next letter x; both
/// sit at distance |w| - |p|.
inline std::size_t distance_to_river(const Word& w) { return w.length() - paired_prefix_length(w); }

/// delta_w: the enumeration-least nearest river point, which is the paired
/// prefix (it is shorter than the only competitor p x x).
inline Word nearest_river(const Word& w)
{
    require_river_group(w.spec());
    const auto l = w.free_letters();
    const auto p = paired_prefix_length(w);
    return Word::from_reduced(w.spec(), std::vector<Letter>(l.begin(), l.begin() + static_cast<std::ptrdiff_t>(p)));
}

/// The first m vertices of the tree path P(s): from s back to the ray
/// t_i = a^i (i >= 0), then outward along the ray.
inline std::vector<Word> tree_path(const Word& s, std::size_t m)
{
    const auto letters = s.free_letters();
    std::size_t junction = 0;  // number of leading a's; the path meets the ray at a^junction
    while (junction < letters.size() && letters[junction] == Letter{1})
        ++junction;
    std::vector<Word> path;
    path.reserve(m);
    for (std::size_t len = letters.size(); len > junction && path.size() < m; --len)
        path.push_back(Word::from_reduced(
            s.spec(), std::vector<Letter>(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(len))));
    for (std::size_t i = junction; path.size() < m; ++i)
        path.push_back(Word::from_reduced(s.spec(), std::vector<Letter>(i, Letter{1})));
    return path;
}

}  // namespace cantorland::river
