#pragma once

// Witness maps kappa_m along the river, the 11/010 witness code that writes
// them into labels, and the finite-scale amenability defect.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorland/bits.hpp"
#include "cantorland/landscape.hpp"
#include "cantorland/river.hpp"

namespace cantorland {

/// Nonnegative fraction kept in lowest terms.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d)
    {
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        const auto g = std::gcd(num, den);
        if (g != 0) {
            num /= g;
            den /= g;
        }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

/// kappa_m(gamma) in path order: the image of the first m vertices of
/// P(Psi^-1(delta_gamma)). The set has exactly m elements.
inline std::vector<Word> kappa_path(const Word& gamma, std::size_t m)
{
    const auto delta = river::nearest_river(gamma);
    const auto path = river::tree_path(river::unembed(delta), m);
    std::vector<Word> out;
    out.reserve(path.size());
    for (const auto& s : path)
        out.push_back(river::embed(s));
    return out;
}

/// kappa_m(gamma) sorted in enumeration order.
inline std::vector<Word> kappa(const Word& gamma, std::size_t m)
{
    if (m == 0)
        throw std::invalid_argument("kappa needs m >= 1");
    auto out = kappa_path(gamma, m);
    std::sort(out.begin(), out.end());
    return out;
}

inline std::size_t symmetric_difference_size(const std::vector<Word>& a, const std::vector<Word>& b)
{
    std::size_t common = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j)
            ++i;
        else if (*j < *i)
            ++j;
        else {
            ++common;
            ++i;
            ++j;
        }
    }
    return a.size() + b.size() - 2 * common;
}

/// |kappa_m(gamma) symdiff kappa_m(gamma sigma)| / m.
inline Rational defect(const Word& gamma, Letter sigma, std::size_t m)
{
    const auto moved = mul(gamma, generator(gamma.spec(), sigma));
    const auto diff = symmetric_difference_size(kappa(gamma, m), kappa(moved, m));
    return {static_cast<std::int64_t>(diff), static_cast<std::int64_t>(m)};
}

/// 2 (H + 2) C / m.
inline Rational defect_bound(Height h, std::size_t m)
{
    return {2 * (static_cast<std::int64_t>(h) + 2) * river::kBilipschitz, static_cast<std::int64_t>(m)};
}

/// 2 (d + 1) C, the bound on |kappa_m(g1) symdiff kappa_m(g2)| for adjacent g1, g2
/// where d is the distance from g1 to the river.
inline std::size_t neighbour_difference_bound(std::size_t d) { return 2 * (d + 1) * river::kBilipschitz; }

// ---------------------------------------------------------------------------
// Canonical subset enumeration of balls B_F(e)

/// F_{m,n} = C m + (n - 1): the radius holding gamma^-1 kappa_m(gamma) when
/// gamma has height n.
inline std::size_t code_radius(std::size_t m, Height n) { return river::kBilipschitz * m + static_cast<std::size_t>(n - 1); }

namespace detail {

using u128 = unsigned __int128;
inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t sat(u128 x) { return x > kSaturated ? kSaturated : static_cast<std::uint64_t>(x); }

/// C(n, k), saturating at 2^64 - 1.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > kSaturated)
            return kSaturated;
    }
    return static_cast<std::uint64_t>(r);
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return sat(u128(a) + b); }

}  // namespace detail

/// 1-based index of a subset of {0..N-1} in the order (size, then
/// lexicographic). Index 1 is the empty set. Saturates at 2^64 - 1.
inline std::uint64_t subset_index(std::vector<std::uint64_t> positions, std::uint64_t universe)
{
    std::sort(positions.begin(), positions.end());
    if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
        throw std::invalid_argument("subset has repeated positions");
    if (!positions.empty() && positions.back() >= universe)
        throw std::out_of_range("subset position outside the ball");
    const std::uint64_t k = positions.size();
    std::uint64_t rank = 1;
    for (std::uint64_t j = 0; j < k; ++j)
        rank = detail::sat_add(rank, detail::binomial(universe, j));
    std::uint64_t next = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        for (std::uint64_t x = next; x < positions[i]; ++x)
            rank = detail::sat_add(rank, detail::binomial(universe - 1 - x, k - 1 - i));
        next = positions[i] + 1;
    }
    return rank;
}

/// Inverse of subset_index.
inline std::vector<std::uint64_t> subset_from_index(std::uint64_t index, std::uint64_t universe)
{
    if (index == 0)
        throw std::out_of_range("subset indices start at 1");
    std::uint64_t rest = index - 1;
    std::uint64_t k = 0;
    for (;; ++k) {
        if (k > universe)
            throw std::out_of_range("subset index " + std::to_string(index) + " exceeds 2^" + std::to_string(universe));
        const auto c = detail::binomial(universe, k);
        if (rest < c)
            break;
        rest -= c;
    }
    std::vector<std::uint64_t> out;
    out.reserve(k);
    std::uint64_t x = 0;
    for (std::uint64_t i = 0; i < k; ++i) {
        for (;; ++x) {
            const auto c = detail::binomial(universe - 1 - x, k - 1 - i);
            if (rest < c)
                break;
            rest -= c;
        }
        out.push_back(x++);
    }
    return out;
}

/// L_m(gamma) = gamma^-1 kappa_m(gamma) as ball positions.
inline std::vector<std::uint64_t> witness_positions(const Word& gamma, std::size_t m)
{
    const auto inv = inverse(gamma);
    std::vector<std::uint64_t> out;
    for (const auto& w : kappa(gamma, m))
        out.push_back(ball_index(mul(inv, w)));
    std::sort(out.begin(), out.end());
    return out;
}

/// i_{m,n,gamma}: the canonical index of L_m(gamma) among subsets of B_F(e).
inline std::uint64_t witness_index(const Word& gamma, std::size_t m)
{
    const auto h = static_cast<Height>(river::distance_to_river(gamma) + 1);
    const auto universe = ball_size(gamma.spec(), code_radius(m, h));
    return subset_index(witness_positions(gamma, m), universe);
}

/// Recovers kappa_m(gamma) from a decoded index.
inline std::vector<Word> witness_set(const Word& gamma, std::size_t m, Height n, std::uint64_t index)
{
    std::vector<Word> out;
    for (auto pos : subset_from_index(index, ball_size(gamma.spec(), code_radius(m, n))))
        out.push_back(mul(gamma, ball_word(gamma.spec(), pos)));
    std::sort(out.begin(), out.end());
    return out;
}

inline constexpr std::uint64_t kDefaultCodeBudget = std::uint64_t{1} << 20;

/// One block: "11" followed by index copies of "010".
inline void append_code_block(BitString& out, std::uint64_t index)
{
    out.append("11");
    for (std::uint64_t i = 0; i < index; ++i)
        out.append("010");
}

/// c_gamma up to block m_max. Throws BudgetError when the unary blocks would
/// exceed budget_bits.
inline BitString encode_witness(const Word& gamma, std::size_t m_max, std::uint64_t budget_bits = kDefaultCodeBudget)
{
    std::vector<std::uint64_t> indices;
    std::uint64_t total = 0;
    for (std::size_t m = 1; m <= m_max; ++m) {
        const auto idx = witness_index(gamma, m);
        indices.push_back(idx);
        total = detail::sat_add(total, detail::sat(detail::u128(idx) * 3 + 2));
        if (total > budget_bits)
            throw BudgetError("witness code of " + to_string(gamma) + " through m = " + std::to_string(m) +
                              " needs more than " + std::to_string(budget_bits) + " bits");
    }
    BitString out;
    for (auto idx : indices)
        append_code_block(out, idx);
    return out;
}

/// The first s bits of the infinite code c_gamma, computing only the blocks
/// that reach into the prefix.
inline BitString witness_code_prefix(const Word& gamma, std::size_t s)
{
    BitString out;
    for (std::size_t m = 1; out.size() < s; ++m) {
        const auto idx = witness_index(gamma, m);
        out.append("11");
        for (std::uint64_t i = 0; i < idx && out.size() < s; ++i)
            out.append("010");
    }
    return out.prefix(s);
}

struct CodeBlock {
    std::size_t m = 0;
    Height n = 0;
    std::uint64_t index = 0;

    friend bool operator==(const CodeBlock&, const CodeBlock&) = default;
};

class CodeParseError : public std::invalid_argument {
public:
    CodeParseError(std::size_t offset, const std::string& what)
        : std::invalid_argument("witness code error at bit " + std::to_string(offset) + ": " + what), offset_(offset)
    {
    }
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

enum class DecodeMode {
    strict,  ///< the input must end on a complete block
    prefix,  ///< the input is a prefix of a longer code; the trailing block is dropped
};

/// Parses (11 (010)^i)* with i >= 1. Offsets are 0-based bit offsets.
inline std::vector<CodeBlock> decode_witness(const BitString& bits, Height height, DecodeMode mode = DecodeMode::strict)
{
    const auto text = bits.str();
    const std::size_t n = text.size();
    std::vector<CodeBlock> out;
    std::size_t pos = 0;
    auto truncated = [&](std::size_t at, const char* what) -> std::vector<CodeBlock> {
        if (mode == DecodeMode::prefix)
            return out;
        throw CodeParseError(at, what);
    };
    while (pos < n) {
        if (n - pos < 2) {
            if (text[pos] == '1')
                return truncated(pos, "truncated separator");
            throw CodeParseError(pos, "expected separator 11");
        }
        if (text.compare(pos, 2, "11") != 0)
            throw CodeParseError(pos, "expected separator 11");
        pos += 2;
        std::uint64_t count = 0;
        while (true) {
            if (pos == n)
                break;
            if (text.compare(pos, 2, "11") == 0 && n - pos >= 2)
                break;
            if (n - pos < 3) {
                if (std::string_view("010").starts_with(std::string_view(text).substr(pos)))
                    return truncated(pos, "truncated 010 piece");
                if (text[pos] == '1' && n - pos == 1 && count > 0)
                    return truncated(pos, "truncated separator");
                throw CodeParseError(pos, "expected 010 piece or separator");
            }
            if (text.compare(pos, 3, "010") != 0)
                throw CodeParseError(pos, "expected 010 piece or separator");
            pos += 3;
            ++count;
        }
        if (count == 0) {
            if (pos == n)
                return truncated(pos, "empty block");
            throw CodeParseError(pos, "empty block");
        }
        if (pos == n && mode == DecodeMode::prefix)
            return out;  // the final block may continue beyond the prefix
        out.push_back({out.size() + 1, height, count});
    }
    return out;
}

/// The coded stage: every label becomes interleave(lambda, c_gamma), both
/// halves of the old length, so the result has twice as many bits.
inline Landscape attach_witness_code(const Landscape& z)
{
    if (z.provenance != Provenance::river || z.stage != LabelStage::proper)
        throw std::invalid_argument("the witness code needs a river landscape with proper labels");
    Landscape out = z;
    out.stage = LabelStage::coded;
    out.label_bits = 2 * z.label_bits;
    for (VertexId v = 0; v < z.window->size(); ++v)
        out.labels[v] = interleave(z.labels[v], witness_code_prefix(z.window->word(v), z.label_bits));
    return out;
}

}  // namespace cantorland
