#pragma once

// Exact word arithmetic for the shipped groups: free groups F_k and the
// integers. Words are kept in free normal form; the integers are stored as a
// signed power of the single generator.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cantorland {

/// Signed generator index: +i is the i-th generator, -i its inverse (i >= 1).
using Letter = std::int8_t;

enum class GroupKind : std::uint8_t { free, integers };

struct GroupSpec {
    GroupKind kind = GroupKind::free;
    int rank = 2;

    static GroupSpec free_group(int rank)
    {
        if (rank < 1 || rank > 60)
            throw std::invalid_argument("free group rank must be in 1..60");
        return {GroupKind::free, rank};
    }
    static GroupSpec integers() { return {GroupKind::integers, 1}; }

    /// |Sigma|, the size of the symmetric generating set.
    int degree() const { return 2 * rank; }

    friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

inline std::string to_string(const GroupSpec& spec)
{
    if (spec.kind == GroupKind::integers)
        return "z";
    return "f" + std::to_string(spec.rank);
}

/// Position of a letter in the generator order a, a^-1, b, b^-1, ...
inline int letter_order(Letter l)
{
    return 2 * (std::abs(static_cast<int>(l)) - 1) + (l < 0 ? 1 : 0);
}

inline Letter letter_from_order(int order)
{
    const auto gen = static_cast<Letter>(order / 2 + 1);
    return (order % 2 == 0) ? gen : static_cast<Letter>(-gen);
}

class MixedGroupError : public std::invalid_argument {
public:
    MixedGroupError() : std::invalid_argument("words belong to different group specs") {}
};

class Word {
public:
    Word() = default;
    explicit Word(GroupSpec spec) : spec_(spec) {}

    /// Builds the identity-free power a^n in the integers.
    static Word power(GroupSpec spec, std::int64_t n)
    {
        if (spec.kind != GroupKind::integers)
            throw std::invalid_argument("Word::power is only defined for the integers");
        Word w(spec);
        w.power_ = n;
        return w;
    }

    /// Wraps letters that are already freely reduced. No checks beyond debug.
    static Word from_reduced(GroupSpec spec, std::vector<Letter> letters)
    {
        Word w(spec);
        if (spec.kind == GroupKind::integers) {
            for (Letter l : letters)
                w.power_ += (l > 0) ? 1 : -1;
        } else {
            w.letters_ = std::move(letters);
        }
        return w;
    }

    const GroupSpec& spec() const { return spec_; }

    std::size_t length() const
    {
        if (spec_.kind == GroupKind::integers)
            return static_cast<std::size_t>(power_ < 0 ? -power_ : power_);
        return letters_.size();
    }

    bool is_identity() const { return length() == 0; }

    /// Signed exponent; only meaningful for the integers.
    std::int64_t exponent() const { return power_; }

    /// Letters of a free-group word, without copying.
    std::span<const Letter> free_letters() const { return letters_; }

    Letter letter(std::size_t i) const
    {
        if (spec_.kind == GroupKind::integers)
            return power_ > 0 ? Letter{1} : Letter{-1};
        return letters_[i];
    }

    Letter last_letter() const { return letter(length() - 1); }

    std::vector<Letter> to_letters() const
    {
        if (spec_.kind == GroupKind::free)
            return letters_;
        return std::vector<Letter>(length(), power_ > 0 ? Letter{1} : Letter{-1});
    }

    friend bool operator==(const Word& a, const Word& b)
    {
        return a.spec_ == b.spec_ && a.power_ == b.power_ && a.letters_ == b.letters_;
    }

    /// Enumeration order: shorter first, then lexicographic in letter_order.
    friend bool operator<(const Word& a, const Word& b)
    {
        if (a.length() != b.length())
            return a.length() < b.length();
        if (a.spec_.kind == GroupKind::integers)
            return a.power_ > b.power_;  // a^n precedes a^-n
        return std::lexicographical_compare(
            a.letters_.begin(), a.letters_.end(), b.letters_.begin(), b.letters_.end(),
            [](Letter x, Letter y) { return letter_order(x) < letter_order(y); });
    }

    std::size_t hash() const
    {
        std::size_t h = std::hash<std::int64_t>{}(power_) ^ (static_cast<std::size_t>(spec_.rank) << 48);
        for (Letter l : letters_)
            h = h * 1099511628211ULL ^ static_cast<std::size_t>(static_cast<std::uint8_t>(l));
        return h;
    }

private:
    friend Word reduce(GroupSpec, std::span<const Letter>);
    friend Word mul(const Word&, const Word&);
    friend Word inverse(const Word&);

    GroupSpec spec_{};
    std::vector<Letter> letters_;
    std::int64_t power_ = 0;
};

struct WordHash {
    std::size_t operator()(const Word& w) const { return w.hash(); }
};

inline void check_letter(const GroupSpec& spec, Letter l)
{
    const int g = std::abs(static_cast<int>(l));
    if (g < 1 || g > spec.rank)
        throw std::out_of_range("letter " + std::to_string(static_cast<int>(l)) +
                                " is outside the generating set of " + to_string(spec));
}

/// Free reduction of an arbitrary letter sequence (stack based, one pass).
inline Word reduce(GroupSpec spec, std::span<const Letter> letters)
{
    Word w(spec);
    for (Letter l : letters) {
        check_letter(spec, l);
        if (spec.kind == GroupKind::integers) {
            w.power_ += (l > 0) ? 1 : -1;
        } else if (!w.letters_.empty() && w.letters_.back() == -l) {
            w.letters_.pop_back();
        } else {
            w.letters_.push_back(l);
        }
    }
    return w;
}

inline Word reduce(GroupSpec spec, std::initializer_list<Letter> letters)
{
    return reduce(spec, std::span<const Letter>(letters.begin(), letters.size()));
}

inline Word identity(GroupSpec spec) { return Word(spec); }

inline Word generator(GroupSpec spec, Letter l)
{
    check_letter(spec, l);
    return reduce(spec, {l});
}

inline Word inverse(const Word& w)
{
    Word r(w.spec_);
    r.power_ = -w.power_;
    r.letters_.reserve(w.letters_.size());
    for (auto it = w.letters_.rbegin(); it != w.letters_.rend(); ++it)
        r.letters_.push_back(static_cast<Letter>(-*it));
    return r;
}

inline Word mul(const Word& u, const Word& v)
{
    if (!(u.spec_ == v.spec_))
        throw MixedGroupError();
    Word r(u.spec_);
    if (u.spec_.kind == GroupKind::integers) {
        r.power_ = u.power_ + v.power_;
        return r;
    }
    std::size_t cancel = 0;
    const std::size_t nu = u.letters_.size();
    const std::size_t nv = v.letters_.size();
    while (cancel < nu && cancel < nv && u.letters_[nu - 1 - cancel] == -v.letters_[cancel])
        ++cancel;
    r.letters_.reserve(nu + nv - 2 * cancel);
    r.letters_.insert(r.letters_.end(), u.letters_.begin(), u.letters_.end() - static_cast<std::ptrdiff_t>(cancel));
    r.letters_.insert(r.letters_.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(cancel), v.letters_.end());
    return r;
}

inline Word operator*(const Word& u, const Word& v) { return mul(u, v); }

/// Word metric d_G(u, v) = |u^-1 v|.
inline std::size_t dist(const Word& u, const Word& v)
{
    if (!(u.spec() == v.spec()))
        throw MixedGroupError();
    if (u.spec().kind == GroupKind::integers) {
        const auto d = v.exponent() - u.exponent();
        return static_cast<std::size_t>(d < 0 ? -d : d);
    }
    const auto a = u.free_letters();
    const auto b = v.free_letters();
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common])
        ++common;
    return (a.size() - common) + (b.size() - common);
}

// ---------------------------------------------------------------------------
// Ball counting and ranking in the deterministic enumeration order.

/// |S_r|, the number of reduced words of length exactly r.
inline std::uint64_t sphere_size(const GroupSpec& spec, std::size_t r)
{
    if (r == 0)
        return 1;
    if (spec.kind == GroupKind::integers)
        return 2;
    const auto d = static_cast<std::uint64_t>(spec.degree());
    std::uint64_t n = d;
    for (std::size_t i = 1; i < r; ++i) {
        if (n > std::numeric_limits<std::uint64_t>::max() / (d - 1))
            return std::numeric_limits<std::uint64_t>::max();
        n *= (d - 1);
    }
    return n;
}

/// |B_r|, saturating at uint64 max.
inline std::uint64_t ball_size(const GroupSpec& spec, std::size_t r)
{
    std::uint64_t total = 0;
    for (std::size_t i = 0; i <= r; ++i) {
        const auto s = sphere_size(spec, i);
        if (total > std::numeric_limits<std::uint64_t>::max() - s)
            return std::numeric_limits<std::uint64_t>::max();
        total += s;
    }
    return total;
}

/// Zero-based index of w in the enumeration of any ball containing it.
inline std::uint64_t ball_index(const Word& w)
{
    const auto n = w.length();
    if (n == 0)
        return 0;
    const auto& spec = w.spec();
    const std::uint64_t before = ball_size(spec, n - 1);
    if (spec.kind == GroupKind::integers)
        return before + (w.exponent() > 0 ? 0 : 1);
    const auto letters = w.free_letters();
    const int d = spec.degree();
    std::uint64_t rank = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const int ord = letter_order(letters[i]);
        std::uint64_t smaller = 0;
        for (int c = 0; c < ord; ++c) {
            if (i > 0 && letter_from_order(c) == -letters[i - 1])
                continue;
            ++smaller;
        }
        std::uint64_t tail = 1;
        for (std::size_t j = i + 1; j < n; ++j)
            tail *= static_cast<std::uint64_t>(d - 1);
        rank += smaller * tail;
    }
    return before + rank;
}

/// Inverse of ball_index.
inline Word ball_word(const GroupSpec& spec, std::uint64_t index)
{
    std::size_t n = 0;
    while (index >= ball_size(spec, n))
        ++n;
    if (n == 0)
        return identity(spec);
    std::uint64_t rank = index - ball_size(spec, n - 1);
    if (spec.kind == GroupKind::integers)
        return Word::power(spec, rank == 0 ? static_cast<std::int64_t>(n) : -static_cast<std::int64_t>(n));
    const int d = spec.degree();
    std::vector<Letter> letters;
    letters.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t tail = 1;
        for (std::size_t j = i + 1; j < n; ++j)
            tail *= static_cast<std::uint64_t>(d - 1);
        for (int c = 0; c < d; ++c) {
            const Letter l = letter_from_order(c);
            if (i > 0 && l == -letters[i - 1])
                continue;
            if (rank < tail) {
                letters.push_back(l);
                break;
            }
            rank -= tail;
        }
    }
    return Word::from_reduced(spec, std::move(letters));
}

inline std::string to_string(const Word& w)
{
    if (w.is_identity())
        return "e";
    if (w.spec().kind == GroupKind::integers)
        return std::to_string(w.exponent());
    std::string s;
    for (Letter l : w.free_letters()) {
        const int g = std::abs(static_cast<int>(l));
        s += (g <= 26) ? static_cast<char>('a' + g - 1) : '?';
        if (l < 0)
            s += '\'';
    }
    return s;
}

}  // namespace cantorland
