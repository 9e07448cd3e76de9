#pragma once

// Pattern balls and local sets as plain values: construction-free types shared
// by the builders and the certificate checker.

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorland/bits.hpp"
#include "cantorland/group.hpp"

namespace cantorland {

using Height = int;

/// An element of CU^{m,n}: for each delta in B_m(e), in ball order, the
/// m-bit label prefix and the height of gamma delta.
struct PatternBall {
    struct Entry {
        BitString bits;
        Height height = 0;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    std::size_t m = 0;
    std::vector<Entry> entries;

    Height center_height() const { return entries.at(0).height; }

    /// "bits/height,bits/height,..." in ball order.
    std::string canonical() const
    {
        std::string s;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (i)
                s += ',';
            s += entries[i].bits.str();
            s += '/';
            s += std::to_string(entries[i].height);
        }
        return s;
    }

    static PatternBall parse(const GroupSpec& spec, std::size_t m, const std::string& text)
    {
        PatternBall b;
        b.m = m;
        std::stringstream in(text);
        std::string item;
        while (std::getline(in, item, ',')) {
            const auto slash = item.find('/');
            if (slash == std::string::npos)
                throw std::invalid_argument("pattern entry '" + item + "' lacks a height");
            Entry e{BitString::parse(item.substr(0, slash)), 0};
            std::size_t used = 0;
            e.height = std::stoi(item.substr(slash + 1), &used);
            if (used != item.size() - slash - 1 || e.height < 1)
                throw std::invalid_argument("bad height in pattern entry '" + item + "'");
            if (e.bits.size() != m)
                throw std::invalid_argument("pattern entry '" + item + "' should carry " + std::to_string(m) + " bits");
            b.entries.push_back(std::move(e));
        }
        if (b.entries.size() != ball_size(spec, m))
            throw std::invalid_argument("pattern has " + std::to_string(b.entries.size()) + " entries, expected " +
                                        std::to_string(ball_size(spec, m)));
        return b;
    }

    friend bool operator==(const PatternBall& a, const PatternBall& b) { return a.m == b.m && a.entries == b.entries; }
    friend bool operator<(const PatternBall& a, const PatternBall& b)
    {
        if (a.m != b.m)
            return a.m < b.m;
        return a.canonical() < b.canonical();
    }

    std::size_t hash() const { return std::hash<std::string>{}(canonical()); }
};

/// A local set: either the preimage of an explicit set of radius-m pattern
/// balls, or the cylinder of radius-m balls whose center label has bit
/// center_bit set and whose center height is at most max_height. The
/// cylinder is a finite set of pattern balls described by its center, so it
/// is decided by the center alone.
struct LocalSet {
    enum class Kind { patterns, center_bit };

    Kind kind = Kind::patterns;
    std::size_t m = 0;
    std::set<PatternBall> patterns;
    std::size_t center_bit = 0;
    Height max_height = 0;

    static LocalSet explicit_set(std::size_t m, std::set<PatternBall> patterns = {})
    {
        LocalSet s;
        s.m = m;
        s.patterns = std::move(patterns);
        return s;
    }

    static LocalSet cylinder(std::size_t m, std::size_t bit, Height max_height)
    {
        if (bit == 0 || bit > m)
            throw std::invalid_argument("cylinder bit " + std::to_string(bit) + " outside 1.." + std::to_string(m));
        LocalSet s;
        s.kind = Kind::center_bit;
        s.m = m;
        s.center_bit = bit;
        s.max_height = max_height;
        return s;
    }

    /// How far from the center the membership test looks.
    std::size_t support_radius() const { return kind == Kind::patterns ? m : 0; }

    bool contains(const PatternBall& b) const
    {
        if (b.m != m)
            return false;
        if (kind == Kind::patterns)
            return patterns.count(b) != 0;
        return b.entries.at(0).bits.at(center_bit) && b.center_height() <= max_height;
    }

    /// Canonical key used to order targets: radius, then the sorted pattern
    /// serializations.
    std::string canonical() const
    {
        if (kind == Kind::center_bit)
            return "bit:" + std::to_string(center_bit) + "/" + std::to_string(max_height);
        std::string s;
        for (const auto& p : patterns) {
            s += p.canonical();
            s += ';';
        }
        return s;
    }

    friend bool operator==(const LocalSet& a, const LocalSet& b)
    {
        return a.kind == b.kind && a.m == b.m && a.patterns == b.patterns && a.center_bit == b.center_bit &&
               a.max_height == b.max_height;
    }
};

inline bool canonical_less(const LocalSet& a, const LocalSet& b)
{
    if (a.m != b.m)
        return a.m < b.m;
    return a.canonical() < b.canonical();
}

}  // namespace cantorland
