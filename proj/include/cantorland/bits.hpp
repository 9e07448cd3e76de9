#pragma once

// Finite bit strings with 1-based positions, plus the coordinate channel
// operations (interleaving and odd/even projection) used on Cantor labels.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cantorland {

class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t n, bool value = false) : bits_(n, value) {}

    /// Parses '0'/'1' characters; spaces are ignored so codes can be written
    /// in readable groups such as "11 010".
    static BitString parse(std::string_view text)
    {
        BitString b;
        for (char c : text) {
            if (c == ' ')
                continue;
            if (c != '0' && c != '1')
                throw std::invalid_argument("bit string may only contain 0, 1 and spaces");
            b.bits_.push_back(c == '1');
        }
        return b;
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }

    /// Bit at 1-based position pos.
    bool at(std::size_t pos) const
    {
        if (pos == 0 || pos > bits_.size())
            throw std::out_of_range("bit position " + std::to_string(pos) + " outside 1.." +
                                    std::to_string(bits_.size()));
        return bits_[pos - 1];
    }

    void set(std::size_t pos, bool value)
    {
        if (pos == 0 || pos > bits_.size())
            throw std::out_of_range("bit position " + std::to_string(pos) + " outside 1.." +
                                    std::to_string(bits_.size()));
        bits_[pos - 1] = value;
    }

    void push_back(bool b) { bits_.push_back(b); }
    void append(const BitString& other) { bits_.insert(bits_.end(), other.bits_.begin(), other.bits_.end()); }
    void append(std::string_view pattern)
    {
        for (char c : pattern)
            bits_.push_back(c == '1');
    }
    void resize(std::size_t n) { bits_.resize(n, false); }

    /// (x)_s: the first s coordinates.
    BitString prefix(std::size_t s) const
    {
        if (s > bits_.size())
            throw std::out_of_range("prefix length " + std::to_string(s) + " exceeds " +
                                    std::to_string(bits_.size()));
        BitString out;
        out.bits_.assign(bits_.begin(), bits_.begin() + static_cast<std::ptrdiff_t>(s));
        return out;
    }

    bool is_prefix_of(const BitString& other) const
    {
        return bits_.size() <= other.bits_.size() &&
               std::equal(bits_.begin(), bits_.end(), other.bits_.begin());
    }

    std::string str() const
    {
        std::string s;
        s.reserve(bits_.size());
        for (bool b : bits_)
            s += b ? '1' : '0';
        return s;
    }

    /// Hex packing: position 1 is the most significant bit of the first
    /// nibble; the tail nibble is zero padded. Length is kept separately.
    std::string hex() const
    {
        static constexpr char digits[] = "0123456789abcdef";
        std::string out;
        out.reserve((bits_.size() + 3) / 4);
        for (std::size_t i = 0; i < bits_.size(); i += 4) {
            int nibble = 0;
            for (std::size_t j = 0; j < 4; ++j) {
                nibble <<= 1;
                if (i + j < bits_.size() && bits_[i + j])
                    nibble |= 1;
            }
            out += digits[nibble];
        }
        return out;
    }

    static BitString from_hex(std::string_view hex, std::size_t length)
    {
        if (hex.size() != (length + 3) / 4)
            throw std::invalid_argument("hex string has " + std::to_string(hex.size()) +
                                        " digits, expected " + std::to_string((length + 3) / 4));
        BitString b(length);
        for (std::size_t i = 0; i < hex.size(); ++i) {
            const char c = hex[i];
            int nibble;
            if (c >= '0' && c <= '9')
                nibble = c - '0';
            else if (c >= 'a' && c <= 'f')
                nibble = c - 'a' + 10;
            else
                throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
            for (std::size_t j = 0; j < 4; ++j) {
                const std::size_t idx = 4 * i + j;
                const bool bit = (nibble >> (3 - j)) & 1;
                if (idx < length)
                    b.bits_[idx] = bit;
                else if (bit)
                    throw std::invalid_argument("nonzero padding in hex bit string");
            }
        }
        return b;
    }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend bool operator<(const BitString& a, const BitString& b) { return a.bits_ < b.bits_; }

    std::size_t hash() const { return std::hash<std::vector<bool>>{}(bits_); }

private:
    std::vector<bool> bits_;
};

/// (u1 v1 u2 v2 ...), requires |u| = |v|.
inline BitString interleave(const BitString& u, const BitString& v)
{
    if (u.size() != v.size())
        throw std::invalid_argument("interleave needs equal lengths, got " + std::to_string(u.size()) + " and " +
                                    std::to_string(v.size()));
    BitString out(2 * u.size());
    for (std::size_t i = 1; i <= u.size(); ++i) {
        out.set(2 * i - 1, u.at(i));
        out.set(2 * i, v.at(i));
    }
    return out;
}

/// Bits at positions 1, 3, 5, ...
inline BitString project_odd(const BitString& w)
{
    BitString out((w.size() + 1) / 2);
    for (std::size_t i = 1; i <= out.size(); ++i)
        out.set(i, w.at(2 * i - 1));
    return out;
}

/// Bits at positions 2, 4, 6, ...
inline BitString project_even(const BitString& w)
{
    BitString out(w.size() / 2);
    for (std::size_t i = 1; i <= out.size(); ++i)
        out.set(i, w.at(2 * i));
    return out;
}

}  // namespace cantorland
