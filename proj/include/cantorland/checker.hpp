#pragma once

// Independent certificate checker. It reads labels and heights straight off a
// landscape snapshot and recomputes local-set membership with plain word
// arithmetic; none of the construction code (stencils, realize, matching,
// relabeling) is used.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "cantorland/certificate.hpp"
#include "cantorland/landscape.hpp"

namespace cantorland {

class WindowMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace checker_detail {

/// Membership of one local set, evaluated where its support fits.
class Membership {
public:
    Membership(const LocalSet& set, const Landscape& z) : set_(set), z_(z)
    {
        const auto& w = *z.window;
        support_ = set.kind == LocalSet::Kind::patterns ? set.m : 0;
        evaluable_ = w.radius() >= support_ ? w.radius() - support_ : 0;
        if (set.kind == LocalSet::Kind::patterns) {
            for (const auto& p : set.patterns)
                keys_.insert(p.canonical());
            for (std::uint64_t j = 0; j < ball_size(w.spec(), set.m); ++j)
                offsets_.push_back(ball_word(w.spec(), j));
        } else if (set.center_bit == 0 || set.center_bit > z.label_bits) {
            throw std::invalid_argument("cylinder bit " + std::to_string(set.center_bit) + " outside the labels");
        }
    }

    /// Vertices of B_{evaluable_radius()} can be decided.
    std::size_t evaluable_radius() const { return evaluable_; }

    bool contains(VertexId v) const
    {
        const auto& w = *z_.window;
        if (w.length(v) > evaluable_)
            throw std::out_of_range("membership undecidable at " + to_string(w.word(v)));
        if (set_.kind == LocalSet::Kind::center_bit)
            return z_.labels[v].at(set_.center_bit) && z_.heights[v] <= set_.max_height;
        if (keys_.empty())
            return false;
        const auto gamma = w.word(v);
        std::string key;
        for (std::size_t j = 0; j < offsets_.size(); ++j) {
            const auto u = w.find(mul(gamma, offsets_[j]));
            if (!u)
                throw std::out_of_range("pattern ball leaves the window");
            if (j)
                key += ',';
            key += z_.labels[*u].prefix(set_.m).str();
            key += '/';
            key += std::to_string(z_.heights[*u]);
        }
        return keys_.count(key) != 0;
    }

private:
    const LocalSet& set_;
    const Landscape& z_;
    std::size_t support_ = 0;
    std::size_t evaluable_ = 0;
    std::set<std::string> keys_;
    std::vector<Word> offsets_;
};

}  // namespace checker_detail

/// Checks on the certificate's core: (1) every piece lies in T, (2) pieces
/// are pairwise disjoint, (3) T equals the union of the translated first p
/// pieces and also of the translated last q pieces.
inline VerificationReport verify_certificate(const Landscape& z, const DoublingCertificate& cert)
{
    const auto& w = *z.window;
    if (!(cert.spec == w.spec()) || cert.window_radius != w.radius())
        throw WindowMismatch("certificate is for " + to_string(cert.spec) + " radius " +
                             std::to_string(cert.window_radius) + ", landscape window is " + to_string(w.spec()) +
                             " radius " + std::to_string(w.radius()));
    if (cert.pieces.size() != cert.p + cert.q || cert.translators.size() != cert.p + cert.q)
        throw std::invalid_argument("certificate has " + std::to_string(cert.pieces.size()) + " pieces and " +
                                    std::to_string(cert.translators.size()) + " translators for p + q = " +
                                    std::to_string(cert.p + cert.q));
    if (cert.target.m != cert.m)
        throw std::invalid_argument("target radius differs from m");

    VerificationReport report;
    auto note = [&](int clause, bool ok, std::string detail) {
        report.clauses.push_back({clause, ok, std::move(detail)});
        report.pass = report.pass && ok;
    };

    const checker_detail::Membership target(cert.target, z);
    if (cert.core_radius > target.evaluable_radius())
        throw std::invalid_argument("certificate core radius " + std::to_string(cert.core_radius) +
                                    " exceeds the radius where the target is decidable");
    std::vector<checker_detail::Membership> pieces;
    pieces.reserve(cert.pieces.size());
    for (const auto& s : cert.pieces)
        pieces.emplace_back(s, z);

    // T on the region where it is decidable.
    const auto t_count = w.core_size(target.evaluable_radius());
    std::vector<char> in_t(w.size(), 0);
    for (VertexId v = 0; v < t_count; ++v)
        in_t[v] = target.contains(v);

    // Piece membership over each piece's decidable region.
    std::vector<std::vector<char>> in_piece(pieces.size(), std::vector<char>(w.size(), 0));
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto count = w.core_size(pieces[i].evaluable_radius());
        for (VertexId v = 0; v < count; ++v)
            in_piece[i][v] = pieces[i].contains(v);
    }

    // 1: containment.
    {
        std::string fail;
        for (std::size_t i = 0; i < pieces.size() && fail.empty(); ++i) {
            for (VertexId v = 0; v < w.size(); ++v) {
                if (!in_piece[i][v])
                    continue;
                if (v >= t_count) {
                    fail = "piece " + std::to_string(i + 1) + " member " + to_string(w.word(v)) +
                           " lies where T is undecidable";
                    break;
                }
                if (!in_t[v]) {
                    fail = "piece " + std::to_string(i + 1) + " member " + to_string(w.word(v)) + " is not in T";
                    break;
                }
            }
        }
        note(1, fail.empty(), fail.empty() ? "every piece lies in T" : fail);
    }

    // 2: disjointness.
    {
        std::string fail;
        for (VertexId v = 0; v < w.size() && fail.empty(); ++v) {
            int owner = -1;
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                if (!in_piece[i][v])
                    continue;
                if (owner >= 0) {
                    fail = "pieces " + std::to_string(owner + 1) + " and " + std::to_string(i + 1) + " share " +
                           to_string(w.word(v));
                    break;
                }
                owner = static_cast<int>(i);
            }
        }
        note(2, fail.empty(), fail.empty() ? "pieces are pairwise disjoint" : fail);
    }

    // 3: both covering identities on the core.
    {
        std::vector<Word> inverse_translators;
        for (const auto& g : cert.translators) {
            if (!(g.spec() == w.spec()))
                throw MixedGroupError();
            inverse_translators.push_back(inverse(g));
        }
        std::string fail;
        const auto core_count = w.core_size(cert.core_radius);
        for (VertexId x = 0; x < core_count && fail.empty(); ++x) {
            const auto gx = w.word(x);
            for (int side = 0; side < 2 && fail.empty(); ++side) {
                const std::size_t lo = side == 0 ? 0 : cert.p;
                const std::size_t hi = side == 0 ? cert.p : cert.p + cert.q;
                bool covered = false;
                for (std::size_t i = lo; i < hi && !covered; ++i) {
                    const auto y = w.find(mul(gx, inverse_translators[i]));
                    if (!y) {
                        fail = "preimage of " + to_string(gx) + " under translator " + std::to_string(i + 1) +
                               " leaves the window";
                        break;
                    }
                    covered = in_piece[i][*y] != 0;
                }
                if (!fail.empty())
                    break;
                if (covered != (in_t[x] != 0))
                    fail = std::string(side == 0 ? "first" : "second") + " covering fails at " + to_string(gx) +
                           (in_t[x] ? ": in T but uncovered" : ": covered but not in T");
            }
        }
        note(3, fail.empty(),
             fail.empty() ? "both coverings equal T on B_" + std::to_string(cert.core_radius) : fail);
    }
    return report;
}

}  // namespace cantorland
