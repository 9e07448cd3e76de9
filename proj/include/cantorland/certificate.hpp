#pragma once

// The doubling certificate: a target local set together with translated
// pieces that cover it twice. Pure data; see checker.hpp for verification.

#include <optional>
#include <string>
#include <vector>

#include "cantorland/group.hpp"
#include "cantorland/localset.hpp"

namespace cantorland {

struct ClauseResult {
    int clause = 0;  ///< 1 containment, 2 disjointness, 3 covering
    bool pass = true;
    std::string detail;
};

struct VerificationReport {
    bool pass = true;
    std::vector<ClauseResult> clauses;

    std::string first_failure() const
    {
        for (const auto& c : clauses)
            if (!c.pass)
                return "clause " + std::to_string(c.clause) + ": " + c.detail;
        return {};
    }
};

struct DoublingCertificate {
    GroupSpec spec{};
    std::size_t window_radius = 0;

    std::size_t m = 0;    ///< radius of the target
    LocalSet target;      ///< S
    std::size_t l = 0;    ///< radius of the pieces
    std::size_t K = 0;    ///< displacement bound, 0 for the trivial certificate
    std::size_t p = 0;
    std::size_t q = 0;
    std::vector<LocalSet> pieces;   ///< S^1 .. S^{p+q}
    std::vector<Word> translators;  ///< gamma_1 .. gamma_{p+q}
    std::vector<std::size_t> channels;
    std::size_t core_radius = 0;  ///< the identities are claimed on B_{core_radius}

    std::optional<VerificationReport> verification;
};

}  // namespace cantorland
