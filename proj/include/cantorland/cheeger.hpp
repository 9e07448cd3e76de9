#pragma once

// Spectral lower bound for the expansion of a set graph, as a diagnostic.
// For every S inside the interior U, |edge boundary of S| >= lambda |S| where
// lambda is the least eigenvalue of the Laplacian restricted to U (Dirichlet
// condition outside U). Requires Eigen.

#include <optional>

#include <Eigen/Dense>

#include "cantorland/paradox.hpp"

namespace cantorland {

struct CheegerEstimate {
    std::size_t interior = 0;
    double edge_bound = 0.0;    ///< lambda_min
    double vertex_bound = 0.0;  ///< lambda_min / max degree
};

inline constexpr std::size_t kMaxCheegerInterior = 3000;

/// nullopt when the interior is empty or larger than kMaxCheegerInterior.
inline std::optional<CheegerEstimate> cheeger_lower_bound(const SetGraph& g, const Window& window, std::size_t interior_radius)
{
    std::vector<std::uint32_t> inner;
    std::vector<int> index(g.vertices.size(), -1);
    for (std::uint32_t i = 0; i < g.vertices.size(); ++i)
        if (window.length(g.vertices[i]) <= interior_radius) {
            index[i] = static_cast<int>(inner.size());
            inner.push_back(i);
        }
    if (inner.empty() || inner.size() > kMaxCheegerInterior)
        return std::nullopt;
    const auto n = static_cast<Eigen::Index>(inner.size());
    Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const auto& nb = g.adjacency[inner[static_cast<std::size_t>(r)]];
        lap(r, r) = static_cast<double>(nb.size());
        for (auto j : nb)
            if (index[j] >= 0)
                lap(r, index[j]) -= 1.0;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap, Eigen::EigenvaluesOnly);
    CheegerEstimate est;
    est.interior = inner.size();
    est.edge_bound = std::max(0.0, solver.eigenvalues()(0));
    est.vertex_bound = g.max_degree ? est.edge_bound / static_cast<double>(g.max_degree) : 0.0;
    return est;
}

}  // namespace cantorland
