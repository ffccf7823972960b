#pragma once

#include <optional>
#include <vector>

#include "fpp/judgments.hpp"

namespace fpp {

struct solver_config {
    /// Bisection stops once the bracket around the optimal index is this wide.
    double lambda_tolerance = 1e-9;
    /// Strict positivity w_k > 0 is realized as w_k >= epsilon_w. Must stay
    /// below 1/n for every matrix solved.
    double epsilon_w = 1e-6;
    /// How often the lower bracket end may be doubled before giving up.
    int max_expansions = 48;
    /// Cap on feasibility probes across expansion and bisection.
    int max_iterations = 256;

    void validate(std::size_t item_count) const;
};

/// Crisp priorities extracted from a fuzzy comparison matrix.
struct prioritization_result {
    std::vector<double> weights;  // on the simplex, each >= epsilon_w
    double lambda = 0.0;          // consistency index; 1 = all modal ratios met
    int iterations = 0;           // feasibility probes performed
    double residual = 0.0;        // max constraint violation at (weights, lambda)
};

/// Maximizes the consistency index: the largest lambda such that some weight
/// vector on the simplex keeps every ratio w_i/w_j inside its judgment band
/// with membership degree >= lambda. Equivalently, the max over the simplex
/// of the min over pairs of membership(w_i/w_j).
///
/// For fixed lambda every band constraint is linear in w, so the scalar is
/// bisected over [-2, 1] (the lower end doubling until feasible) with a
/// phase-1 linear feasibility probe per step. lambda > 1 is structurally
/// infeasible, and every constraint relaxes as lambda -> -inf, so the
/// bracket is always valid.
prioritization_result solve(const comparison_matrix& matrix, const solver_config& config = {});

/// One bisection probe: a weight vector satisfying all band constraints at
/// this lambda (w on the simplex, w_k >= epsilon_w), or std::nullopt when
/// none exists.
std::optional<std::vector<double>> feasible_at(const comparison_matrix& matrix, double lambda,
                                               const solver_config& config = {});

/// Brute-force check of solve(), independent of the feasibility machinery:
/// evaluates min-membership on a barycentric grid with `grid_steps`
/// subdivisions, then on a few shrinking local grids around the incumbent.
/// Every evaluated point lies on the simplex, so the returned value is a
/// guaranteed lower bound on the true optimum. Exponential in n; rejects
/// n > 4 and grid_steps < 100.
double oracle_lambda(const comparison_matrix& matrix, int grid_steps);

/// Max violation of the band constraints, the simplex constraint, and the
/// positivity floor at the given point. Zero (up to round-off) certifies the
/// pair (weights, lambda) as feasible.
double constraint_residual(const comparison_matrix& matrix, const std::vector<double>& weights,
                           double lambda, double epsilon_w = 1e-6);

}  // namespace fpp
