#include "fpp/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "phase1_lp.hpp"

namespace fpp {

void solver_config::validate(std::size_t item_count) const {
    if (!(lambda_tolerance > 0.0)) {
        throw error(errc::invalid_argument, "lambda_tolerance must be > 0");
    }
    if (max_expansions < 1 || max_iterations < 1) {
        throw error(errc::invalid_argument, "iteration budgets must be >= 1");
    }
    if (!(epsilon_w > 0.0) || epsilon_w * static_cast<double>(item_count) >= 1.0) {
        throw error(errc::invalid_matrix,
                    "epsilon_w must lie in (0, 1/n) for an n-item matrix");
    }
}

std::optional<std::vector<double>> feasible_at(const comparison_matrix& matrix, double lambda,
                                               const solver_config& config) {
    const std::size_t n = matrix.size();
    config.validate(n);
    const double eps = config.epsilon_w;

    // Band constraints for pair (i, j) with band (l, m, u):
    //   (m - l) * lambda * w_j - w_i + l * w_j <= 0
    //   (u - m) * lambda * w_j + w_i - u * w_j <= 0
    // posed over v = w - eps >= 0, which turns the positivity floor into
    // plain nonnegativity and shifts each rhs by -eps * (row sum).
    detail::feasibility_problem problem;
    problem.num_vars = n;
    problem.ineq_rows.reserve(n * (n - 1));
    problem.ineq_rhs.reserve(n * (n - 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const triangular_number& band = matrix.judgment(i, j);
            const double l = band.lower();
            const double m = band.modal();
            const double u = band.upper();

            std::vector<double> row(n, 0.0);
            row[i] = -1.0;
            row[j] = (m - l) * lambda + l;
            problem.ineq_rhs.push_back(-eps * (row[i] + row[j]));
            problem.ineq_rows.push_back(std::move(row));

            std::vector<double> row2(n, 0.0);
            row2[i] = 1.0;
            row2[j] = (u - m) * lambda - u;
            problem.ineq_rhs.push_back(-eps * (row2[i] + row2[j]));
            problem.ineq_rows.push_back(std::move(row2));
        }
    }
    problem.eq_rows.push_back(std::vector<double>(n, 1.0));
    problem.eq_rhs.push_back(1.0 - eps * static_cast<double>(n));

    auto v = detail::phase1_feasible_point(problem);
    if (!v) {
        return std::nullopt;
    }
    std::vector<double> weights(n);
    for (std::size_t k = 0; k < n; ++k) {
        weights[k] = (*v)[k] + eps;
    }
    // Ratios are scale-invariant, so renormalizing only tightens the simplex
    // constraint against round-off.
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    for (double& w : weights) {
        w /= total;
    }
    return weights;
}

double constraint_residual(const comparison_matrix& matrix, const std::vector<double>& weights,
                           double lambda, double epsilon_w) {
    const std::size_t n = matrix.size();
    double residual = std::fabs(std::accumulate(weights.begin(), weights.end(), 0.0) - 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        residual = std::max(residual, epsilon_w - weights[k]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const triangular_number& band = matrix.judgment(i, j);
            const double l = band.lower();
            const double m = band.modal();
            const double u = band.upper();
            const double lo = (m - l) * lambda * weights[j] - weights[i] + l * weights[j];
            const double hi = (u - m) * lambda * weights[j] + weights[i] - u * weights[j];
            residual = std::max({residual, lo, hi});
        }
    }
    return residual;
}

prioritization_result solve(const comparison_matrix& matrix, const solver_config& config) {
    config.validate(matrix.size());

    int probes = 0;
    const auto probe = [&](double lambda) {
        if (probes >= config.max_iterations) {
            throw error(errc::not_converged, "feasibility probe budget exhausted");
        }
        ++probes;
        return feasible_at(matrix, lambda, config);
    };

    const auto finish = [&](double lambda, std::vector<double> weights) {
        prioritization_result result;
        result.lambda = lambda;
        result.residual = constraint_residual(matrix, weights, lambda, config.epsilon_w);
        result.weights = std::move(weights);
        result.iterations = probes;
        return result;
    };

    // lambda = 1 pins every ratio to its modal value and lambda > 1 is
    // infeasible outright, so a feasible top end short-circuits the search.
    if (auto w = probe(1.0)) {
        return finish(1.0, std::move(*w));
    }

    double hi = 1.0;
    double lo = -2.0;
    auto w_lo = probe(lo);
    for (int expansion = 0; !w_lo; ++expansion) {
        if (expansion >= config.max_expansions) {
            throw error(errc::not_converged, "no feasible lower bracket found");
        }
        lo *= 2.0;
        w_lo = probe(lo);
    }

    while (hi - lo > config.lambda_tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (auto w = probe(mid)) {
            lo = mid;
            w_lo = std::move(w);
        } else {
            hi = mid;
        }
    }

    // Report the feasible end of the bracket, so the witness is valid at the
    // reported lambda and the reported lambda is within tolerance of optimal.
    return finish(lo, std::move(*w_lo));
}

namespace {

double min_membership(const comparison_matrix& matrix, const std::vector<double>& weights) {
    const std::size_t n = matrix.size();
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            worst = std::min(worst, matrix.judgment(i, j).membership(weights[i] / weights[j]));
        }
    }
    return worst;
}

}  // namespace

double oracle_lambda(const comparison_matrix& matrix, int grid_steps) {
    const std::size_t n = matrix.size();
    if (n > 4) {
        throw error(errc::too_large, "the grid oracle supports at most 4 items");
    }
    if (grid_steps < 100) {
        throw error(errc::invalid_argument, "grid_steps must be >= 100");
    }
    const double eps = solver_config{}.epsilon_w;
    const int g = grid_steps;

    double best = -std::numeric_limits<double>::infinity();
    std::vector<double> best_w(n, 1.0 / static_cast<double>(n));
    std::vector<double> w(n);

    const auto consider = [&](const std::vector<double>& candidate) {
        const double value = min_membership(matrix, candidate);
        if (value > best) {
            best = value;
            best_w = candidate;
        }
    };

    // Exhaustive barycentric grid, interior points only (the floor excludes
    // zero coordinates and membership tends to -inf toward the boundary).
    if (n == 2) {
        for (int a = 1; a < g; ++a) {
            w[0] = static_cast<double>(a) / g;
            w[1] = 1.0 - w[0];
            consider(w);
        }
    } else if (n == 3) {
        for (int a = 1; a < g - 1; ++a) {
            for (int b = 1; a + b < g; ++b) {
                w[0] = static_cast<double>(a) / g;
                w[1] = static_cast<double>(b) / g;
                w[2] = 1.0 - w[0] - w[1];
                consider(w);
            }
        }
    } else {
        for (int a = 1; a < g - 2; ++a) {
            for (int b = 1; a + b < g - 1; ++b) {
                for (int c = 1; a + b + c < g; ++c) {
                    w[0] = static_cast<double>(a) / g;
                    w[1] = static_cast<double>(b) / g;
                    w[2] = static_cast<double>(c) / g;
                    w[3] = 1.0 - w[0] - w[1] - w[2];
                    consider(w);
                }
            }
        }
    }

    // Pattern search around the incumbent: local lattices over the first
    // n-1 coordinates whose window grows while the maximum keeps landing on
    // the window edge (marching along a ridge of the max-min surface) and
    // shrinks once it lands inside. Recovers the precision the global
    // lattice cannot afford when ratios are steep, and every probe is still
    // a plain simplex point, so the result stays a lower bound.
    const int r = n == 2 ? std::min(g, 512) : (n == 3 ? 64 : 24);
    double half_width = 2.0 / g;
    for (int round = 0; round < 500 && half_width > 1e-11; ++round) {
        const std::vector<double> center = best_w;
        std::vector<int> k(n - 1, 0);
        for (;;) {
            double sum = 0.0;
            bool valid = true;
            for (std::size_t i = 0; i + 1 < n; ++i) {
                const double wi = center[i] - half_width + 2.0 * half_width * k[i] / r;
                if (wi < eps) {
                    valid = false;
                    break;
                }
                w[i] = wi;
                sum += wi;
            }
            if (valid && 1.0 - sum >= eps) {
                w[n - 1] = 1.0 - sum;
                consider(w);
            }
            std::size_t digit = 0;
            while (digit < k.size() && ++k[digit] > r) {
                k[digit] = 0;
                ++digit;
            }
            if (digit == k.size()) break;
        }
        double moved = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            moved = std::max(moved, std::fabs(best_w[i] - center[i]));
        }
        if (moved >= half_width * (1.0 - 2.0 / r)) {
            half_width = std::min(half_width * 2.0, 0.5);
        } else {
            half_width *= 0.25;
        }
    }

    return best;
}

}  // namespace fpp
