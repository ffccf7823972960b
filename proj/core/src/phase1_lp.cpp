#include "phase1_lp.hpp"

#include <cmath>
#include <limits>

#include "fpp/error.hpp"

namespace fpp::detail {

namespace {
constexpr double kPivotTol = 1e-11;
constexpr double kReducedCostTol = 1e-12;
}  // namespace

std::optional<std::vector<double>> phase1_feasible_point(const feasibility_problem& problem,
                                                         double feas_tol) {
    const std::size_t nv = problem.num_vars;
    const std::size_t n_ineq = problem.ineq_rows.size();
    const std::size_t n_eq = problem.eq_rows.size();
    const std::size_t m = n_ineq + n_eq;

    // Column layout: structural | one slack per inequality | artificials | rhs.
    // Rows are normalized to nonnegative rhs; every equality row and every
    // negated inequality row gets an artificial basic variable.
    std::size_t n_art = 0;
    for (std::size_t i = 0; i < n_ineq; ++i) {
        if (problem.ineq_rhs[i] < 0.0) ++n_art;
    }
    n_art += n_eq;

    const std::size_t art_begin = nv + n_ineq;
    const std::size_t cols = nv + n_ineq + n_art + 1;
    const std::size_t rhs_col = cols - 1;

    std::vector<std::vector<double>> t(m + 1, std::vector<double>(cols, 0.0));
    std::vector<std::size_t> basis(m);

    std::size_t next_art = art_begin;
    for (std::size_t i = 0; i < n_ineq; ++i) {
        const double sign = problem.ineq_rhs[i] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < nv; ++j) {
            t[i][j] = sign * problem.ineq_rows[i][j];
        }
        t[i][nv + i] = sign;
        t[i][rhs_col] = sign * problem.ineq_rhs[i];
        if (sign < 0.0) {
            t[i][next_art] = 1.0;
            basis[i] = next_art++;
        } else {
            basis[i] = nv + i;
        }
    }
    for (std::size_t e = 0; e < n_eq; ++e) {
        const std::size_t i = n_ineq + e;
        const double sign = problem.eq_rhs[e] < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < nv; ++j) {
            t[i][j] = sign * problem.eq_rows[e][j];
        }
        t[i][rhs_col] = sign * problem.eq_rhs[e];
        t[i][next_art] = 1.0;
        basis[i] = next_art++;
    }

    // Reduced-cost row for min(sum of artificials), priced out against the
    // initial artificial basis: row m = -(sum of artificial-basic rows), with
    // zeros in the artificial columns themselves.
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < art_begin) continue;
        for (std::size_t j = 0; j < cols; ++j) {
            t[m][j] -= t[i][j];
        }
    }
    for (std::size_t a = art_begin; a < art_begin + n_art; ++a) {
        t[m][a] = 0.0;
    }

    const std::size_t max_pivots = 200 + 60 * (m + cols);
    for (std::size_t pivots = 0;; ++pivots) {
        if (pivots > max_pivots) {
            throw error(errc::numerical_failure, "phase-1 simplex exceeded its pivot budget");
        }

        // Bland: entering column = smallest index with a negative reduced
        // cost. Artificial columns never re-enter.
        std::size_t enter = rhs_col;
        for (std::size_t j = 0; j < art_begin; ++j) {
            if (t[m][j] < -kReducedCostTol) {
                enter = j;
                break;
            }
        }
        if (enter == rhs_col) break;  // optimal

        // Bland: leaving row = min ratio, ties by smallest basic index.
        std::size_t leave = m;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= kPivotTol) continue;
            const double ratio = t[i][rhs_col] / t[i][enter];
            if (ratio < best_ratio - 1e-15 ||
                (std::fabs(ratio - best_ratio) <= 1e-15 && (leave == m || basis[i] < basis[leave]))) {
                best_ratio = ratio;
                leave = i;
            }
        }
        if (leave == m) {
            // Phase-1 objective is bounded below by zero; an unbounded ray
            // here means the arithmetic has broken down.
            throw error(errc::numerical_failure, "phase-1 simplex detected an unbounded direction");
        }

        const double pivot = t[leave][enter];
        for (std::size_t j = 0; j < cols; ++j) {
            t[leave][j] /= pivot;
        }
        t[leave][enter] = 1.0;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double factor = t[i][enter];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < cols; ++j) {
                t[i][j] -= factor * t[leave][j];
            }
            t[i][enter] = 0.0;
        }
        basis[leave] = enter;
    }

    const double infeasibility = -t[m][rhs_col];
    if (infeasibility > feas_tol) {
        return std::nullopt;
    }

    std::vector<double> v(nv, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < nv) {
            v[basis[i]] = std::max(t[i][rhs_col], 0.0);
        }
    }
    return v;
}

}  // namespace fpp::detail
