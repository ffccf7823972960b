#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace fpp::detail {

// A pure feasibility problem over nonnegative variables:
//   find v >= 0 with ineq_rows * v <= ineq_rhs and eq_rows * v == eq_rhs.
struct feasibility_problem {
    std::size_t num_vars = 0;
    std::vector<std::vector<double>> ineq_rows;
    std::vector<double> ineq_rhs;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
};

// Phase-1 simplex: minimizes total artificial slack with Bland's rule (no
// cycling). Returns a feasible point when the optimum is <= feas_tol,
// std::nullopt when the system is infeasible. Throws errc::numerical_failure
// on pivot breakdown.
std::optional<std::vector<double>> phase1_feasible_point(const feasibility_problem& problem,
                                                         double feas_tol = 1e-10);

}  // namespace fpp::detail
