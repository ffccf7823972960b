#pragma once

#include <map>
#include <string>
#include <vector>

#include "fpp/judgments.hpp"
#include "fpp/solver.hpp"

namespace fpp {

/// A node in the criteria tree. Ids must be unique tree-wide; leaves carry
/// the final weights, inner nodes group their children for comparison.
struct criterion_node {
    std::string id;
    std::string label;
    std::vector<criterion_node> children;

    bool is_leaf() const noexcept { return children.empty(); }

    friend bool operator==(const criterion_node&, const criterion_node&) = default;
};

/// Per-group output of solving every parent's comparison matrix.
struct hierarchy_solution {
    std::map<std::string, double> local;                       // node id -> weight within its group
    std::map<std::string, double> group_lambda;                // parent id -> consistency index
    std::map<std::string, prioritization_result> group_detail; // parent id -> full solver output
};

/// Global ranking over the leaves of a hierarchy.
struct global_ranking {
    struct entry {
        std::string leaf_id;
        std::string group_id;      // parent of the leaf
        double local_weight = 0.0;
        double global_weight = 0.0;
        int rank = 0;
    };
    std::vector<entry> entries;                  // in tree declaration order
    std::map<std::string, double> group_lambda;  // parent id -> consistency index
};

enum class renormalize { off, on };

/// Checks id uniqueness and throws errc::invalid_argument on duplicates.
void check_unique_ids(const criterion_node& root);

/// Solves the comparison matrix of every parent with >= 2 children; a
/// singleton child gets local weight 1 and its group the index 1 by
/// definition. Matrices are keyed by parent id and must list exactly the
/// parent's children, in declaration order.
hierarchy_solution solve_hierarchy(const criterion_node& root,
                                   const std::map<std::string, comparison_matrix>& matrices,
                                   const solver_config& config = {}, bool parallel = false);

/// Composes local weights into per-leaf global weights as the product along
/// each root-to-leaf path. With renormalize::on every sibling group is first
/// rescaled to sum to 1; renormalize::off multiplies the raw values.
std::map<std::string, double> global_weights(const std::map<std::string, double>& local,
                                             const criterion_node& root, renormalize mode);

/// Ranks leaves by descending global weight, ties broken by tree declaration
/// order. Local weights and group indices are carried through when provided.
global_ranking rank(const std::map<std::string, double>& global, const criterion_node& root,
                    const std::map<std::string, double>& local = {},
                    const std::map<std::string, double>& group_lambda = {});

}  // namespace fpp
