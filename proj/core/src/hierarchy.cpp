#include "fpp/hierarchy.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace fpp {

namespace {

void collect_ids(const criterion_node& node, std::set<std::string>& seen) {
    if (!seen.insert(node.id).second) {
        throw error(errc::invalid_argument, "duplicate criterion id: " + node.id);
    }
    for (const auto& child : node.children) {
        collect_ids(child, seen);
    }
}

void collect_parents(const criterion_node& node, std::vector<const criterion_node*>& parents) {
    if (!node.children.empty()) {
        parents.push_back(&node);
    }
    for (const auto& child : node.children) {
        collect_parents(child, parents);
    }
}

void collect_leaves(const criterion_node& node, const std::string& parent_id,
                    std::vector<std::pair<const criterion_node*, std::string>>& leaves) {
    if (node.is_leaf()) {
        leaves.emplace_back(&node, parent_id);
        return;
    }
    for (const auto& child : node.children) {
        collect_leaves(child, node.id, leaves);
    }
}

}  // namespace

void check_unique_ids(const criterion_node& root) {
    std::set<std::string> seen;
    collect_ids(root, seen);
}

hierarchy_solution solve_hierarchy(const criterion_node& root,
                                   const std::map<std::string, comparison_matrix>& matrices,
                                   const solver_config& config, bool parallel) {
    check_unique_ids(root);

    std::vector<const criterion_node*> parents;
    collect_parents(root, parents);

    // Validate every group against its matrix up front, so a late group
    // cannot fail after earlier solves already ran.
    for (const criterion_node* parent : parents) {
        if (parent->children.size() < 2) continue;
        const auto it = matrices.find(parent->id);
        if (it == matrices.end()) {
            throw error(errc::missing_matrix, "no comparison matrix for group " + parent->id);
        }
        const auto& ids = it->second.item_ids();
        if (ids.size() != parent->children.size()) {
            throw error(errc::child_mismatch,
                        "matrix for group " + parent->id + " covers " + std::to_string(ids.size()) +
                            " items, group has " + std::to_string(parent->children.size()));
        }
        for (std::size_t k = 0; k < ids.size(); ++k) {
            if (ids[k] != parent->children[k].id) {
                throw error(errc::child_mismatch, "matrix for group " + parent->id +
                                                      " lists item " + ids[k] + " where child " +
                                                      parent->children[k].id + " was expected");
            }
        }
    }

    hierarchy_solution solution;
    std::vector<prioritization_result> results(parents.size());

    const auto solve_group = [&](std::size_t p) -> prioritization_result {
        const criterion_node* parent = parents[p];
        if (parent->children.size() < 2) {
            // Degenerate group: the only child takes the full weight and the
            // index is 1 by definition.
            prioritization_result r;
            r.weights = {1.0};
            r.lambda = 1.0;
            return r;
        }
        return solve(matrices.at(parent->id), config);
    };

    if (parallel && parents.size() > 1) {
        std::vector<std::future<prioritization_result>> futures;
        futures.reserve(parents.size());
        for (std::size_t p = 0; p < parents.size(); ++p) {
            futures.push_back(std::async(std::launch::async, solve_group, p));
        }
        for (std::size_t p = 0; p < parents.size(); ++p) {
            results[p] = futures[p].get();
        }
    } else {
        for (std::size_t p = 0; p < parents.size(); ++p) {
            results[p] = solve_group(p);
        }
    }

    for (std::size_t p = 0; p < parents.size(); ++p) {
        const criterion_node* parent = parents[p];
        for (std::size_t k = 0; k < parent->children.size(); ++k) {
            solution.local[parent->children[k].id] = results[p].weights[k];
        }
        solution.group_lambda[parent->id] = results[p].lambda;
        solution.group_detail[parent->id] = std::move(results[p]);
    }
    return solution;
}

namespace {

void compose(const criterion_node& node, double prefix,
             const std::map<std::string, double>& local, renormalize mode,
             std::map<std::string, double>& out) {
    double group_sum = 0.0;
    if (mode == renormalize::on) {
        for (const auto& child : node.children) {
            const auto it = local.find(child.id);
            if (it == local.end()) {
                throw error(errc::missing_weight, "no local weight for node " + child.id);
            }
            group_sum += it->second;
        }
        if (!(group_sum > 0.0)) {
            throw error(errc::invalid_argument, "local weights of group " + node.id +
                                                    " sum to zero; cannot renormalize");
        }
    }
    for (const auto& child : node.children) {
        const auto it = local.find(child.id);
        if (it == local.end()) {
            throw error(errc::missing_weight, "no local weight for node " + child.id);
        }
        const double share = mode == renormalize::on ? it->second / group_sum : it->second;
        const double value = prefix * share;
        if (child.is_leaf()) {
            out[child.id] = value;
        } else {
            compose(child, value, local, mode, out);
        }
    }
}

}  // namespace

std::map<std::string, double> global_weights(const std::map<std::string, double>& local,
                                             const criterion_node& root, renormalize mode) {
    std::map<std::string, double> out;
    if (root.is_leaf()) {
        out[root.id] = 1.0;
        return out;
    }
    compose(root, 1.0, local, mode, out);
    return out;
}

global_ranking rank(const std::map<std::string, double>& global, const criterion_node& root,
                    const std::map<std::string, double>& local,
                    const std::map<std::string, double>& group_lambda) {
    std::vector<std::pair<const criterion_node*, std::string>> leaves;
    if (root.is_leaf()) {
        leaves.emplace_back(&root, root.id);
    } else {
        collect_leaves(root, root.id, leaves);
    }

    global_ranking ranking;
    ranking.group_lambda = group_lambda;
    ranking.entries.reserve(leaves.size());
    for (const auto& [leaf, parent_id] : leaves) {
        global_ranking::entry e;
        e.leaf_id = leaf->id;
        e.group_id = parent_id;
        const auto g = global.find(leaf->id);
        if (g == global.end()) {
            throw error(errc::missing_weight, "no global weight for leaf " + leaf->id);
        }
        e.global_weight = g->second;
        if (const auto l = local.find(leaf->id); l != local.end()) {
            e.local_weight = l->second;
        }
        ranking.entries.push_back(std::move(e));
    }

    // Ranks: descending weight, ties to the earlier-declared leaf. Entries
    // themselves stay in declaration order.
    std::vector<std::size_t> order(ranking.entries.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return ranking.entries[a].global_weight > ranking.entries[b].global_weight;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        ranking.entries[order[pos]].rank = static_cast<int>(pos) + 1;
    }
    return ranking;
}

}  // namespace fpp
