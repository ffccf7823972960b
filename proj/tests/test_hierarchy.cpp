#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fpp/hierarchy.hpp"
#include "support.hpp"

using fpp::comparison_matrix;
using fpp::criterion_node;
using fpp::errc;
using fpp::error;
using fpp::global_ranking;
using fpp::global_weights;
using fpp::hierarchy_solution;
using fpp::renormalize;
using fpp::solve_hierarchy;

namespace {

void check_throws(errc expected, auto&& fn) {
    try {
        fn();
        FAIL("expected an error");
    } catch (const error& e) {
        CHECK(e.code() == expected);
    }
}

criterion_node leaf(std::string id) {
    return {id, id, {}};
}

comparison_matrix pair_matrix(std::vector<std::string> ids, double l, double m, double u) {
    return comparison_matrix(std::move(ids), {{0, 1, fpp::triangular_number(l, m, u)}});
}

// root with two groups of two leaves each.
criterion_node two_level_tree() {
    criterion_node root{"root", "root", {}};
    root.children.push_back({"G1", "Group one", {leaf("L11"), leaf("L12")}});
    root.children.push_back({"G2", "Group two", {leaf("L21"), leaf("L22")}});
    return root;
}

}  // namespace

TEST_CASE("solves one matrix per multi-child group") {
    const criterion_node root = two_level_tree();
    std::map<std::string, comparison_matrix> matrices;
    matrices.emplace("root", pair_matrix({"G1", "G2"}, 2, 3, 4));
    matrices.emplace("G1", pair_matrix({"L11", "L12"}, 1, 2, 3));
    matrices.emplace("G2", pair_matrix({"L21", "L22"}, 4, 5, 6));

    const hierarchy_solution solution = solve_hierarchy(root, matrices);
    CHECK(solution.local.size() == 6);
    CHECK(solution.group_lambda.size() == 3);
    CHECK(solution.local.at("G1") == doctest::Approx(0.75).epsilon(1e-6));
    CHECK(solution.local.at("G2") == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(solution.local.at("L11") == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
    CHECK(solution.local.at("L21") == doctest::Approx(5.0 / 6.0).epsilon(1e-6));
    for (const auto& [id, lambda] : solution.group_lambda) {
        CHECK(lambda == doctest::Approx(1.0).epsilon(1e-9));
    }

    SUBCASE("parallel mode gives identical numbers") {
        const hierarchy_solution parallel = solve_hierarchy(root, matrices, {}, true);
        CHECK(parallel.local == solution.local);
        CHECK(parallel.group_lambda == solution.group_lambda);
    }
}

TEST_CASE("a singleton group gets weight 1 and lambda 1") {
    criterion_node root{"root", "root", {}};
    root.children.push_back({"G", "G", {leaf("X")}});
    root.children.push_back(leaf("D"));
    std::map<std::string, comparison_matrix> matrices;
    matrices.emplace("root", pair_matrix({"G", "D"}, 3, 4, 5));

    const hierarchy_solution solution = solve_hierarchy(root, matrices);
    CHECK(solution.local.at("X") == 1.0);
    CHECK(solution.group_lambda.at("G") == 1.0);
    CHECK(solution.local.at("G") == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("hierarchy errors") {
    const criterion_node root = two_level_tree();
    std::map<std::string, comparison_matrix> matrices;
    matrices.emplace("root", pair_matrix({"G1", "G2"}, 2, 3, 4));
    matrices.emplace("G1", pair_matrix({"L11", "L12"}, 1, 2, 3));

    SUBCASE("missing matrix") {
        check_throws(errc::missing_matrix, [&] { solve_hierarchy(root, matrices); });
    }
    SUBCASE("matrix over wrong ids") {
        matrices.emplace("G2", pair_matrix({"L21", "WRONG"}, 4, 5, 6));
        check_throws(errc::child_mismatch, [&] { solve_hierarchy(root, matrices); });
    }
    SUBCASE("matrix in the wrong order") {
        matrices.emplace("G2", pair_matrix({"L22", "L21"}, 4, 5, 6));
        check_throws(errc::child_mismatch, [&] { solve_hierarchy(root, matrices); });
    }
    SUBCASE("duplicate ids anywhere in the tree") {
        criterion_node bad = root;
        bad.children[1].children[1].id = "L11";
        matrices.emplace("G2", pair_matrix({"L21", "L22"}, 4, 5, 6));
        check_throws(errc::invalid_argument, [&] { solve_hierarchy(bad, matrices); });
    }
}

TEST_CASE("global weights are path products") {
    const criterion_node root = two_level_tree();
    const std::map<std::string, double> local = {
        {"G1", 0.112142}, {"G2", 0.253274}, {"L11", 0.458452},
        {"L12", 0.554126}, {"L21", 0.429987}, {"L22", 0.572145},
    };
    const auto global = global_weights(local, root, renormalize::off);
    CHECK(global.at("L11") == doctest::Approx(0.051412).epsilon(1e-4));
    CHECK(global.at("L11") == doctest::Approx(0.112142 * 0.458452).epsilon(1e-12));
    CHECK(global.at("L22") == doctest::Approx(0.144909).epsilon(1e-4));
    CHECK(global.at("L22") == doctest::Approx(0.253274 * 0.572145).epsilon(1e-12));

    SUBCASE("missing weights are reported") {
        std::map<std::string, double> incomplete = local;
        incomplete.erase("L21");
        check_throws(errc::missing_weight,
                     [&] { global_weights(incomplete, root, renormalize::off); });
    }
}

TEST_CASE("a single-level tree passes locals through") {
    criterion_node root{"root", "root", {leaf("A"), leaf("B"), leaf("C")}};
    const std::map<std::string, double> local = {{"A", 0.5}, {"B", 0.3}, {"C", 0.2}};
    const auto global = global_weights(local, root, renormalize::off);
    CHECK(global.at("A") == 0.5);
    CHECK(global.at("B") == 0.3);
    CHECK(global.at("C") == 0.2);
}

TEST_CASE("renormalization rescales each sibling group") {
    const criterion_node root = two_level_tree();
    // Group sums deliberately off 1 (like published tables often are).
    const std::map<std::string, double> local = {
        {"G1", 0.4}, {"G2", 0.8},  // sums to 1.2
        {"L11", 0.5}, {"L12", 0.75},
        {"L21", 0.25}, {"L22", 0.25},
    };
    const auto global = global_weights(local, root, renormalize::on);
    double sum = 0.0;
    for (const auto& [id, g] : global) sum += g;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(global.at("L11") == doctest::Approx((0.4 / 1.2) * (0.5 / 1.25)).epsilon(1e-12));

    SUBCASE("equal locals split the parent weight evenly") {
        CHECK(global.at("L21") == doctest::Approx(global.at("L22")).epsilon(1e-12));
        CHECK(global.at("L21") == doctest::Approx((0.8 / 1.2) / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("ranking is descending with declaration-order ties") {
    criterion_node root{"root", "root", {leaf("A"), leaf("B"), leaf("C")}};

    SUBCASE("strict ordering") {
        const global_ranking ranking =
            fpp::rank({{"A", 0.2}, {"B", 0.5}, {"C", 0.3}}, root);
        REQUIRE(ranking.entries.size() == 3);
        CHECK(ranking.entries[0].leaf_id == "A");
        CHECK(ranking.entries[0].rank == 3);
        CHECK(ranking.entries[1].rank == 1);
        CHECK(ranking.entries[2].rank == 2);
    }
    SUBCASE("ties go to the earlier-declared leaf") {
        const global_ranking ranking =
            fpp::rank({{"A", 0.4}, {"B", 0.4}, {"C", 0.2}}, root);
        CHECK(ranking.entries[0].rank == 1);  // A declared first
        CHECK(ranking.entries[1].rank == 2);
        CHECK(ranking.entries[2].rank == 3);
    }
    SUBCASE("a single leaf ranks first") {
        const criterion_node lone = leaf("Z");
        const global_ranking ranking = fpp::rank({{"Z", 1.0}}, lone);
        REQUIRE(ranking.entries.size() == 1);
        CHECK(ranking.entries[0].rank == 1);
    }
}

TEST_CASE("raising a leaf's local weight never lowers its rank") {
    const criterion_node root = two_level_tree();
    std::map<std::string, double> local = {
        {"G1", 0.6}, {"G2", 0.4},
        {"L11", 0.3}, {"L12", 0.7},
        {"L21", 0.55}, {"L22", 0.45},
    };
    const auto rank_of = [&](const std::map<std::string, double>& l, const std::string& id) {
        const auto ranking = fpp::rank(global_weights(l, root, renormalize::off), root);
        for (const auto& entry : ranking.entries) {
            if (entry.leaf_id == id) return entry.rank;
        }
        FAIL("missing leaf");
        return 0;
    };
    const int before = rank_of(local, "L11");
    for (double bump : {0.05, 0.2, 0.5, 1.0}) {
        auto bumped = local;
        bumped["L11"] += bump;
        CHECK(rank_of(bumped, "L11") <= before);
    }
}
