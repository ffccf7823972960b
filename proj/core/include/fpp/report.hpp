#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fpp/hierarchy.hpp"
#include "fpp/study.hpp"

namespace fpp {

/// Per-group slice of a solved study: local weights of the group's children
/// with their within-group ranks, plus the group's consistency index.
struct group_table {
    struct row {
        std::string id;
        std::string label;
        double local_weight = 0.0;
        int rank_in_group = 0;
    };

    std::string group_id;
    std::string group_label;
    double lambda = 0.0;
    std::optional<int> iterations;     // absent when replayed from a file
    std::optional<double> residual;    // absent when replayed from a file
    bool singleton = false;
    std::vector<row> rows;
};

/// Cross-check of a solved index against the brute-force grid bound.
struct oracle_check {
    std::string group_id;
    double lambda = 0.0;
    double oracle = 0.0;
    double delta = 0.0;  // lambda - oracle
};

/// Everything a run produces: group tables in tree order, the global leaf
/// ranking, and any warnings (negative index, clipped imports, singleton
/// groups, oracle mismatches, off-unit group sums).
struct report {
    std::string title;
    std::vector<group_table> groups;
    global_ranking global;
    std::vector<std::string> warnings;
    bool renormalized = false;
    std::vector<oracle_check> oracle_checks;
};

struct run_options {
    solver_config config;
    renormalize mode = renormalize::off;
    bool parallel = false;
    bool oracle_check = false;
    int oracle_grid_steps = 500;
    std::optional<double> spread;  // overrides the study's import policy
    std::optional<double> floor;
};

/// Aggregates experts if present, materializes every group's fuzzy matrix,
/// solves the hierarchy, and composes the global ranking. Deterministic for
/// fixed inputs and options.
report run_solve(const study_file& study, const run_options& options = {});

/// Ranks from local weights given directly in a reference file, bypassing
/// the solver.
report run_replay(const local_weights_file& file, renormalize mode = renormalize::off);

enum class render_format { table, machine, csv };

std::optional<render_format> parse_render_format(std::string_view name);

/// `table` is aligned human-readable text; `machine` is a JSON document with
/// every number at full round-trip precision; `csv` is one row per leaf
/// (leaf_id, group_id, local_weight, group_lambda, global_weight, rank) with
/// a header row, dot decimals, and a trailing newline.
std::string render(const report& rep, render_format format);

}  // namespace fpp
