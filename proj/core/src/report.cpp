#include "fpp/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace fpp {

namespace {

using json = nlohmann::ordered_json;

// Shortest representation that parses back to the same double.
std::string round_trip(double value) {
    char buffer[32];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

std::string fixed6(double value) {
    if (std::isnan(value)) {
        return "n/a";
    }
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

struct group_context {
    const criterion_node* parent;
    comparison_matrix matrix;
};

std::vector<const criterion_node*> parents_in_order(const criterion_node& root) {
    std::vector<const criterion_node*> out;
    const auto walk = [&](const auto& self, const criterion_node& node) -> void {
        if (!node.children.empty()) {
            out.push_back(&node);
        }
        for (const auto& child : node.children) {
            self(self, child);
        }
    };
    walk(walk, root);
    return out;
}

std::vector<group_table::row> group_rows(const criterion_node& parent,
                                         const std::map<std::string, double>& local) {
    std::vector<group_table::row> rows;
    rows.reserve(parent.children.size());
    for (const auto& child : parent.children) {
        group_table::row row;
        row.id = child.id;
        row.label = child.label;
        if (const auto it = local.find(child.id); it != local.end()) {
            row.local_weight = it->second;
        }
        rows.push_back(std::move(row));
    }
    std::vector<std::size_t> order(rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return rows[a].local_weight > rows[b].local_weight;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        rows[order[pos]].rank_in_group = static_cast<int>(pos) + 1;
    }
    return rows;
}

comparison_matrix matrix_from_records(const criterion_node& parent,
                                      const judgment_records& records,
                                      const linguistic_scale& scale, const spread_policy& policy,
                                      std::vector<std::string>* clip_warnings) {
    std::vector<std::string> ids;
    ids.reserve(parent.children.size());
    for (const auto& child : parent.children) {
        ids.push_back(child.id);
    }
    const auto index_of = [&](const std::string& id) -> std::size_t {
        const auto it = std::find(ids.begin(), ids.end(), id);
        if (it == ids.end()) {
            throw error(errc::reference_error,
                        "\"" + id + "\" is not a child of group \"" + parent.id + "\"");
        }
        return static_cast<std::size_t>(it - ids.begin());
    };

    std::optional<judgment_record::kind> kind;
    for (const auto& record : records) {
        if (kind && *kind != record.payload) {
            throw error(errc::mixed_judgment_kinds,
                        "matrix for group \"" + parent.id + "\" mixes judgment kinds");
        }
        kind = record.payload;
    }

    if (kind == judgment_record::kind::crisp) {
        std::vector<crisp_entry> entries;
        entries.reserve(records.size());
        for (const auto& record : records) {
            if (clip_warnings && record.crisp > 0.0 && clips_at_floor(record.crisp, policy)) {
                clip_warnings->push_back("group " + parent.id + ": crisp value " +
                                         round_trip(record.crisp) + " at (" + record.i + ", " +
                                         record.j + ") clipped to floor " +
                                         round_trip(policy.floor));
            }
            entries.push_back({index_of(record.i), index_of(record.j), record.crisp});
        }
        return import_crisp(std::move(ids), entries, policy);
    }

    std::vector<judgment_entry> entries;
    entries.reserve(records.size());
    for (const auto& record : records) {
        triangular_number band = [&] {
            if (record.payload == judgment_record::kind::linguistic) {
                const auto found = scale.find(record.label);
                if (!found) {
                    throw error(errc::reference_error,
                                "label \"" + record.label + "\" is not on the scale");
                }
                return *found;
            }
            return triangular_number(record.l, record.m, record.u);
        }();
        entries.push_back({index_of(record.i), index_of(record.j), band});
    }
    return comparison_matrix(std::move(ids), entries);
}

void append_group_sum_warnings(const criterion_node& root,
                               const std::map<std::string, double>& local,
                               std::vector<std::string>& warnings) {
    for (const criterion_node* parent : parents_in_order(root)) {
        double sum = 0.0;
        for (const auto& child : parent->children) {
            if (const auto it = local.find(child.id); it != local.end()) {
                sum += it->second;
            }
        }
        if (std::fabs(sum - 1.0) > 1e-6) {
            warnings.push_back("group " + parent->id + ": local weights sum to " +
                               fixed6(sum) + ", not 1 (renormalize to rescale)");
        }
    }
}

}  // namespace

std::optional<render_format> parse_render_format(std::string_view name) {
    if (name == "table") return render_format::table;
    if (name == "machine") return render_format::machine;
    if (name == "csv") return render_format::csv;
    return std::nullopt;
}

report run_solve(const study_file& study, const run_options& options) {
    if (!study.experts.empty() && !study.matrices.empty()) {
        throw error(errc::invalid_argument,
                    "give either top-level matrices or per-expert ones, not both");
    }

    const linguistic_scale& scale = study.scale ? *study.scale : linguistic_scale::default_scale();
    spread_policy policy = study.policy ? *study.policy : spread_policy{};
    if (options.spread) policy.spread = *options.spread;
    if (options.floor) policy.floor = *options.floor;
    policy.validate();

    const criterion_node root = study_root(study);
    check_unique_ids(root);

    report rep;
    rep.title = study.title;
    rep.renormalized = options.mode == renormalize::on;

    // Materialize one fuzzy matrix per multi-child group, aggregating
    // experts with the component-wise geometric mean when present.
    std::map<std::string, comparison_matrix> matrices;
    for (const criterion_node* parent : parents_in_order(root)) {
        if (parent->children.size() < 2) continue;
        if (study.experts.empty()) {
            const auto it = study.matrices.find(parent->id);
            if (it == study.matrices.end()) {
                throw error(errc::missing_matrix, "group \"" + parent->id + "\" has no matrix");
            }
            matrices.emplace(parent->id, matrix_from_records(*parent, it->second, scale, policy,
                                                             &rep.warnings));
        } else {
            std::vector<comparison_matrix> opinions;
            opinions.reserve(study.experts.size());
            for (const auto& expert : study.experts) {
                const auto it = expert.matrices.find(parent->id);
                if (it == expert.matrices.end()) {
                    throw error(errc::missing_matrix, "expert \"" + expert.name +
                                                          "\" has no matrix for group \"" +
                                                          parent->id + "\"");
                }
                opinions.push_back(
                    matrix_from_records(*parent, it->second, scale, policy, &rep.warnings));
            }
            matrices.emplace(parent->id, aggregate_experts(opinions));
        }
    }

    const hierarchy_solution solution =
        solve_hierarchy(root, matrices, options.config, options.parallel);
    const auto global = global_weights(solution.local, root, options.mode);
    rep.global = rank(global, root, solution.local, solution.group_lambda);

    for (const criterion_node* parent : parents_in_order(root)) {
        group_table table;
        table.group_id = parent->id;
        table.group_label = parent->label;
        table.lambda = solution.group_lambda.at(parent->id);
        table.singleton = parent->children.size() < 2;
        const auto& detail = solution.group_detail.at(parent->id);
        if (!table.singleton) {
            table.iterations = detail.iterations;
            table.residual = detail.residual;
        }
        table.rows = group_rows(*parent, solution.local);
        if (table.singleton) {
            rep.warnings.push_back("group " + parent->id +
                                   ": single child, weight 1 and lambda 1 by definition");
        }
        if (table.lambda < 0.0) {
            rep.warnings.push_back("group " + parent->id + ": lambda = " + fixed6(table.lambda) +
                                   " < 0, the fuzzy judgments are strongly inconsistent");
        }
        rep.groups.push_back(std::move(table));
    }

    if (options.oracle_check) {
        for (const criterion_node* parent : parents_in_order(root)) {
            const std::size_t n = parent->children.size();
            if (n < 2 || n > 3) continue;
            oracle_check check;
            check.group_id = parent->id;
            check.lambda = solution.group_lambda.at(parent->id);
            check.oracle = oracle_lambda(matrices.at(parent->id), options.oracle_grid_steps);
            check.delta = check.lambda - check.oracle;
            if (std::fabs(check.delta) > 5e-3) {
                rep.warnings.push_back("group " + parent->id +
                                       ": solver/oracle disagreement, delta = " +
                                       round_trip(check.delta));
            }
            rep.oracle_checks.push_back(check);
        }
    }

    return rep;
}

report run_replay(const local_weights_file& file, renormalize mode) {
    const criterion_node root = replay_root(file);
    check_unique_ids(root);

    report rep;
    rep.title = file.title;
    rep.renormalized = mode == renormalize::on;

    const auto global = global_weights(file.local, root, mode);

    std::map<std::string, double> lambda_by_group;
    for (const criterion_node* parent : parents_in_order(root)) {
        const auto it = file.group_lambda.find(parent->id);
        lambda_by_group[parent->id] =
            it != file.group_lambda.end() ? it->second : std::numeric_limits<double>::quiet_NaN();
    }
    rep.global = rank(global, root, file.local, lambda_by_group);

    for (const criterion_node* parent : parents_in_order(root)) {
        group_table table;
        table.group_id = parent->id;
        table.group_label = parent->label;
        table.lambda = lambda_by_group.at(parent->id);
        table.singleton = parent->children.size() < 2;
        table.rows = group_rows(*parent, file.local);
        if (table.singleton) {
            rep.warnings.push_back("group " + parent->id +
                                   ": single child, weight 1 and lambda 1 by definition");
        }
        if (table.lambda < 0.0) {
            rep.warnings.push_back("group " + parent->id + ": lambda = " + fixed6(table.lambda) +
                                   " < 0, the fuzzy judgments are strongly inconsistent");
        }
        rep.groups.push_back(std::move(table));
    }
    append_group_sum_warnings(root, file.local, rep.warnings);

    return rep;
}

namespace {

std::string render_table(const report& rep) {
    std::ostringstream out;
    if (!rep.title.empty()) {
        out << rep.title << "\n\n";
    }
    for (const auto& group : rep.groups) {
        out << "Group " << group.group_id;
        if (group.group_label != group.group_id) {
            out << " (" << group.group_label << ")";
        }
        out << "  lambda = " << fixed6(group.lambda);
        if (group.singleton) {
            out << "  [singleton]";
        }
        out << "\n";
        std::size_t id_width = 4;
        std::size_t label_width = 5;
        for (const auto& row : group.rows) {
            id_width = std::max(id_width, row.id.size());
            label_width = std::max(label_width, row.label.size());
        }
        for (const auto& row : group.rows) {
            out << "  " << row.rank_in_group << "  " << row.id
                << std::string(id_width - row.id.size() + 2, ' ') << row.label
                << std::string(label_width - row.label.size() + 2, ' ')
                << fixed6(row.local_weight) << "\n";
        }
        out << "\n";
    }

    // The composed column keeps its customary name even though, without the
    // renormalize flag, the values are plain products of local weights.
    out << "Global ranking";
    out << (rep.renormalized
                ? "  (normalized weights: sibling groups rescaled to sum 1)"
                : "  (normalized weights = products of local weights; no renormalization applied)");
    out << "\n";
    std::size_t id_width = 4;
    std::size_t group_width = 5;
    for (const auto& entry : rep.global.entries) {
        id_width = std::max(id_width, entry.leaf_id.size());
        group_width = std::max(group_width, entry.group_id.size());
    }
    std::vector<const global_ranking::entry*> by_rank;
    by_rank.reserve(rep.global.entries.size());
    for (const auto& entry : rep.global.entries) {
        by_rank.push_back(&entry);
    }
    std::sort(by_rank.begin(), by_rank.end(),
              [](const auto* a, const auto* b) { return a->rank < b->rank; });
    for (const auto* entry : by_rank) {
        out << "  " << std::string(entry->rank < 10 ? 1 : 0, ' ') << entry->rank << "  "
            << entry->leaf_id << std::string(id_width - entry->leaf_id.size() + 2, ' ')
            << entry->group_id << std::string(group_width - entry->group_id.size() + 2, ' ')
            << "local " << fixed6(entry->local_weight) << "  global "
            << fixed6(entry->global_weight) << "\n";
    }

    if (!rep.oracle_checks.empty()) {
        out << "\nOracle cross-check (grid bound)\n";
        for (const auto& check : rep.oracle_checks) {
            out << "  " << check.group_id << "  lambda " << fixed6(check.lambda) << "  oracle "
                << fixed6(check.oracle) << "  delta " << round_trip(check.delta) << "\n";
        }
    }

    if (!rep.warnings.empty()) {
        out << "\nWarnings:\n";
        for (const auto& warning : rep.warnings) {
            out << "  - " << warning << "\n";
        }
    }
    return out.str();
}

json value_or_null(double value) {
    if (std::isnan(value)) {
        return nullptr;
    }
    return value;
}

std::string render_machine(const report& rep) {
    json doc;
    doc["title"] = rep.title;
    doc["renormalized"] = rep.renormalized;
    json groups = json::array();
    for (const auto& group : rep.groups) {
        json g;
        g["id"] = group.group_id;
        g["label"] = group.group_label;
        g["lambda"] = value_or_null(group.lambda);
        if (group.iterations) {
            g["iterations"] = *group.iterations;
        }
        if (group.residual) {
            g["residual"] = *group.residual;
        }
        g["singleton"] = group.singleton;
        json rows = json::array();
        for (const auto& row : group.rows) {
            rows.push_back({{"id", row.id},
                            {"label", row.label},
                            {"local_weight", row.local_weight},
                            {"rank_in_group", row.rank_in_group}});
        }
        g["rows"] = std::move(rows);
        groups.push_back(std::move(g));
    }
    doc["groups"] = std::move(groups);

    json global = json::array();
    for (const auto& entry : rep.global.entries) {
        global.push_back({{"leaf", entry.leaf_id},
                          {"group", entry.group_id},
                          {"local_weight", entry.local_weight},
                          {"global_weight", entry.global_weight},
                          {"rank", entry.rank}});
    }
    doc["global"] = std::move(global);

    if (!rep.oracle_checks.empty()) {
        json checks = json::array();
        for (const auto& check : rep.oracle_checks) {
            checks.push_back({{"group", check.group_id},
                              {"lambda", check.lambda},
                              {"oracle", check.oracle},
                              {"delta", check.delta}});
        }
        doc["oracle_checks"] = std::move(checks);
    }
    doc["warnings"] = rep.warnings;
    return doc.dump(2) + "\n";
}

std::string render_csv(const report& rep) {
    std::string out = "leaf_id,group_id,local_weight,group_lambda,global_weight,rank\n";
    for (const auto& entry : rep.global.entries) {
        const auto lambda_it = rep.global.group_lambda.find(entry.group_id);
        const double lambda = lambda_it != rep.global.group_lambda.end()
                                  ? lambda_it->second
                                  : std::numeric_limits<double>::quiet_NaN();
        out += entry.leaf_id;
        out += ',';
        out += entry.group_id;
        out += ',';
        out += round_trip(entry.local_weight);
        out += ',';
        out += round_trip(lambda);
        out += ',';
        out += round_trip(entry.global_weight);
        out += ',';
        out += std::to_string(entry.rank);
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render(const report& rep, render_format format) {
    switch (format) {
        case render_format::table: return render_table(rep);
        case render_format::machine: return render_machine(rep);
        case render_format::csv: return render_csv(rep);
    }
    throw error(errc::invalid_argument, "unknown render format");
}

}  // namespace fpp
