#include "fpp/study.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include <json.hpp>

namespace fpp {

namespace {

using json = nlohmann::ordered_json;

struct issue_list {
    std::vector<study_issue> items;

    void add(errc code, std::string path, std::string message) {
        items.push_back({code, std::move(path), std::move(message)});
    }

    void raise_if_any() const {
        if (!items.empty()) {
            throw parse_error(items);
        }
    }
};

std::string first_line(const std::string& text) {
    const auto pos = text.find('\n');
    return pos == std::string::npos ? text : text.substr(0, pos);
}

json parse_document(std::string_view text, issue_list& issues) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        // Re-parse with exceptions to extract the positioned message.
        try {
            const json reparsed = json::parse(text);
            (void)reparsed;
        } catch (const json::parse_error& e) {
            issues.add(errc::syntax_error, "/", first_line(e.what()));
        }
        issues.raise_if_any();
    }
    if (!doc.is_object()) {
        issues.add(errc::syntax_error, "/", "a study document must be a JSON object");
        issues.raise_if_any();
    }
    return doc;
}

bool want_string(const json& j, const char* key, const std::string& path, issue_list& issues,
                 std::string& out) {
    if (!j.contains(key)) return false;
    if (!j.at(key).is_string()) {
        issues.add(errc::syntax_error, path + "/" + key, "expected a string");
        return false;
    }
    out = j.at(key).get<std::string>();
    return true;
}

bool want_number(const json& j, const char* key, const std::string& path, issue_list& issues,
                 double& out) {
    if (!j.contains(key)) return false;
    if (!j.at(key).is_number()) {
        issues.add(errc::syntax_error, path + "/" + key, "expected a number");
        return false;
    }
    out = j.at(key).get<double>();
    return true;
}

void check_known_keys(const json& j, std::initializer_list<std::string_view> known,
                      const std::string& path, issue_list& issues) {
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            issues.add(errc::syntax_error, path + "/" + key, "unknown field");
        }
    }
}

criterion_node parse_node(const json& j, const std::string& path, issue_list& issues) {
    criterion_node node;
    if (!j.is_object()) {
        issues.add(errc::syntax_error, path, "expected a node object");
        return node;
    }
    check_known_keys(j, {"id", "label", "children"}, path, issues);
    if (!want_string(j, "id", path, issues, node.id) || node.id.empty()) {
        issues.add(errc::syntax_error, path, "node requires a non-empty \"id\"");
    }
    if (!want_string(j, "label", path, issues, node.label)) {
        node.label = node.id;
    }
    if (j.contains("children")) {
        if (!j.at("children").is_array()) {
            issues.add(errc::syntax_error, path + "/children", "expected an array");
        } else {
            std::size_t index = 0;
            for (const auto& child : j.at("children")) {
                node.children.push_back(
                    parse_node(child, path + "/children/" + std::to_string(index), issues));
                ++index;
            }
        }
    }
    return node;
}

judgment_record parse_record(const json& j, const std::string& path, issue_list& issues) {
    judgment_record record;
    if (!j.is_object()) {
        issues.add(errc::syntax_error, path, "expected a judgment object");
        return record;
    }
    check_known_keys(j, {"i", "j", "label", "l", "m", "u", "crisp"}, path, issues);
    if (!want_string(j, "i", path, issues, record.i) || record.i.empty()) {
        issues.add(errc::syntax_error, path, "judgment requires item id \"i\"");
    }
    if (!want_string(j, "j", path, issues, record.j) || record.j.empty()) {
        issues.add(errc::syntax_error, path, "judgment requires item id \"j\"");
    }

    const bool has_label = j.contains("label");
    const bool has_band = j.contains("l") || j.contains("m") || j.contains("u");
    const bool has_crisp = j.contains("crisp");
    const int kinds = int(has_label) + int(has_band) + int(has_crisp);
    if (kinds != 1) {
        issues.add(errc::syntax_error, path,
                   "judgment must carry exactly one of \"label\", \"l\"/\"m\"/\"u\", or \"crisp\"");
        return record;
    }
    if (has_label) {
        record.payload = judgment_record::kind::linguistic;
        want_string(j, "label", path, issues, record.label);
    } else if (has_band) {
        record.payload = judgment_record::kind::explicit_band;
        const bool ok = want_number(j, "l", path, issues, record.l) &&
                        want_number(j, "m", path, issues, record.m) &&
                        want_number(j, "u", path, issues, record.u);
        if (!ok) {
            issues.add(errc::syntax_error, path, "explicit judgment requires all of l, m, u");
        }
    } else {
        record.payload = judgment_record::kind::crisp;
        want_number(j, "crisp", path, issues, record.crisp);
    }
    return record;
}

std::map<std::string, judgment_records> parse_matrix_set(const json& j, const std::string& path,
                                                         issue_list& issues) {
    std::map<std::string, judgment_records> out;
    if (!j.is_object()) {
        issues.add(errc::syntax_error, path, "expected an object keyed by group id");
        return out;
    }
    for (const auto& [group_id, records_json] : j.items()) {
        const std::string group_path = path + "/" + group_id;
        if (!records_json.is_array()) {
            issues.add(errc::syntax_error, group_path, "expected an array of judgments");
            continue;
        }
        judgment_records records;
        std::size_t index = 0;
        for (const auto& record_json : records_json) {
            records.push_back(
                parse_record(record_json, group_path + "/" + std::to_string(index), issues));
            ++index;
        }
        out.emplace(group_id, std::move(records));
    }
    return out;
}

// Flattened lookup over the implicit-root hierarchy.
struct hierarchy_index {
    std::set<std::string> ids;
    std::map<std::string, std::vector<std::string>> group_children;  // parents only
};

void index_node(const criterion_node& node, hierarchy_index& index, const std::string& path,
                issue_list& issues) {
    if (node.id == kRootId) {
        issues.add(errc::reference_error, path, "\"root\" is reserved for the implicit root");
    }
    if (!index.ids.insert(node.id).second) {
        issues.add(errc::reference_error, path, "duplicate criterion id \"" + node.id + "\"");
    }
    if (!node.children.empty()) {
        auto& children = index.group_children[node.id];
        for (const auto& child : node.children) {
            children.push_back(child.id);
        }
    }
    for (const auto& child : node.children) {
        index_node(child, index, path, issues);
    }
}

hierarchy_index build_index(const std::vector<criterion_node>& forest, const std::string& path,
                            issue_list& issues) {
    hierarchy_index index;
    auto& top = index.group_children[std::string(kRootId)];
    for (const auto& node : forest) {
        top.push_back(node.id);
    }
    for (const auto& node : forest) {
        index_node(node, index, path, issues);
    }
    return index;
}

void validate_matrix_records(const std::string& group_id, const judgment_records& records,
                             const hierarchy_index& index, const linguistic_scale& scale,
                             const std::string& path, issue_list& issues) {
    const auto group = index.group_children.find(group_id);
    if (group == index.group_children.end()) {
        issues.add(errc::reference_error, path,
                   "\"" + group_id + "\" is not a criterion group in the hierarchy");
        return;
    }
    const auto& children = group->second;
    if (children.size() < 2) {
        issues.add(errc::child_mismatch, path,
                   "group \"" + group_id + "\" has a single child; no matrix is expected");
        return;
    }

    std::optional<judgment_record::kind> kind;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t idx = 0; idx < records.size(); ++idx) {
        const auto& record = records[idx];
        const std::string record_path = path + "/" + std::to_string(idx);

        if (!kind) {
            kind = record.payload;
        } else if (*kind != record.payload) {
            issues.add(errc::mixed_judgment_kinds, record_path,
                       "judgment kinds may not be mixed within one matrix");
        }

        bool ids_ok = true;
        for (const std::string* id : {&record.i, &record.j}) {
            if (std::find(children.begin(), children.end(), *id) == children.end()) {
                issues.add(errc::reference_error, record_path,
                           "\"" + *id + "\" is not a child of group \"" + group_id + "\"");
                ids_ok = false;
            }
        }
        if (!ids_ok) continue;

        if (record.i == record.j) {
            issues.add(errc::self_comparison, record_path,
                       "\"" + record.i + "\" compared against itself");
            continue;
        }
        auto key = std::minmax(record.i, record.j);
        if (!seen.insert(key).second) {
            issues.add(errc::duplicate_pair, record_path,
                       "pair (" + key.first + ", " + key.second + ") supplied twice");
        }

        switch (record.payload) {
            case judgment_record::kind::linguistic:
                if (!scale.find(record.label)) {
                    issues.add(errc::reference_error, record_path,
                               "label \"" + record.label + "\" is not on the scale");
                }
                break;
            case judgment_record::kind::explicit_band:
                if (!(record.l > 0.0)) {
                    issues.add(errc::non_positive, record_path, "band lower bound must be > 0");
                } else if (!(record.l < record.m && record.m < record.u)) {
                    issues.add(errc::order_violation, record_path,
                               "band must satisfy l < m < u");
                }
                break;
            case judgment_record::kind::crisp:
                if (!(record.crisp > 0.0)) {
                    issues.add(errc::non_positive, record_path, "crisp value must be > 0");
                }
                break;
        }
    }

    for (std::size_t a = 0; a < children.size(); ++a) {
        for (std::size_t b = a + 1; b < children.size(); ++b) {
            auto key = std::minmax(children[a], children[b]);
            if (!seen.contains(key)) {
                issues.add(errc::missing_pair, path,
                           "no judgment for pair (" + key.first + ", " + key.second + ")");
            }
        }
    }
}

void validate_matrix_set(const std::map<std::string, judgment_records>& matrices,
                         const hierarchy_index& index, const linguistic_scale& scale,
                         const std::string& path, issue_list& issues) {
    for (const auto& [group_id, records] : matrices) {
        validate_matrix_records(group_id, records, index, scale, path + "/" + group_id, issues);
    }
    for (const auto& [group_id, children] : index.group_children) {
        if (children.size() >= 2 && !matrices.contains(group_id)) {
            issues.add(errc::missing_matrix, path,
                       "group \"" + group_id + "\" has no comparison matrix");
        }
    }
}

json node_to_json(const criterion_node& node) {
    json j;
    j["id"] = node.id;
    if (node.label != node.id) {
        j["label"] = node.label;
    }
    if (!node.children.empty()) {
        json children = json::array();
        for (const auto& child : node.children) {
            children.push_back(node_to_json(child));
        }
        j["children"] = std::move(children);
    }
    return j;
}

json records_to_json(const judgment_records& records) {
    json out = json::array();
    for (const auto& record : records) {
        json j;
        j["i"] = record.i;
        j["j"] = record.j;
        switch (record.payload) {
            case judgment_record::kind::linguistic:
                j["label"] = record.label;
                break;
            case judgment_record::kind::explicit_band:
                j["l"] = record.l;
                j["m"] = record.m;
                j["u"] = record.u;
                break;
            case judgment_record::kind::crisp:
                j["crisp"] = record.crisp;
                break;
        }
        out.push_back(std::move(j));
    }
    return out;
}

std::vector<criterion_node> parse_hierarchy(const json& doc, issue_list& issues) {
    std::vector<criterion_node> forest;
    if (!doc.contains("hierarchy") || !doc.at("hierarchy").is_array() ||
        doc.at("hierarchy").empty()) {
        issues.add(errc::syntax_error, "/hierarchy", "a non-empty \"hierarchy\" array is required");
        return forest;
    }
    std::size_t index = 0;
    for (const auto& node : doc.at("hierarchy")) {
        forest.push_back(parse_node(node, "/hierarchy/" + std::to_string(index), issues));
        ++index;
    }
    return forest;
}

}  // namespace

parse_error::parse_error(std::vector<study_issue> issues)
    : error(issues.empty() ? errc::syntax_error : issues.front().code,
            issues.empty() ? std::string("unspecified parse failure")
                           : issues.front().path + ": " + issues.front().message +
                                 (issues.size() > 1
                                      ? " (+" + std::to_string(issues.size() - 1) + " more)"
                                      : "")),
      issues_(std::move(issues)) {}

criterion_node study_root(const study_file& study) {
    criterion_node root;
    root.id = kRootId;
    root.label = kRootId;
    root.children = study.hierarchy;
    return root;
}

criterion_node replay_root(const local_weights_file& file) {
    criterion_node root;
    root.id = kRootId;
    root.label = kRootId;
    root.children = file.hierarchy;
    return root;
}

study_file parse_study(std::string_view text) {
    issue_list issues;
    const json doc = parse_document(text, issues);

    study_file study;
    check_known_keys(doc, {"title", "scale", "policy", "hierarchy", "matrices", "experts"}, "",
                     issues);
    want_string(doc, "title", "", issues, study.title);

    if (doc.contains("scale")) {
        if (!doc.at("scale").is_array()) {
            issues.add(errc::syntax_error, "/scale", "expected an array of labelled bands");
        } else {
            linguistic_scale scale;
            std::size_t index = 0;
            for (const auto& entry : doc.at("scale")) {
                const std::string path = "/scale/" + std::to_string(index);
                std::string label;
                double l = 0, m = 0, u = 0;
                if (!entry.is_object() || !want_string(entry, "label", path, issues, label) ||
                    !want_number(entry, "l", path, issues, l) ||
                    !want_number(entry, "m", path, issues, m) ||
                    !want_number(entry, "u", path, issues, u)) {
                    issues.add(errc::syntax_error, path,
                               "scale entry requires \"label\" and numeric l, m, u");
                } else {
                    try {
                        scale.add(label, triangular_number(l, m, u));
                    } catch (const error& e) {
                        issues.add(e.code(), path, e.what());
                    }
                }
                ++index;
            }
            if (!scale.empty()) {
                study.scale = std::move(scale);
            }
        }
    }

    if (doc.contains("policy")) {
        const auto& policy_json = doc.at("policy");
        if (!policy_json.is_object()) {
            issues.add(errc::syntax_error, "/policy", "expected an object");
        } else {
            check_known_keys(policy_json, {"spread", "floor"}, "/policy", issues);
            spread_policy policy;
            want_number(policy_json, "spread", "/policy", issues, policy.spread);
            want_number(policy_json, "floor", "/policy", issues, policy.floor);
            try {
                policy.validate();
                study.policy = policy;
            } catch (const error& e) {
                issues.add(e.code(), "/policy", e.what());
            }
        }
    }

    study.hierarchy = parse_hierarchy(doc, issues);

    if (doc.contains("matrices")) {
        study.matrices = parse_matrix_set(doc.at("matrices"), "/matrices", issues);
    }

    if (doc.contains("experts")) {
        if (!doc.at("experts").is_array()) {
            issues.add(errc::syntax_error, "/experts", "expected an array");
        } else {
            std::size_t index = 0;
            for (const auto& expert_json : doc.at("experts")) {
                const std::string path = "/experts/" + std::to_string(index);
                expert_opinions expert;
                if (!expert_json.is_object()) {
                    issues.add(errc::syntax_error, path, "expected an expert object");
                } else {
                    check_known_keys(expert_json, {"name", "matrices"}, path, issues);
                    if (!want_string(expert_json, "name", path, issues, expert.name)) {
                        expert.name = "expert-" + std::to_string(index + 1);
                    }
                    if (!expert_json.contains("matrices")) {
                        issues.add(errc::syntax_error, path, "expert requires \"matrices\"");
                    } else {
                        expert.matrices = parse_matrix_set(expert_json.at("matrices"),
                                                           path + "/matrices", issues);
                    }
                }
                study.experts.push_back(std::move(expert));
                ++index;
            }
        }
    }

    if (!study.experts.empty() && !study.matrices.empty()) {
        issues.add(errc::invalid_argument, "/matrices",
                   "give either top-level \"matrices\" or per-expert ones, not both");
    }

    // Semantic validation only makes sense on a structurally sound document.
    if (issues.items.empty()) {
        const hierarchy_index index = build_index(study.hierarchy, "/hierarchy", issues);
        if (issues.items.empty()) {
            const linguistic_scale& scale =
                study.scale ? *study.scale : linguistic_scale::default_scale();
            if (study.experts.empty()) {
                validate_matrix_set(study.matrices, index, scale, "/matrices", issues);
            } else {
                for (std::size_t e = 0; e < study.experts.size(); ++e) {
                    validate_matrix_set(study.experts[e].matrices, index, scale,
                                        "/experts/" + std::to_string(e) + "/matrices", issues);
                }
            }
        }
    }

    issues.raise_if_any();
    return study;
}

std::string write_study(const study_file& study) {
    json doc;
    if (!study.title.empty()) {
        doc["title"] = study.title;
    }
    if (study.scale) {
        json scale = json::array();
        for (const auto& [label, band] : study.scale->entries()) {
            scale.push_back(
                {{"label", label}, {"l", band.lower()}, {"m", band.modal()}, {"u", band.upper()}});
        }
        doc["scale"] = std::move(scale);
    }
    if (study.policy) {
        doc["policy"] = {{"spread", study.policy->spread}, {"floor", study.policy->floor}};
    }
    json hierarchy = json::array();
    for (const auto& node : study.hierarchy) {
        hierarchy.push_back(node_to_json(node));
    }
    doc["hierarchy"] = std::move(hierarchy);
    if (!study.matrices.empty()) {
        json matrices;
        for (const auto& [group_id, records] : study.matrices) {
            matrices[group_id] = records_to_json(records);
        }
        doc["matrices"] = std::move(matrices);
    }
    if (!study.experts.empty()) {
        json experts = json::array();
        for (const auto& expert : study.experts) {
            json expert_json;
            expert_json["name"] = expert.name;
            json matrices;
            for (const auto& [group_id, records] : expert.matrices) {
                matrices[group_id] = records_to_json(records);
            }
            expert_json["matrices"] = std::move(matrices);
            experts.push_back(std::move(expert_json));
        }
        doc["experts"] = std::move(experts);
    }
    return doc.dump(2) + "\n";
}

local_weights_file parse_local_weights(std::string_view text) {
    issue_list issues;
    const json doc = parse_document(text, issues);

    local_weights_file file;
    check_known_keys(doc, {"title", "hierarchy", "local_weights", "lambda"}, "", issues);
    want_string(doc, "title", "", issues, file.title);
    file.hierarchy = parse_hierarchy(doc, issues);

    if (!doc.contains("local_weights") || !doc.at("local_weights").is_object()) {
        issues.add(errc::syntax_error, "/local_weights",
                   "an object mapping node ids to weights is required");
    } else {
        for (const auto& [id, value] : doc.at("local_weights").items()) {
            if (!value.is_number()) {
                issues.add(errc::syntax_error, "/local_weights/" + id, "expected a number");
            } else {
                file.local[id] = value.get<double>();
            }
        }
    }
    if (doc.contains("lambda")) {
        if (!doc.at("lambda").is_object()) {
            issues.add(errc::syntax_error, "/lambda", "expected an object keyed by group id");
        } else {
            for (const auto& [id, value] : doc.at("lambda").items()) {
                if (!value.is_number()) {
                    issues.add(errc::syntax_error, "/lambda/" + id, "expected a number");
                } else {
                    file.group_lambda[id] = value.get<double>();
                }
            }
        }
    }

    if (issues.items.empty()) {
        const hierarchy_index index = build_index(file.hierarchy, "/hierarchy", issues);
        if (issues.items.empty()) {
            for (const auto& [id, weight] : file.local) {
                if (!index.ids.contains(id)) {
                    issues.add(errc::reference_error, "/local_weights/" + id,
                               "\"" + id + "\" is not in the hierarchy");
                } else if (!(weight > 0.0)) {
                    issues.add(errc::non_positive, "/local_weights/" + id,
                               "local weights must be > 0");
                }
            }
            for (const auto& [id, children] : index.group_children) {
                for (const auto& child : children) {
                    if (!file.local.contains(child)) {
                        issues.add(errc::missing_weight, "/local_weights",
                                   "no local weight for node \"" + child + "\"");
                    }
                }
            }
            for (const auto& [id, value] : file.group_lambda) {
                if (!index.group_children.contains(id)) {
                    issues.add(errc::reference_error, "/lambda/" + id,
                               "\"" + id + "\" is not a criterion group");
                }
            }
        }
    }

    issues.raise_if_any();
    return file;
}

}  // namespace fpp
