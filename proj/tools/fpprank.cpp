// fpprank: derive crisp priority weights and a consistency index from fuzzy
// pairwise comparisons, compose them over a criteria hierarchy, and rank.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpp/report.hpp"
#include "fpp/study.hpp"

namespace {

constexpr const char* kConfigEnvVar = "FPPRANK_CONFIG";

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNoConvergence = 2;

struct cli_settings {
    double lambda_tolerance = fpp::solver_config{}.lambda_tolerance;
    double epsilon_w = fpp::solver_config{}.epsilon_w;
    int max_expansions = fpp::solver_config{}.max_expansions;
    int max_iterations = fpp::solver_config{}.max_iterations;
    std::optional<double> spread;
    std::optional<double> floor;
    bool renormalize = false;
    bool parallel = false;
    bool oracle_check = false;
    std::string format = "table";
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw fpp::error(fpp::errc::invalid_argument, "cannot open file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Defaults may come from a JSON config file named by FPPRANK_CONFIG;
// command-line flags override anything set there.
void load_config_file(cli_settings& settings) {
    const char* path = std::getenv(kConfigEnvVar);
    if (path == nullptr || *path == '\0') {
        return;
    }
    const std::string text = read_file(path);
    const auto doc = nlohmann::json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) {
        throw fpp::error(fpp::errc::syntax_error,
                         std::string(kConfigEnvVar) + " file is not a JSON object: " + path);
    }
    const auto number = [&](const char* key, auto setter) {
        if (doc.contains(key)) {
            if (!doc.at(key).is_number()) {
                throw fpp::error(fpp::errc::syntax_error,
                                 "config key \"" + std::string(key) + "\" must be a number");
            }
            setter(doc.at(key).get<double>());
        }
    };
    const auto boolean = [&](const char* key, bool& target) {
        if (doc.contains(key)) {
            if (!doc.at(key).is_boolean()) {
                throw fpp::error(fpp::errc::syntax_error,
                                 "config key \"" + std::string(key) + "\" must be a boolean");
            }
            target = doc.at(key).get<bool>();
        }
    };
    number("lambda_tolerance", [&](double v) { settings.lambda_tolerance = v; });
    number("epsilon_w", [&](double v) { settings.epsilon_w = v; });
    number("spread", [&](double v) { settings.spread = v; });
    number("floor", [&](double v) { settings.floor = v; });
    boolean("renormalize", settings.renormalize);
    boolean("parallel", settings.parallel);
    boolean("oracle_check", settings.oracle_check);
    if (doc.contains("format")) {
        if (!doc.at("format").is_string()) {
            throw fpp::error(fpp::errc::syntax_error, "config key \"format\" must be a string");
        }
        settings.format = doc.at("format").get<std::string>();
    }
}

fpp::run_options to_run_options(const cli_settings& settings) {
    fpp::run_options options;
    options.config.lambda_tolerance = settings.lambda_tolerance;
    options.config.epsilon_w = settings.epsilon_w;
    options.config.max_expansions = settings.max_expansions;
    options.config.max_iterations = settings.max_iterations;
    options.mode = settings.renormalize ? fpp::renormalize::on : fpp::renormalize::off;
    options.parallel = settings.parallel;
    options.oracle_check = settings.oracle_check;
    options.spread = settings.spread;
    options.floor = settings.floor;
    return options;
}

fpp::render_format resolve_format(const std::string& name) {
    const auto format = fpp::parse_render_format(name);
    if (!format) {
        throw fpp::error(fpp::errc::invalid_argument,
                         "unknown format \"" + name + "\" (expected table, machine, or csv)");
    }
    return *format;
}

void print_issues(const fpp::parse_error& e) {
    std::cerr << "validation failed with " << e.issues().size() << " issue(s):\n";
    for (const auto& issue : e.issues()) {
        std::cerr << "  " << issue.path << ": " << issue.message << " ["
                  << fpp::errc_name(issue.code) << "]\n";
    }
}

int run_validate(const std::string& path) {
    const fpp::study_file study = fpp::parse_study(read_file(path));

    std::size_t node_count = 0;
    const auto count_nodes = [&](const auto& self, const fpp::criterion_node& node) -> void {
        ++node_count;
        for (const auto& child : node.children) self(self, child);
    };
    for (const auto& node : study.hierarchy) count_nodes(count_nodes, node);

    const std::size_t matrix_count = study.experts.empty() ? study.matrices.size()
                                                           : study.experts.front().matrices.size();
    std::cout << "ok: " << node_count << " criteria, " << matrix_count << " comparison groups";
    if (!study.experts.empty()) {
        std::cout << ", " << study.experts.size() << " experts";
    }
    std::cout << "\n";

    // Matrix diagnostics come from a dry run of the import path.
    fpp::run_options options;
    const fpp::report rep = fpp::run_solve(study, options);
    for (const auto& group : rep.groups) {
        if (group.singleton) {
            std::cout << "group " << group.group_id << ": singleton\n";
        }
    }
    for (const auto& warning : rep.warnings) {
        std::cout << "note: " << warning << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fuzzy pairwise-comparison prioritizer"};
    app.require_subcommand(1);

    cli_settings settings;
    try {
        load_config_file(settings);
    } catch (const fpp::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }

    std::string study_path;
    std::string weights_path;
    double spread_flag = 0.0;
    double floor_flag = 0.0;

    auto* solve_cmd = app.add_subcommand("solve", "solve a study file and rank its criteria");
    solve_cmd->add_option("study", study_path, "study JSON file")->required();
    solve_cmd->add_option("--lambda-tol", settings.lambda_tolerance,
                          "bisection stop width for the consistency index");
    solve_cmd->add_option("--epsilon-w", settings.epsilon_w, "positivity floor for weights");
    solve_cmd->add_option("--max-expansions", settings.max_expansions,
                          "doublings of the lower bracket end before giving up");
    solve_cmd->add_option("--max-iterations", settings.max_iterations,
                          "cap on feasibility probes per group");
    auto* spread_opt =
        solve_cmd->add_option("--spread", spread_flag, "half-width for crisp imports");
    auto* floor_opt = solve_cmd->add_option("--floor", floor_flag, "lower clip for crisp imports");
    solve_cmd->add_flag("--renormalize", settings.renormalize,
                        "rescale sibling groups to sum 1 before composing");
    solve_cmd->add_option("--format", settings.format, "output format: table, machine, or csv");
    solve_cmd->add_flag("--oracle-check", settings.oracle_check,
                        "cross-verify groups of 2-3 items against the grid oracle");
    solve_cmd->add_flag("--parallel", settings.parallel, "solve independent groups concurrently");

    auto* validate_cmd = app.add_subcommand("validate", "check a study file and report problems");
    validate_cmd->add_option("study", study_path, "study JSON file")->required();

    auto* replay_cmd =
        app.add_subcommand("replay", "rank from local weights given in a reference file");
    replay_cmd->add_option("weights", weights_path, "local-weights JSON file")->required();
    replay_cmd->add_flag("--renormalize", settings.renormalize,
                         "rescale sibling groups to sum 1 before composing");
    replay_cmd->add_option("--format", settings.format, "output format: table, machine, or csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (solve_cmd->parsed()) {
            if (spread_opt->count() > 0) settings.spread = spread_flag;
            if (floor_opt->count() > 0) settings.floor = floor_flag;
            const fpp::render_format format = resolve_format(settings.format);
            const fpp::study_file study = fpp::parse_study(read_file(study_path));
            const fpp::report rep = fpp::run_solve(study, to_run_options(settings));
            std::cout << fpp::render(rep, format);
            return kExitOk;
        }
        if (validate_cmd->parsed()) {
            return run_validate(study_path);
        }
        if (replay_cmd->parsed()) {
            const fpp::render_format format = resolve_format(settings.format);
            const fpp::local_weights_file file = fpp::parse_local_weights(read_file(weights_path));
            const fpp::report rep = fpp::run_replay(
                file, settings.renormalize ? fpp::renormalize::on : fpp::renormalize::off);
            std::cout << fpp::render(rep, format);
            return kExitOk;
        }
    } catch (const fpp::parse_error& e) {
        print_issues(e);
        return kExitValidation;
    } catch (const fpp::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return (e.code() == fpp::errc::not_converged || e.code() == fpp::errc::numerical_failure)
                   ? kExitNoConvergence
                   : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
