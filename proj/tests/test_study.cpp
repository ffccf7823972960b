#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "fpp/study.hpp"
#include "support.hpp"

using fpp::errc;
using fpp::judgment_record;
using fpp::parse_error;
using fpp::parse_study;
using fpp::study_file;

namespace {

bool has_issue(const parse_error& e, errc code) {
    return std::any_of(e.issues().begin(), e.issues().end(),
                       [&](const fpp::study_issue& issue) { return issue.code == code; });
}

parse_error capture(const std::string& text) {
    try {
        (void)parse_study(text);
    } catch (const parse_error& e) {
        return e;
    }
    FAIL("expected parse issues");
    return parse_error({{errc::syntax_error, "", ""}});
}

constexpr const char* kSmallStudy = R"({
  "hierarchy": [
    {"id": "A"},
    {"id": "B"},
    {"id": "C"}
  ],
  "matrices": {
    "root": [
      {"i": "A", "j": "B", "label": "low"},
      {"i": "A", "j": "C", "label": "medium"},
      {"i": "B", "j": "C", "label": "very low"}
    ]
  }
})";

}  // namespace

TEST_CASE("parses the bundled study dataset") {
    const study_file study =
        parse_study(fpptest::read_file(fpptest::data_dir() + "/paper_study.json"));
    CHECK(study.matrices.size() == 5);
    REQUIRE(study.policy.has_value());
    CHECK(study.policy->spread == 1.0);
    CHECK(study.policy->floor == doctest::Approx(1.0 / 9.0).epsilon(1e-9));

    std::size_t nodes = 0;
    const auto count = [&](const auto& self, const fpp::criterion_node& node) -> void {
        ++nodes;
        for (const auto& child : node.children) self(self, child);
    };
    for (const auto& top : study.hierarchy) count(count, top);
    CHECK(nodes == 15);

    const fpp::criterion_node root = study_root(study);
    CHECK(root.id == "root");
    CHECK(root.children.size() == 4);
    CHECK(study.matrices.at("C4").size() == 10);
}

TEST_CASE("a minimal flat study parses") {
    const study_file study = parse_study(kSmallStudy);
    CHECK(study.hierarchy.size() == 3);
    CHECK(study.matrices.at("root").size() == 3);
    CHECK(study.matrices.at("root")[0].payload == judgment_record::kind::linguistic);
}

TEST_CASE("write then parse is the identity") {
    study_file study;
    study.title = "round trip";
    fpp::linguistic_scale scale;
    scale.add("roughly equal", fpp::triangular_number(0.8, 1.0, 1.25));
    scale.add("more", fpp::triangular_number(1, 2, 3));
    study.scale = scale;
    study.policy = fpp::spread_policy{0.75, 0.2};
    study.hierarchy = {
        {"A", "First group", {{"A1", "A1", {}}, {"A2", "A2", {}}}},
        {"B", "Second group", {{"B1", "B1", {}}, {"B2", "B2", {}}}},
    };
    study.matrices["root"] = {
        {"A", "B", judgment_record::kind::linguistic, "more", 0, 0, 0, 0},
    };
    study.matrices["A"] = {
        {"A1", "A2", judgment_record::kind::explicit_band, "", 1.5, 2.5, 3.5, 0.0},
    };
    study.matrices["B"] = {
        {"B2", "B1", judgment_record::kind::crisp, "", 0, 0, 0, 3.25},
    };

    const study_file back = parse_study(fpp::write_study(study));
    CHECK(back == study);

    SUBCASE("experts survive the round trip") {
        study_file panel = parse_study(kSmallStudy);
        fpp::expert_opinions expert;
        expert.name = "e1";
        expert.matrices["root"] = panel.matrices.at("root");
        panel.matrices.clear();
        panel.experts = {expert, expert};
        panel.experts[1].name = "e2";
        const study_file round = parse_study(fpp::write_study(panel));
        CHECK(round == panel);
    }
}

TEST_CASE("positioned issues for broken documents") {
    SUBCASE("malformed JSON") {
        const parse_error e = capture("{\"hierarchy\": [");
        CHECK(has_issue(e, errc::syntax_error));
    }
    SUBCASE("not an object") {
        CHECK(has_issue(capture("[1, 2]"), errc::syntax_error));
    }
    SUBCASE("unknown criterion id in a matrix") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}],
          "matrices": {"root": [{"i": "A", "j": "C99", "crisp": 2.0}]}
        })");
        CHECK(has_issue(e, errc::reference_error));
        CHECK(has_issue(e, errc::missing_pair));
        const auto& ref = *std::find_if(e.issues().begin(), e.issues().end(),
                                        [](const auto& i) { return i.code == errc::reference_error; });
        CHECK(ref.path == "/matrices/root/0");
    }
    SUBCASE("mixed judgment kinds in one matrix") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}, {"id": "C"}],
          "matrices": {"root": [
            {"i": "A", "j": "B", "label": "low"},
            {"i": "A", "j": "C", "crisp": 2.0},
            {"i": "B", "j": "C", "label": "low"}
          ]}
        })");
        CHECK(has_issue(e, errc::mixed_judgment_kinds));
    }
    SUBCASE("duplicate and missing pairs") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}, {"id": "C"}],
          "matrices": {"root": [
            {"i": "A", "j": "B", "crisp": 2.0},
            {"i": "B", "j": "A", "crisp": 3.0}
          ]}
        })");
        CHECK(has_issue(e, errc::duplicate_pair));
        CHECK(has_issue(e, errc::missing_pair));
    }
    SUBCASE("self comparison") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}],
          "matrices": {"root": [{"i": "A", "j": "A", "crisp": 2.0}]}
        })");
        CHECK(has_issue(e, errc::self_comparison));
    }
    SUBCASE("reserved root id") {
        const parse_error e = capture(R"({"hierarchy": [{"id": "root"}, {"id": "B"}],
          "matrices": {"root": [{"i": "root", "j": "B", "crisp": 2.0}]}})");
        CHECK(has_issue(e, errc::reference_error));
    }
    SUBCASE("duplicate node ids") {
        const parse_error e = capture(R"({"hierarchy": [{"id": "A"}, {"id": "A"}],
          "matrices": {"root": [{"i": "A", "j": "A", "crisp": 2.0}]}})");
        CHECK(has_issue(e, errc::reference_error));
    }
    SUBCASE("unknown scale label") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}],
          "matrices": {"root": [{"i": "A", "j": "B", "label": "no such label"}]}
        })");
        CHECK(has_issue(e, errc::reference_error));
    }
    SUBCASE("group without a matrix") {
        const parse_error e = capture(R"({"hierarchy": [{"id": "A"}, {"id": "B"}]})");
        CHECK(has_issue(e, errc::missing_matrix));
    }
    SUBCASE("matrix for a singleton group") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "G", "children": [{"id": "X"}]}, {"id": "D"}],
          "matrices": {
            "root": [{"i": "G", "j": "D", "crisp": 2.0}],
            "G": [{"i": "X", "j": "X", "crisp": 1.5}]
          }
        })");
        CHECK(has_issue(e, errc::child_mismatch));
    }
    SUBCASE("matrices and experts are mutually exclusive") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}],
          "matrices": {"root": [{"i": "A", "j": "B", "crisp": 2.0}]},
          "experts": [{"name": "e", "matrices": {"root": [{"i": "A", "j": "B", "crisp": 2.0}]}}]
        })");
        CHECK(has_issue(e, errc::invalid_argument));
    }
    SUBCASE("bad band and bad crisp values") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}, {"id": "C"}],
          "matrices": {"root": [
            {"i": "A", "j": "B", "l": 3, "m": 2, "u": 4},
            {"i": "A", "j": "C", "l": -1, "m": 2, "u": 4},
            {"i": "B", "j": "C", "l": 1, "m": 2, "u": 4}
          ]}
        })");
        CHECK(has_issue(e, errc::order_violation));
        CHECK(has_issue(e, errc::non_positive));
        CHECK(e.issues().size() >= 2);  // all problems reported in one pass
    }
    SUBCASE("several judgment kinds on one record") {
        const parse_error e = capture(R"({
          "hierarchy": [{"id": "A"}, {"id": "B"}],
          "matrices": {"root": [{"i": "A", "j": "B", "label": "low", "crisp": 2.0}]}
        })");
        CHECK(has_issue(e, errc::syntax_error));
    }
}

TEST_CASE("parses the bundled local-weights dataset") {
    const fpp::local_weights_file file =
        fpp::parse_local_weights(fpptest::read_file(fpptest::data_dir() + "/paper_localweights.json"));
    CHECK(file.local.size() == 15);
    CHECK(file.group_lambda.size() == 5);
    CHECK(file.local.at("C32") == 0.572145);
    CHECK(file.group_lambda.at("root") == 0.41025);
}

TEST_CASE("local-weights validation") {
    SUBCASE("missing weight") {
        try {
            (void)fpp::parse_local_weights(R"({
              "hierarchy": [{"id": "A"}, {"id": "B"}],
              "local_weights": {"A": 0.6}
            })");
            FAIL("expected parse issues");
        } catch (const parse_error& e) {
            CHECK(has_issue(e, errc::missing_weight));
        }
    }
    SUBCASE("lambda for a non-group") {
        try {
            (void)fpp::parse_local_weights(R"({
              "hierarchy": [{"id": "A"}, {"id": "B"}],
              "local_weights": {"A": 0.6, "B": 0.4},
              "lambda": {"A": 0.5}
            })");
            FAIL("expected parse issues");
        } catch (const parse_error& e) {
            CHECK(has_issue(e, errc::reference_error));
        }
    }
}
