#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpp/error.hpp"
#include "fpp/fuzzy.hpp"
#include "fpp/hierarchy.hpp"
#include "fpp/judgments.hpp"

namespace fpp {

/// One judgment line in a study file. `i` and `j` are criterion ids; exactly
/// one of the three payload kinds is set. Kinds may not be mixed within one
/// matrix.
struct judgment_record {
    enum class kind { linguistic, explicit_band, crisp };

    std::string i;
    std::string j;
    kind payload = kind::crisp;
    std::string label;                    // linguistic
    double l = 0.0, m = 0.0, u = 0.0;     // explicit band
    double crisp = 0.0;                   // crisp value

    friend bool operator==(const judgment_record&, const judgment_record&) = default;
};

using judgment_records = std::vector<judgment_record>;

/// One expert's answers: a matrix per parent group.
struct expert_opinions {
    std::string name;
    std::map<std::string, judgment_records> matrices;

    friend bool operator==(const expert_opinions&, const expert_opinions&) = default;
};

/// A parsed study: the criteria hierarchy plus the judgments to solve it
/// with. Top-level criteria form one comparison group under an implicit
/// root whose id is "root". When `experts` is non-empty the per-expert
/// matrices are aggregated and `matrices` must be empty.
struct study_file {
    std::string title;
    std::optional<linguistic_scale> scale;
    std::optional<spread_policy> policy;
    std::vector<criterion_node> hierarchy;
    std::map<std::string, judgment_records> matrices;
    std::vector<expert_opinions> experts;

    friend bool operator==(const study_file&, const study_file&) = default;
};

/// Reserved id of the implicit root group.
inline constexpr std::string_view kRootId = "root";

/// The hierarchy as a single tree under the implicit root.
criterion_node study_root(const study_file& study);

/// A positioned problem found while parsing or validating a study file.
struct study_issue {
    errc code = errc::syntax_error;
    std::string path;     // slash-separated location inside the document
    std::string message;
};

/// Carries every issue found in one pass, not just the first.
class parse_error : public error {
public:
    explicit parse_error(std::vector<study_issue> issues);

    const std::vector<study_issue>& issues() const noexcept { return issues_; }

private:
    std::vector<study_issue> issues_;
};

/// Parses and fully validates a study document (structure, references,
/// judgment kinds, pair completeness, value sanity). Throws parse_error
/// listing every issue found.
study_file parse_study(std::string_view text);

/// Serializes a study back to its document form. parse_study(write_study(s))
/// is structurally identical to s.
std::string write_study(const study_file& study);

/// Reference data for replaying a ranking from known local weights: the
/// hierarchy, one local weight per non-root node, and optionally one
/// consistency index per group.
struct local_weights_file {
    std::string title;
    std::vector<criterion_node> hierarchy;
    std::map<std::string, double> local;
    std::map<std::string, double> group_lambda;
};

criterion_node replay_root(const local_weights_file& file);

local_weights_file parse_local_weights(std::string_view text);

}  // namespace fpp
