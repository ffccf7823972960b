#pragma once

#include <stdexcept>
#include <string>

namespace fpp {

// Failure categories raised by the library. Each maps to one well-defined
// contract violation; messages carry the specifics.
enum class errc {
    order_violation,       // fuzzy bounds not strictly increasing
    non_positive,          // value required to be > 0
    duplicate_pair,        // same comparison supplied twice
    missing_pair,          // incomplete upper triangle
    self_comparison,       // judgment of an item against itself
    shape_mismatch,        // expert matrices disagree on items
    empty_input,           // aggregation over zero matrices
    floor_above_modal,     // crisp import floor >= modal value
    not_converged,         // solver iteration budget exhausted
    invalid_matrix,        // matrix/config combination unsolvable
    numerical_failure,     // pivot breakdown in the feasibility probe
    too_large,             // brute-force oracle beyond supported size
    missing_matrix,        // hierarchy parent without a comparison matrix
    child_mismatch,        // matrix items differ from a parent's children
    missing_weight,        // node without a local weight on a leaf path
    syntax_error,          // malformed study file
    reference_error,       // unknown id or label in a study file
    mixed_judgment_kinds,  // linguistic/explicit/crisp mixed in one matrix
    invalid_argument,      // other precondition violation
};

const char* errc_name(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

}  // namespace fpp
