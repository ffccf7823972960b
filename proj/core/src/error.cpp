#include "fpp/error.hpp"

namespace fpp {

const char* errc_name(errc code) noexcept {
    switch (code) {
        case errc::order_violation: return "order violation";
        case errc::non_positive: return "non-positive value";
        case errc::duplicate_pair: return "duplicate pair";
        case errc::missing_pair: return "missing pair";
        case errc::self_comparison: return "self comparison";
        case errc::shape_mismatch: return "shape mismatch";
        case errc::empty_input: return "empty input";
        case errc::floor_above_modal: return "floor above modal";
        case errc::not_converged: return "not converged";
        case errc::invalid_matrix: return "invalid matrix";
        case errc::numerical_failure: return "numerical failure";
        case errc::too_large: return "too large";
        case errc::missing_matrix: return "missing matrix";
        case errc::child_mismatch: return "child mismatch";
        case errc::missing_weight: return "missing weight";
        case errc::syntax_error: return "syntax error";
        case errc::reference_error: return "reference error";
        case errc::mixed_judgment_kinds: return "mixed judgment kinds";
        case errc::invalid_argument: return "invalid argument";
    }
    return "unknown error";
}

}  // namespace fpp
