#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fpp/error.hpp"
#include "fpp/fuzzy.hpp"

namespace fpp {

/// One pairwise judgment: how strongly item `row` dominates item `col`.
/// Indices refer to positions in the matrix's item list; row == col is
/// rejected, and entries with row > col are stored under (col, row) as the
/// reciprocal band.
struct judgment_entry {
    std::size_t row;
    std::size_t col;
    triangular_number value;
};

/// A complete set of fuzzy pairwise comparisons over n >= 2 items: exactly
/// one judgment band per unordered pair, kept for row < col with reciprocals
/// implied. Immutable once built.
class comparison_matrix {
public:
    /// Builds a matrix from one entry per pair. Throws self_comparison,
    /// duplicate_pair, missing_pair, or invalid_argument on bad indices.
    comparison_matrix(std::vector<std::string> item_ids, const std::vector<judgment_entry>& entries);

    std::size_t size() const noexcept { return item_ids_.size(); }
    std::size_t pair_count() const noexcept { return upper_.size(); }
    const std::vector<std::string>& item_ids() const noexcept { return item_ids_; }

    /// The stored band for pair (i, j) with i < j.
    const triangular_number& judgment(std::size_t i, std::size_t j) const;

    /// The band constraining w_i / w_j for any i != j; applies the
    /// reciprocal when i > j.
    triangular_number ratio_band(std::size_t i, std::size_t j) const;

private:
    std::size_t pair_index(std::size_t i, std::size_t j) const;

    std::vector<std::string> item_ids_;
    std::vector<triangular_number> upper_;  // row-major strict upper triangle
};

/// How crisp comparison values are widened into triangular bands:
/// c -> (max(c - spread, floor), c, c + spread).
struct spread_policy {
    double spread = 1.0;
    double floor = 1.0 / 9.0;

    void validate() const;

    friend bool operator==(const spread_policy&, const spread_policy&) = default;
};

/// One crisp pairwise value, same index conventions as judgment_entry.
struct crisp_entry {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Component-wise geometric mean across expert matrices. All matrices must
/// share the same item list; a single matrix is returned unchanged.
comparison_matrix aggregate_experts(const std::vector<comparison_matrix>& matrices);

/// Builds a fuzzy matrix from crisp modal values under the given policy.
/// Throws floor_above_modal when the widened lower bound would not stay
/// strictly below the modal value.
comparison_matrix import_crisp(std::vector<std::string> item_ids,
                               const std::vector<crisp_entry>& entries,
                               const spread_policy& policy);

/// Returns true when the policy clips the lower bound of this crisp value,
/// i.e. c - spread falls below the floor. Used for import warnings.
bool clips_at_floor(double crisp_value, const spread_policy& policy);

/// Diagnostics over a complete matrix. Modal consistency is measured per
/// item triple (i, j, k) as |m_ij * m_jk / m_ik - 1|; 0 means the modal
/// values cohere perfectly.
struct validation_report {
    std::size_t item_count = 0;
    std::size_t judgment_count = 0;
    double min_band_width = 0.0;  // u - l over stored judgments
    double max_band_width = 0.0;
    double mean_band_width = 0.0;
    std::optional<double> max_triple_deviation;        // absent when n < 3
    std::array<std::size_t, 3> worst_triple{0, 0, 0};  // valid when deviation present
};

validation_report validate(const comparison_matrix& matrix);

}  // namespace fpp
