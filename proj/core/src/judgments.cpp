#include "fpp/judgments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fpp {

namespace {

std::string pair_label(const std::vector<std::string>& ids, std::size_t i, std::size_t j) {
    return "(" + ids[i] + ", " + ids[j] + ")";
}

}  // namespace

comparison_matrix::comparison_matrix(std::vector<std::string> item_ids,
                                     const std::vector<judgment_entry>& entries)
    : item_ids_(std::move(item_ids)) {
    const std::size_t n = item_ids_.size();
    if (n < 2) {
        throw error(errc::invalid_argument, "a comparison matrix needs at least 2 items");
    }

    std::vector<std::optional<triangular_number>> upper(n * (n - 1) / 2);
    for (const auto& entry : entries) {
        if (entry.row >= n || entry.col >= n) {
            throw error(errc::invalid_argument, "judgment index out of range");
        }
        if (entry.row == entry.col) {
            throw error(errc::self_comparison,
                        "item " + item_ids_[entry.row] + " compared against itself");
        }
        const bool flipped = entry.row > entry.col;
        const std::size_t i = flipped ? entry.col : entry.row;
        const std::size_t j = flipped ? entry.row : entry.col;
        const std::size_t idx = pair_index(i, j);
        if (upper[idx]) {
            throw error(errc::duplicate_pair, "pair " + pair_label(item_ids_, i, j) + " supplied twice");
        }
        upper[idx] = flipped ? entry.value.reciprocal() : entry.value;
    }

    upper_.reserve(upper.size());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto& slot = upper[pair_index(i, j)];
            if (!slot) {
                throw error(errc::missing_pair, "no judgment for pair " + pair_label(item_ids_, i, j));
            }
            upper_.push_back(*slot);
        }
    }
}

std::size_t comparison_matrix::pair_index(std::size_t i, std::size_t j) const {
    // Row-major offset into the strict upper triangle, i < j.
    const std::size_t n = item_ids_.size();
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

const triangular_number& comparison_matrix::judgment(std::size_t i, std::size_t j) const {
    if (i >= j || j >= size()) {
        throw error(errc::invalid_argument, "judgment() requires i < j < n");
    }
    return upper_[pair_index(i, j)];
}

triangular_number comparison_matrix::ratio_band(std::size_t i, std::size_t j) const {
    if (i == j || i >= size() || j >= size()) {
        throw error(errc::invalid_argument, "ratio_band() requires distinct valid indices");
    }
    if (i < j) {
        return upper_[pair_index(i, j)];
    }
    return upper_[pair_index(j, i)].reciprocal();
}

void spread_policy::validate() const {
    if (!(spread > 0.0)) {
        throw error(errc::non_positive, "spread must be > 0");
    }
    if (!(floor > 0.0 && floor < 1.0)) {
        throw error(errc::invalid_argument, "floor must lie in (0, 1)");
    }
}

comparison_matrix aggregate_experts(const std::vector<comparison_matrix>& matrices) {
    if (matrices.empty()) {
        throw error(errc::empty_input, "no expert matrices to aggregate");
    }
    const comparison_matrix& first = matrices.front();
    for (const auto& other : matrices) {
        if (other.item_ids() != first.item_ids()) {
            throw error(errc::shape_mismatch, "expert matrices cover different item lists");
        }
    }
    if (matrices.size() == 1) {
        return first;
    }

    const std::size_t n = first.size();
    const double inv_k = 1.0 / static_cast<double>(matrices.size());
    std::vector<judgment_entry> entries;
    entries.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Geometric means in log space; preserves l < m < u automatically.
            double log_l = 0.0, log_m = 0.0, log_u = 0.0;
            for (const auto& matrix : matrices) {
                const triangular_number& t = matrix.judgment(i, j);
                log_l += std::log(t.lower());
                log_m += std::log(t.modal());
                log_u += std::log(t.upper());
            }
            entries.push_back({i, j,
                               triangular_number(std::exp(log_l * inv_k), std::exp(log_m * inv_k),
                                                 std::exp(log_u * inv_k))});
        }
    }
    return comparison_matrix(first.item_ids(), entries);
}

bool clips_at_floor(double crisp_value, const spread_policy& policy) {
    return crisp_value - policy.spread < policy.floor;
}

comparison_matrix import_crisp(std::vector<std::string> item_ids,
                               const std::vector<crisp_entry>& entries,
                               const spread_policy& policy) {
    policy.validate();
    std::vector<judgment_entry> fuzzy;
    fuzzy.reserve(entries.size());
    for (const auto& entry : entries) {
        if (!(entry.value > 0.0)) {
            throw error(errc::non_positive, "crisp comparison values must be > 0");
        }
        const double lower = std::max(entry.value - policy.spread, policy.floor);
        if (lower >= entry.value) {
            throw error(errc::floor_above_modal,
                        "crisp value " + std::to_string(entry.value) +
                            " is not above the policy floor " + std::to_string(policy.floor));
        }
        fuzzy.push_back({entry.row, entry.col,
                         triangular_number(lower, entry.value, entry.value + policy.spread)});
    }
    return comparison_matrix(std::move(item_ids), fuzzy);
}

validation_report validate(const comparison_matrix& matrix) {
    validation_report report;
    const std::size_t n = matrix.size();
    report.item_count = n;
    report.judgment_count = matrix.pair_count();

    double min_width = std::numeric_limits<double>::infinity();
    double max_width = 0.0;
    double total_width = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const triangular_number& t = matrix.judgment(i, j);
            const double width = t.upper() - t.lower();
            min_width = std::min(min_width, width);
            max_width = std::max(max_width, width);
            total_width += width;
        }
    }
    report.min_band_width = min_width;
    report.max_band_width = max_width;
    report.mean_band_width = total_width / static_cast<double>(report.judgment_count);

    if (n >= 3) {
        double worst = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                for (std::size_t k = j + 1; k < n; ++k) {
                    const double chained =
                        matrix.judgment(i, j).modal() * matrix.judgment(j, k).modal();
                    const double direct = matrix.judgment(i, k).modal();
                    const double deviation = std::fabs(chained / direct - 1.0);
                    if (deviation > worst) {
                        worst = deviation;
                        report.worst_triple = {i, j, k};
                    }
                }
            }
        }
        report.max_triple_deviation = worst;
    }
    return report;
}

}  // namespace fpp
