#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fpp/error.hpp"

namespace fpp {

/// A triangular judgment band (l, m, u) over a ratio of priority weights:
/// full confidence at the modal ratio m, decaying linearly to zero at the
/// bounds l and u. Bounds must satisfy 0 < l < m < u; a crisp (zero-spread)
/// judgment is rejected here and must be widened by the importer instead.
class triangular_number {
public:
    triangular_number(double lower, double modal, double upper);

    double lower() const noexcept { return lower_; }
    double modal() const noexcept { return modal_; }
    double upper() const noexcept { return upper_; }

    /// Band for the inverted ratio: (1/u, 1/m, 1/l). Involutive up to round-off.
    triangular_number reciprocal() const;

    /// Degree to which `ratio` satisfies this judgment. 1 at the modal value,
    /// 0 at the bounds, and linearly negative outside [l, u] -- the negative
    /// extension is what gives the consistency index its sign semantics.
    double membership(double ratio) const;

    friend bool operator==(const triangular_number&, const triangular_number&) = default;

private:
    double lower_;
    double modal_;
    double upper_;
};

/// Ordered mapping from verbal judgment labels to triangular bands.
/// Bands must be listed in nondecreasing order of their modal values.
class linguistic_scale {
public:
    linguistic_scale() = default;

    /// The built-in five-step scale:
    ///   very low (1,2,3), low (2,3,4), medium (3,4,5),
    ///   high (4,5,6), very high (5,6,7).
    static const linguistic_scale& default_scale();

    /// Appends a label. Throws on duplicate labels or decreasing modal order.
    void add(std::string label, triangular_number band);

    std::optional<triangular_number> find(std::string_view label) const;

    const std::vector<std::pair<std::string, triangular_number>>& entries() const noexcept {
        return entries_;
    }

    bool empty() const noexcept { return entries_.empty(); }
    std::size_t size() const noexcept { return entries_.size(); }

    friend bool operator==(const linguistic_scale&, const linguistic_scale&) = default;

private:
    std::vector<std::pair<std::string, triangular_number>> entries_;
};

}  // namespace fpp
