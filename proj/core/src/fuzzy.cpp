#include "fpp/fuzzy.hpp"

#include <cmath>

namespace fpp {

triangular_number::triangular_number(double lower, double modal, double upper)
    : lower_(lower), modal_(modal), upper_(upper) {
    if (!std::isfinite(lower) || !std::isfinite(modal) || !std::isfinite(upper)) {
        throw error(errc::invalid_argument, "fuzzy bounds must be finite");
    }
    if (lower <= 0.0) {
        throw error(errc::non_positive, "lower bound must be > 0, got " + std::to_string(lower));
    }
    if (!(lower < modal && modal < upper)) {
        throw error(errc::order_violation,
                    "bounds must satisfy l < m < u, got (" + std::to_string(lower) + ", " +
                        std::to_string(modal) + ", " + std::to_string(upper) + ")");
    }
}

triangular_number triangular_number::reciprocal() const {
    return triangular_number(1.0 / upper_, 1.0 / modal_, 1.0 / lower_);
}

double triangular_number::membership(double ratio) const {
    if (!(ratio > 0.0)) {
        throw error(errc::non_positive, "ratio must be > 0");
    }
    if (ratio <= modal_) {
        return (ratio - lower_) / (modal_ - lower_);
    }
    return (upper_ - ratio) / (upper_ - modal_);
}

const linguistic_scale& linguistic_scale::default_scale() {
    static const linguistic_scale scale = [] {
        linguistic_scale s;
        s.add("very low", triangular_number(1, 2, 3));
        s.add("low", triangular_number(2, 3, 4));
        s.add("medium", triangular_number(3, 4, 5));
        s.add("high", triangular_number(4, 5, 6));
        s.add("very high", triangular_number(5, 6, 7));
        return s;
    }();
    return scale;
}

void linguistic_scale::add(std::string label, triangular_number band) {
    if (find(label)) {
        throw error(errc::duplicate_pair, "label already registered: " + label);
    }
    if (!entries_.empty() && band.modal() < entries_.back().second.modal()) {
        throw error(errc::order_violation,
                    "scale bands must be added in nondecreasing modal order (" + label + ")");
    }
    entries_.emplace_back(std::move(label), band);
}

std::optional<triangular_number> linguistic_scale::find(std::string_view label) const {
    for (const auto& [name, band] : entries_) {
        if (name == label) {
            return band;
        }
    }
    return std::nullopt;
}

}  // namespace fpp
