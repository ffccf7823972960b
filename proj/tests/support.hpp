#pragma once

#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "fpp/judgments.hpp"

namespace fpptest {

inline std::string data_dir() {
    if (const char* env = std::getenv("FPPRANK_DATA_DIR"); env != nullptr && *env != '\0') {
        return env;
    }
    return "../data";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::vector<std::string> default_ids(std::size_t n) {
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        ids.push_back("I" + std::to_string(k + 1));
    }
    return ids;
}

using band_spec = std::tuple<std::size_t, std::size_t, double, double, double>;

inline fpp::comparison_matrix make_matrix(std::size_t n, const std::vector<band_spec>& bands) {
    std::vector<fpp::judgment_entry> entries;
    entries.reserve(bands.size());
    for (const auto& [i, j, l, m, u] : bands) {
        entries.push_back({i, j, fpp::triangular_number(l, m, u)});
    }
    return fpp::comparison_matrix(default_ids(n), entries);
}

// Weights with well-separated successive ratios, so that every upper-triangle
// modal ratio stays >= 1.3 and a band of half-width 1 remains valid.
inline std::vector<double> random_descending_weights(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> ratio(1.3, 2.2);
    std::vector<double> w(n, 1.0);
    for (std::size_t k = 1; k < n; ++k) {
        w[k] = w[k - 1] / ratio(rng);
    }
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;
    return w;
}

// Modally consistent matrix: bands of width 2 centred on the exact ratios of
// a hidden weight vector, which solve() should recover at lambda = 1.
inline std::pair<fpp::comparison_matrix, std::vector<double>> random_consistent_matrix(
    std::mt19937_64& rng, std::size_t n) {
    const std::vector<double> w = random_descending_weights(rng, n);
    std::vector<fpp::judgment_entry> entries;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = w[i] / w[j];
            entries.push_back({i, j, fpp::triangular_number(m - 1.0, m, m + 1.0)});
        }
    }
    return {fpp::comparison_matrix(default_ids(n), entries), w};
}

// Mixed-consistency matrix: half the draws perturb nothing (consistent case),
// the other half use independent modal ratios, so negative indices occur.
inline fpp::comparison_matrix random_mixed_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> modal(0.3, 6.0);
    std::uniform_real_distribution<double> spread(0.3, 1.0);
    std::vector<fpp::judgment_entry> entries;
    if (coin(rng) < 0.5) {
        std::uniform_real_distribution<double> raw(0.1, 1.0);
        std::vector<double> w(n);
        double sum = 0.0;
        for (double& x : w) sum += (x = raw(rng));
        for (double& x : w) x /= sum;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double m = w[i] / w[j];
                const double d = spread(rng) * std::min(1.0, 0.9 * m);
                entries.push_back({i, j, fpp::triangular_number(m - d, m, m + d)});
            }
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double m = modal(rng);
                const double d = spread(rng) * std::min(1.0, 0.9 * m);
                entries.push_back({i, j, fpp::triangular_number(m - d, m, m + d)});
            }
        }
    }
    return fpp::comparison_matrix(default_ids(n), entries);
}

}  // namespace fpptest
