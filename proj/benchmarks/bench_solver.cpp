#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fpp/report.hpp"
#include "fpp/solver.hpp"
#include "fpp/study.hpp"

namespace {

std::vector<std::string> ids(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < n; ++k) out.push_back("I" + std::to_string(k + 1));
    return out;
}

fpp::comparison_matrix consistent_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> ratio(1.3, 2.2);
    std::vector<double> w(n, 1.0);
    for (std::size_t k = 1; k < n; ++k) w[k] = w[k - 1] / ratio(rng);
    std::vector<fpp::judgment_entry> entries;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = w[i] / w[j];
            entries.push_back({i, j, fpp::triangular_number(m - 1.0, m, m + 1.0)});
        }
    }
    return fpp::comparison_matrix(ids(n), entries);
}

fpp::comparison_matrix inconsistent_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> modal(0.3, 6.0);
    std::uniform_real_distribution<double> spread(0.3, 1.0);
    std::vector<fpp::judgment_entry> entries;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double m = modal(rng);
            const double d = spread(rng) * std::min(1.0, 0.9 * m);
            entries.push_back({i, j, fpp::triangular_number(m - d, m, m + d)});
        }
    }
    return fpp::comparison_matrix(ids(n), entries);
}

void BM_SolveConsistent(benchmark::State& state) {
    std::mt19937_64 rng(1);
    const fpp::comparison_matrix matrix =
        consistent_matrix(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpp::solve(matrix));
    }
}
BENCHMARK(BM_SolveConsistent)->Arg(3)->Arg(5)->Arg(8);

void BM_SolveInconsistent(benchmark::State& state) {
    std::mt19937_64 rng(2);
    const fpp::comparison_matrix matrix =
        inconsistent_matrix(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpp::solve(matrix));
    }
}
BENCHMARK(BM_SolveInconsistent)->Arg(3)->Arg(5)->Arg(8);

void BM_FeasibilityProbe(benchmark::State& state) {
    std::mt19937_64 rng(3);
    const fpp::comparison_matrix matrix =
        inconsistent_matrix(rng, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpp::feasible_at(matrix, 0.0));
    }
}
BENCHMARK(BM_FeasibilityProbe)->Arg(3)->Arg(8);

void BM_OracleLambda(benchmark::State& state) {
    std::mt19937_64 rng(4);
    const fpp::comparison_matrix matrix = inconsistent_matrix(rng, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpp::oracle_lambda(matrix, static_cast<int>(state.range(0))));
    }
}
BENCHMARK(BM_OracleLambda)->Arg(200)->Arg(500);

void BM_AggregateExperts(benchmark::State& state) {
    std::mt19937_64 rng(5);
    std::vector<fpp::comparison_matrix> experts;
    for (int e = 0; e < 10; ++e) {
        experts.push_back(inconsistent_matrix(rng, 5));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(fpp::aggregate_experts(experts));
    }
}
BENCHMARK(BM_AggregateExperts);

void BM_StudyEndToEnd(benchmark::State& state) {
    // Two-level study: four groups of four criteria under one root matrix.
    fpp::study_file study;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> modal(1.2, 5.0);
    const auto record = [&](const std::string& i, const std::string& j) {
        fpp::judgment_record r;
        r.i = i;
        r.j = j;
        r.payload = fpp::judgment_record::kind::crisp;
        r.crisp = modal(rng);
        return r;
    };
    std::vector<std::string> groups;
    for (int g = 0; g < 4; ++g) {
        fpp::criterion_node group{"G" + std::to_string(g), "group", {}};
        for (int c = 0; c < 4; ++c) {
            const std::string id = group.id + "x" + std::to_string(c);
            group.children.push_back({id, id, {}});
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = a + 1; b < 4; ++b) {
                study.matrices[group.id].push_back(
                    record(group.children[a].id, group.children[b].id));
            }
        }
        groups.push_back(group.id);
        study.hierarchy.push_back(std::move(group));
    }
    for (std::size_t a = 0; a < groups.size(); ++a) {
        for (std::size_t b = a + 1; b < groups.size(); ++b) {
            study.matrices["root"].push_back(record(groups[a], groups[b]));
        }
    }

    for (auto _ : state) {
        benchmark::DoNotOptimize(fpp::run_solve(study));
    }
}
BENCHMARK(BM_StudyEndToEnd);

}  // namespace

BENCHMARK_MAIN();
