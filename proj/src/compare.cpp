#include "tucker/compare.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tucker/diagnostics.hpp"

namespace tucker {

namespace {

constexpr Algorithm kOrder[3] = {Algorithm::hooi, Algorithm::greedy, Algorithm::tuckals3};

template <class T>
std::string cell(const std::optional<T>& v) {
    return v ? fmt::format("{}", *v) : std::string{};
}

}  // namespace

CompareResult compare_algorithms(const DenseTensor& x, const Ranks& ranks, const CompareConfig& config) {
    CompareResult out;
    out.start = hosvd_init(x, ranks, config.gap_tol);

    std::vector<FactorSet> history[2];
    for (int i = 0; i < 3; ++i) {
        SolverConfig sc;
        sc.algorithm = kOrder[i];
        sc.max_sweeps = config.max_sweeps;
        sc.change_tol = config.change_tol;
        sc.gap_tol = config.gap_tol;
        sc.trace_level = TraceLevel::basic;
        SweepObserver observer;
        if (i < 2) observer = [&h = history[i]](const SweepRecord&, const FactorSet& a) { h.push_back(a); };
        out.traces[i] = solve_from(x, out.start, sc, observer).trace;
    }

    std::size_t longest = 0;
    for (const auto& t : out.traces) longest = std::max(longest, t.sweeps.size());
    for (std::size_t k = 0; k < longest; ++k) {
        CompareRow row;
        row.sweep = k + 1;
        for (int i = 0; i < 3; ++i) {
            if (k >= out.traces[i].sweeps.size()) continue;
            const auto& rec = out.traces[i].sweeps[k];
            row.objective[i] = rec.objective;
            row.rel_change[i] = rec.rel_change;
            if (i < 2) {
                if (const auto g = rec.gap_min(); g && (!row.gap_min || *g < *row.gap_min)) row.gap_min = g;
            }
        }
        if (k < history[0].size() && k < history[1].size()) {
            const auto d = projector_distance(history[0][k], history[1][k]);
            row.hooi_greedy_distance = *std::max_element(d.per_mode.begin(), d.per_mode.end());
        }
        out.rows.push_back(row);
    }
    return out;
}

std::string compare_to_csv(const CompareResult& result) {
    std::string out =
        "sweep,objective_hooi,objective_greedy,objective_tuckals3,rel_change_hooi,rel_change_greedy,"
        "rel_change_tuckals3,hooi_greedy_distance,gap_min\n";
    for (const auto& r : result.rows)
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", r.sweep, cell(r.objective[0]), cell(r.objective[1]),
                           cell(r.objective[2]), cell(r.rel_change[0]), cell(r.rel_change[1]), cell(r.rel_change[2]),
                           cell(r.hooi_greedy_distance), cell(r.gap_min));
    return out;
}

}  // namespace tucker
