#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tucker/solvers.hpp"

namespace tucker {

struct CompareConfig {
    std::size_t max_sweeps = 30;
    /// 0 runs every algorithm for exactly max_sweeps sweeps.
    double change_tol = 0.0;
    double gap_tol = 1e-10;
};

struct CompareRow {
    std::size_t sweep = 0;
    /// Indexed hooi, greedy, tuckals3. Empty once that run has stopped.
    std::optional<double> objective[3];
    std::optional<double> rel_change[3];
    /// Max over modes of ||P_n^hooi - P_n^greedy||_F.
    std::optional<double> hooi_greedy_distance;
    /// Smallest per-mode gap seen by hooi or greedy in this sweep.
    std::optional<double> gap_min;
};

struct CompareResult {
    FactorSet start;
    std::vector<CompareRow> rows;
    SolveTrace traces[3];
};

/// Runs hooi, greedy and tuckals3 from the same truncated-HOSVD factors.
CompareResult compare_algorithms(const DenseTensor& x, const Ranks& ranks, const CompareConfig& config);

/// Columns: sweep, objective_{hooi,greedy,tuckals3}, rel_change_{hooi,greedy,tuckals3},
/// hooi_greedy_distance, gap_min.
std::string compare_to_csv(const CompareResult& result);

}  // namespace tucker
