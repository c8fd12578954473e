#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "tucker/diagnostics.hpp"
#include "tucker/model.hpp"

namespace tucker {

enum class Algorithm { hooi, greedy, tuckals3 };
enum class TraceLevel { basic, full };
enum class Initialization { hosvd, random };
enum class StopReason { converged, max_sweeps };

std::string_view to_string(Algorithm a);
std::string_view to_string(TraceLevel t);
std::string_view to_string(Initialization i);
std::string_view to_string(StopReason s);
Algorithm parse_algorithm(std::string_view s);

/// Sweeps always visit modes in ascending order.
struct SolverConfig {
    Algorithm algorithm = Algorithm::hooi;
    std::size_t max_sweeps = 500;
    /// Stop once the subspace relative change of a sweep is at or below this.
    double change_tol = 1e-10;
    /// A mode update is flagged degenerate when its singular-value gap is at or below this.
    double gap_tol = 1e-10;
    Initialization init = Initialization::hosvd;
    /// Seed for Initialization::random.
    std::uint64_t seed = 0;
    /// `full` adds the KKT residual to every sweep and singular-value gaps to TUCKALS3 sweeps.
    TraceLevel trace_level = TraceLevel::full;

    void validate() const;
};

struct ModeRecord {
    /// sigma_{r_n}(G_n^k) - sigma_{r_n+1}(G_n^k); not computed for TUCKALS3 at basic level.
    std::optional<double> gap;
    /// ||A_n^{k+1} - A_n^k||_F
    double step_norm = 0.0;
    /// ||(A_n^{k+1})^T G_n^k||_F^2 - ||(A_n^k)^T G_n^k||_F^2
    double objective_gain = 0.0;
    /// Greedy only: slack of the gap-weighted step bound (see key_inequality_residual).
    std::optional<double> bound_residual;
    bool degenerate = false;
};

struct SweepRecord {
    /// 1-based.
    std::size_t sweep = 0;
    double objective = 0.0;
    std::vector<ModeRecord> modes;
    double rel_change = 0.0;
    /// Normalized aggregate KKT residual after the sweep (full trace level only).
    std::optional<double> kkt_aggregate;
    double wall_ms = 0.0;

    /// Smallest recorded mode gap and its mode, if any gap was computed.
    [[nodiscard]] std::optional<double> gap_min() const;
    [[nodiscard]] std::optional<std::size_t> min_mode_gap_index() const;
    [[nodiscard]] bool degenerate_any() const;
};

struct SolveTrace {
    SolverConfig config;
    Ranks ranks;
    double tensor_norm_sq = 0.0;
    double initial_objective = 0.0;
    std::vector<SweepRecord> sweeps;
    StopReason stop_reason = StopReason::max_sweeps;
};

struct SolveResult {
    TuckerModel model;
    SolveTrace trace;
};

struct SweepResult {
    FactorSet factors;
    std::vector<ModeRecord> modes;
    /// F(A^{k+1}).
    double objective = 0.0;
};

/// Leading left singular vectors of every unfolding of the raw tensor.
FactorSet hosvd_init(const DenseTensor& x, const Ranks& ranks, double gap_tol);

/// Q factors of seeded standard-normal matrices.
FactorSet random_init(const Shape& shape, const Ranks& ranks, std::uint64_t seed);

/// One HOOI sweep: each factor becomes the leading left singular basis of G_n.
SweepResult sweep_hooi(const DenseTensor& x, const FactorSet& a, double gap_tol);

/// One Greedy-HOOI sweep: each factor becomes the maximizer closest to its current value.
SweepResult sweep_greedy(const DenseTensor& x, const FactorSet& a, double gap_tol);

/// One TUCKALS3 sweep: A_n <- orth(G_n G_n^T A_n). Throws RankDeficiency if
/// A_n^T G_n G_n^T A_n is numerically singular.
SweepResult sweep_tuckals3(const DenseTensor& x, const FactorSet& a, double gap_tol, bool compute_gaps = true);

/// Called after each sweep with the record and the new factors.
using SweepObserver = std::function<void(const SweepRecord&, const FactorSet&)>;

SolveResult solve(const DenseTensor& x, const Ranks& ranks, const SolverConfig& config);

/// Runs the configured iteration from `start`, ignoring config.init.
SolveResult solve_from(const DenseTensor& x, FactorSet start, const SolverConfig& config,
                       const SweepObserver& observer = {});

}  // namespace tucker
