#include "tucker/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "tucker/subspace.hpp"
#include "tucker/synthetic.hpp"

namespace tucker {

std::string_view to_string(Algorithm a) {
    switch (a) {
        case Algorithm::hooi: return "hooi";
        case Algorithm::greedy: return "greedy";
        case Algorithm::tuckals3: return "tuckals3";
    }
    return "?";
}

std::string_view to_string(TraceLevel t) { return t == TraceLevel::basic ? "basic" : "full"; }

std::string_view to_string(Initialization i) { return i == Initialization::hosvd ? "hosvd" : "random"; }

std::string_view to_string(StopReason s) { return s == StopReason::converged ? "converged" : "max_sweeps"; }

Algorithm parse_algorithm(std::string_view s) {
    if (s == "hooi") return Algorithm::hooi;
    if (s == "greedy") return Algorithm::greedy;
    if (s == "tuckals3") return Algorithm::tuckals3;
    throw std::invalid_argument("unknown algorithm '" + std::string(s) + "'");
}

void SolverConfig::validate() const {
    if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be at least 1");
    if (!(change_tol >= 0.0) || !std::isfinite(change_tol))
        throw std::invalid_argument("change_tol must be finite and >= 0");
    if (!(gap_tol >= 0.0) || !std::isfinite(gap_tol)) throw std::invalid_argument("gap_tol must be finite and >= 0");
}

std::optional<double> SweepRecord::gap_min() const {
    std::optional<double> best;
    for (const auto& m : modes)
        if (m.gap && (!best || *m.gap < *best)) best = m.gap;
    return best;
}

std::optional<std::size_t> SweepRecord::min_mode_gap_index() const {
    std::optional<std::size_t> idx;
    for (std::size_t n = 0; n < modes.size(); ++n)
        if (modes[n].gap && (!idx || *modes[n].gap < *modes[*idx].gap)) idx = n;
    return idx;
}

bool SweepRecord::degenerate_any() const {
    return std::any_of(modes.begin(), modes.end(), [](const ModeRecord& m) { return m.degenerate; });
}

FactorSet hosvd_init(const DenseTensor& x, const Ranks& ranks, double gap_tol) {
    validate_ranks(x.shape(), ranks);
    FactorSet a;
    a.reserve(x.order());
    for (std::size_t n = 0; n < x.order(); ++n) {
        const auto unf = unfold(x, n);
        if (ranks[n] > static_cast<std::size_t>(std::min(unf.rows(), unf.cols())))
            throw std::out_of_range("hosvd_init: rank of mode " + std::to_string(n) + " exceeds unfolding rank bound");
        a.push_back(leading_left_subspace(unf, ranks[n], gap_tol).basis);
    }
    return a;
}

FactorSet random_init(const Shape& shape, const Ranks& ranks, std::uint64_t seed) {
    validate_ranks(shape, ranks);
    std::mt19937_64 rng(seed);
    FactorSet a;
    for (std::size_t n = 0; n < shape.size(); ++n) a.push_back(random_orthonormal(rng, shape[n], ranks[n]));
    return a;
}

namespace {

// Common sweep skeleton. `update` maps (G_n, current A_n, record) to the new A_n.
template <class Update>
SweepResult run_sweep(const DenseTensor& x, const FactorSet& a, Update&& update) {
    validate_factors(x, a);
    SweepResult out{a, {}, 0.0};
    for (std::size_t n = 0; n < x.order(); ++n) {
        const Matrix g = compute_gn(x, out.factors, n);
        const OrthonormalFactor& old = out.factors[n];
        ModeRecord rec;
        OrthonormalFactor next = update(g, old, rec);
        const double old_value = (old.value().transpose() * g).squaredNorm();
        const double new_value = (next.value().transpose() * g).squaredNorm();
        rec.step_norm = (next.value() - old.value()).norm();
        rec.objective_gain = new_value - old_value;
        out.modes.push_back(rec);
        out.factors[n] = std::move(next);
        // After the last mode every factor is new, so this is F(A^{k+1}).
        if (n + 1 == x.order()) out.objective = new_value;
    }
    return out;
}

}  // namespace

SweepResult sweep_hooi(const DenseTensor& x, const FactorSet& a, double gap_tol) {
    return run_sweep(x, a, [&](const Matrix& g, const OrthonormalFactor& old, ModeRecord& rec) {
        auto sub = leading_left_subspace(g, static_cast<std::size_t>(old.rank()), gap_tol);
        rec.gap = sub.gap;
        rec.degenerate = sub.degenerate;
        return std::move(sub.basis);
    });
}

SweepResult sweep_greedy(const DenseTensor& x, const FactorSet& a, double gap_tol) {
    return run_sweep(x, a, [&](const Matrix& g, const OrthonormalFactor& old, ModeRecord& rec) {
        auto res = greedy_project(g, static_cast<std::size_t>(old.rank()), old, gap_tol);
        rec.gap = res.gap;
        rec.degenerate = res.gap <= gap_tol;
        // res.z attains res.optimal_value, so this is key_inequality_residual(old, g, z)
        // without recomputing the singular values of g.
        const double gain = res.optimal_value - (old.value().transpose() * g).squaredNorm();
        const double dist_sq = (res.z.value() - old.value()).squaredNorm();
        rec.bound_residual = gain - 0.5 * res.gap_sq_diff * dist_sq;
        return std::move(res.z);
    });
}

SweepResult sweep_tuckals3(const DenseTensor& x, const FactorSet& a, double gap_tol, bool compute_gaps) {
    return run_sweep(x, a, [&](const Matrix& g, const OrthonormalFactor& old, ModeRecord& rec) {
        if (compute_gaps) {
            const auto sigma = singular_values(g);
            const auto r = old.rank();
            const double next = r < sigma.size() ? sigma(r) : 0.0;
            rec.gap = sigma(r - 1) - next;
            rec.degenerate = *rec.gap <= gap_tol;
        }
        // The step assumes A^T G G^T A is positive definite. Test that against
        // ||G||_F^2 so a uniformly tiny G G^T A is not mistaken for full rank.
        const Matrix c = g.transpose() * old.value();
        const double lambda_min = std::pow(singular_values(c).minCoeff(), 2);
        if (!(lambda_min > KernelConfig::rank_tol * g.squaredNorm()))
            throw RankDeficiency("tuckals3: A^T G G^T A is not positive definite (smallest eigenvalue " +
                                 std::to_string(lambda_min) + ")");
        return qr_orthonormalize(g * c);
    });
}

SolveResult solve(const DenseTensor& x, const Ranks& ranks, const SolverConfig& config) {
    config.validate();
    validate_ranks(x.shape(), ranks);
    FactorSet start = config.init == Initialization::hosvd ? hosvd_init(x, ranks, config.gap_tol)
                                                           : random_init(x.shape(), ranks, config.seed);
    return solve_from(x, std::move(start), config);
}

SolveResult solve_from(const DenseTensor& x, FactorSet start, const SolverConfig& config,
                       const SweepObserver& observer) {
    config.validate();
    validate_factors(x, start);
    const auto ranks = ranks_of(start);
    validate_ranks(x.shape(), ranks);

    SolveTrace trace;
    trace.config = config;
    trace.ranks = ranks;
    trace.tensor_norm_sq = inner(x, x);
    trace.initial_objective = objective(x, start);

    FactorSet current = std::move(start);
    for (std::size_t k = 1; k <= config.max_sweeps; ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        SweepResult step;
        switch (config.algorithm) {
            case Algorithm::hooi: step = sweep_hooi(x, current, config.gap_tol); break;
            case Algorithm::greedy: step = sweep_greedy(x, current, config.gap_tol); break;
            case Algorithm::tuckals3:
                step = sweep_tuckals3(x, current, config.gap_tol, config.trace_level == TraceLevel::full);
                break;
        }
        SweepRecord rec;
        rec.sweep = k;
        rec.objective = step.objective;
        rec.modes = std::move(step.modes);
        rec.rel_change = subspace_rel_change(current, step.factors);
        if (config.trace_level == TraceLevel::full)
            rec.kkt_aggregate = kkt_residual(x, step.factors).aggregate_normalized;
        rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

        current = std::move(step.factors);
        if (observer) observer(rec, current);
        const bool converged = rec.rel_change <= config.change_tol;
        trace.sweeps.push_back(std::move(rec));
        if (converged) {
            trace.stop_reason = StopReason::converged;
            break;
        }
        trace.stop_reason = StopReason::max_sweeps;
    }

    TuckerModel model{project_core(x, current), std::move(current)};
    return {std::move(model), std::move(trace)};
}

}  // namespace tucker
