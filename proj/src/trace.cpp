#include "tucker/trace.hpp"

#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace tucker {

namespace {

template <class T>
nlohmann::json opt(const std::optional<T>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::string cell(const std::optional<T>& v) {
    return v ? fmt::format("{}", *v) : std::string{};
}

}  // namespace

nlohmann::json trace_to_json(const SolveTrace& trace, const TraceContext& ctx) {
    const auto& c = trace.config;
    nlohmann::json header = {
        {"algorithm", to_string(c.algorithm)},
        {"max_sweeps", c.max_sweeps},
        {"change_tol", c.change_tol},
        {"gap_tol", c.gap_tol},
        {"mode_order", "ascending"},
        {"init", to_string(c.init)},
        {"seed", c.seed},
        {"trace_level", to_string(c.trace_level)},
        {"shape", ctx.shape},
        {"ranks", trace.ranks},
        {"input_digest", ctx.input_digest},
        {"tensor_norm_sq", trace.tensor_norm_sq},
        {"initial_objective", trace.initial_objective},
        {"stop_reason", to_string(trace.stop_reason)},
    };
    auto sweeps = nlohmann::json::array();
    for (const auto& s : trace.sweeps) {
        auto modes = nlohmann::json::array();
        for (const auto& m : s.modes)
            modes.push_back({{"gap", opt(m.gap)},
                             {"step_norm", m.step_norm},
                             {"objective_gain", m.objective_gain},
                             {"bound_residual", opt(m.bound_residual)},
                             {"degenerate", m.degenerate}});
        sweeps.push_back({{"sweep", s.sweep},
                          {"objective", s.objective},
                          {"rel_change", s.rel_change},
                          {"kkt_aggregate", opt(s.kkt_aggregate)},
                          {"gap_min", opt(s.gap_min())},
                          {"min_mode_gap_index", opt(s.min_mode_gap_index())},
                          {"degenerate_any", s.degenerate_any()},
                          {"wall_ms", ctx.include_timing ? nlohmann::json(s.wall_ms) : nlohmann::json(nullptr)},
                          {"modes", std::move(modes)}});
    }
    return {{"schema", kTraceSchemaVersion}, {"header", std::move(header)}, {"sweeps", std::move(sweeps)}};
}

std::string trace_to_csv(const SolveTrace& trace, const TraceContext& ctx) {
    std::string out = "sweep,objective,rel_change,kkt_aggregate,gap_min,min_mode_gap_index,degenerate_any,wall_ms\n";
    for (const auto& s : trace.sweeps) {
        out += fmt::format("{},{},{},{},{},{},{},{}\n", s.sweep, s.objective, s.rel_change, cell(s.kkt_aggregate),
                           cell(s.gap_min()), cell(s.min_mode_gap_index()), s.degenerate_any() ? 1 : 0,
                           ctx.include_timing ? fmt::format("{}", s.wall_ms) : std::string{});
    }
    return out;
}

void write_trace_file(const SolveTrace& trace, const TraceContext& ctx, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (path.extension() == ".csv") out << trace_to_csv(trace, ctx);
    else out << trace_to_json(trace, ctx).dump(2) << '\n';
}

}  // namespace tucker
