#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "tucker/solvers.hpp"

namespace tucker {

inline constexpr int kTraceSchemaVersion = 1;

struct TraceContext {
    Shape shape;
    std::string input_digest;
    /// Wall times vary between runs; they are written as null unless requested.
    bool include_timing = false;
};

/// Structured trace: a "schema" field, a "header" echoing the solver config
/// and input digest, and one "sweeps" entry per sweep.
nlohmann::json trace_to_json(const SolveTrace& trace, const TraceContext& ctx);

/// Columns: sweep, objective, rel_change, kkt_aggregate, gap_min,
/// min_mode_gap_index, degenerate_any, wall_ms. Missing values are empty cells.
std::string trace_to_csv(const SolveTrace& trace, const TraceContext& ctx);

/// Writes CSV when the extension is .csv, JSON otherwise.
void write_trace_file(const SolveTrace& trace, const TraceContext& ctx, const std::filesystem::path& path);

}  // namespace tucker
