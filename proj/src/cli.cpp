#include "tucker/cli.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "tucker/compare.hpp"
#include "tucker/io.hpp"
#include "tucker/solvers.hpp"
#include "tucker/synthetic.hpp"
#include "tucker/trace.hpp"
#include "tucker/verify.hpp"

namespace tucker {

namespace {

using nlohmann::json;

// Thresholds of the sweep-equivalence check reported by `compare`.
constexpr double kEquivalenceTol = 1e-8;
constexpr double kEligibleGap = 1e-6;

struct Failure {
    json report;
};

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << text;
}

json campaign_json(const CampaignResult& c) {
    return {{"name", c.name},
            {"passed", c.passed()},
            {"trials", c.trials},
            {"failures", c.failures},
            {"skipped", c.skipped},
            {"worst_violation", c.worst_violation},
            {"first_failure", c.first_failure}};
}

struct GenArgs {
    std::vector<std::size_t> shape, ranks;
    double noise = 0.0;
    std::uint64_t seed = 0;
    std::string out;
    std::string signal;
};

json run_gen(const GenArgs& a) {
    const auto syn = gen_synthetic(a.shape, a.ranks, a.noise, a.seed);
    write_tensor_file(syn.data, a.out);
    if (!a.signal.empty()) write_tensor_file(syn.signal, a.signal);
    return {{"command", "gen"}, {"out", a.out}, {"shape", a.shape}, {"digest", tensor_digest(syn.data)}};
}

struct HosvdArgs {
    std::string tensor;
    std::vector<std::size_t> ranks;
    double gap_tol = 1e-10;
    std::string out;
};

json run_hosvd(const HosvdArgs& a) {
    const auto x = read_tensor_file(a.tensor);
    auto factors = hosvd_init(x, a.ranks, a.gap_tol);
    TuckerModel model{project_core(x, factors), std::move(factors)};
    write_model(model, a.out);
    return {{"command", "hosvd"},
            {"prefix", a.out},
            {"objective", inner(model.core, model.core)},
            {"tensor_norm_sq", inner(x, x)}};
}

struct SolveArgs {
    std::string tensor;
    std::vector<std::size_t> ranks;
    SolverConfig config;
    std::string algorithm = "hooi";
    std::string init = "hosvd";
    std::string trace_level = "full";
    std::string trace;
    std::string model;
    bool timing = false;
};

json run_solve(SolveArgs a) {
    a.config.algorithm = parse_algorithm(a.algorithm);
    a.config.init = a.init == "random" ? Initialization::random : Initialization::hosvd;
    a.config.trace_level = a.trace_level == "basic" ? TraceLevel::basic : TraceLevel::full;
    const auto x = read_tensor_file(a.tensor);
    const auto res = solve(x, a.ranks, a.config);
    if (!a.trace.empty()) write_trace_file(res.trace, {x.shape(), tensor_digest(x), a.timing}, a.trace);
    if (!a.model.empty()) write_model(res.model, a.model);
    DenseTensor diff = reconstruct(res.model);
    auto d = diff.data();
    const auto in = x.data();
    for (std::size_t i = 0; i < d.size(); ++i) d[i] -= in[i];
    const double xnorm = fro_norm(x);
    const double resid = xnorm > 0.0 ? fro_norm(diff) / xnorm : 0.0;
    return {{"command", "solve"},
            {"algorithm", a.algorithm},
            {"sweeps", res.trace.sweeps.size()},
            {"stop_reason", to_string(res.trace.stop_reason)},
            {"objective", res.trace.sweeps.back().objective},
            {"relative_residual", resid}};
}

struct CompareArgs {
    std::string tensor;
    std::vector<std::size_t> ranks;
    CompareConfig config;
    std::string out;
};

json run_compare(const CompareArgs& a, std::ostream& out) {
    const auto x = read_tensor_file(a.tensor);
    const auto res = compare_algorithms(x, a.ranks, a.config);
    const auto csv = compare_to_csv(res);
    if (a.out.empty()) out << csv;
    else write_text_file(a.out, csv);

    double worst = 0.0;
    std::size_t eligible = 0;
    std::optional<std::size_t> first_bad;
    for (const auto& r : res.rows) {
        if (!r.hooi_greedy_distance || !r.gap_min || !(*r.gap_min > kEligibleGap)) continue;
        ++eligible;
        worst = std::max(worst, *r.hooi_greedy_distance);
        if (*r.hooi_greedy_distance > kEquivalenceTol && !first_bad) first_bad = r.sweep;
    }
    json report = {{"command", "compare"},
                   {"sweeps", res.rows.size()},
                   {"eligible_sweeps", eligible},
                   {"max_hooi_greedy_distance", worst},
                   {"equivalence_tol", kEquivalenceTol}};
    if (first_bad) {
        report["first_violation_sweep"] = *first_bad;
        throw Failure{report};
    }
    return report;
}

json run_verify(std::size_t trials, std::uint64_t seed) {
    const auto results = run_verification(trials, seed);
    json campaigns = json::array();
    bool ok = true;
    for (const auto& c : results) {
        campaigns.push_back(campaign_json(c));
        ok = ok && c.passed();
    }
    json report = {{"command", "verify"}, {"trials", trials}, {"seed", seed}, {"campaigns", campaigns}};
    if (!ok) throw Failure{report};
    return report;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tucker approximation by HOOI, Greedy-HOOI and TUCKALS3", "tucker"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a seeded synthetic Tucker tensor");
    gen_cmd->add_option("--shape", gen.shape, "Dimensions, comma separated")->required()->delimiter(',');
    gen_cmd->add_option("--ranks", gen.ranks, "Core dimensions, comma separated")->required()->delimiter(',');
    gen_cmd->add_option("--noise", gen.noise, "Noise norm relative to the signal norm");
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--out", gen.out, "Output tensor file")->required();
    gen_cmd->add_option("--signal-out", gen.signal, "Also write the noiseless signal here");

    HosvdArgs hosvd;
    auto* hosvd_cmd = app.add_subcommand("hosvd", "Truncated HOSVD factors and core");
    hosvd_cmd->add_option("tensor", hosvd.tensor, "Input tensor file")->required();
    hosvd_cmd->add_option("--ranks", hosvd.ranks, "Target ranks")->required()->delimiter(',');
    hosvd_cmd->add_option("--gap-tol", hosvd.gap_tol, "Gap below which a mode is flagged degenerate");
    hosvd_cmd->add_option("--out", hosvd.out, "Output prefix for core and factor files")->required();

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Run one iterative solver");
    solve_cmd->add_option("tensor", solve.tensor, "Input tensor file")->required();
    solve_cmd->add_option("--ranks", solve.ranks, "Target ranks")->required()->delimiter(',');
    solve_cmd->add_option("--algorithm", solve.algorithm)->check(CLI::IsMember({"hooi", "greedy", "tuckals3"}));
    solve_cmd->add_option("--max-sweeps", solve.config.max_sweeps)->check(CLI::PositiveNumber);
    solve_cmd->add_option("--change-tol", solve.config.change_tol)->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--gap-tol", solve.config.gap_tol)->check(CLI::NonNegativeNumber);
    solve_cmd->add_option("--init", solve.init)->check(CLI::IsMember({"hosvd", "random"}));
    solve_cmd->add_option("--seed", solve.config.seed, "Seed for --init random");
    solve_cmd->add_option("--trace-level", solve.trace_level)->check(CLI::IsMember({"basic", "full"}));
    solve_cmd->add_option("--trace", solve.trace, "Trace output (.csv for a table, JSON otherwise)");
    solve_cmd->add_option("--model", solve.model, "Output prefix for core and factor files");
    solve_cmd->add_flag("--timing", solve.timing, "Record wall times in the trace");

    std::size_t trials = 1000;
    std::uint64_t verify_seed = 1;
    auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property campaigns");
    verify_cmd->add_option("--trials", trials)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", verify_seed);

    CompareArgs cmp;
    auto* compare_cmd = app.add_subcommand("compare", "Run all three solvers from one HOSVD start");
    compare_cmd->add_option("tensor", cmp.tensor, "Input tensor file")->required();
    compare_cmd->add_option("--ranks", cmp.ranks, "Target ranks")->required()->delimiter(',');
    compare_cmd->add_option("--max-sweeps", cmp.config.max_sweeps)->check(CLI::PositiveNumber);
    compare_cmd->add_option("--change-tol", cmp.config.change_tol)->check(CLI::NonNegativeNumber);
    compare_cmd->add_option("--gap-tol", cmp.config.gap_tol)->check(CLI::NonNegativeNumber);
    compare_cmd->add_option("--out", cmp.out, "Joint trace CSV (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help is a successful parse that still prints usage.
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return 0;
        }
        err << e.what() << "\n\n" << app.help();
        return 2;
    }

    std::string command = app.get_subcommands().front()->get_name();
    try {
        json report;
        if (*gen_cmd) report = run_gen(gen);
        else if (*hosvd_cmd) report = run_hosvd(hosvd);
        else if (*solve_cmd) report = run_solve(solve);
        else if (*verify_cmd) report = run_verify(trials, verify_seed);
        else report = run_compare(cmp, out);
        report["status"] = "ok";
        // compare prints its table on stdout unless --out is given.
        if (*compare_cmd && cmp.out.empty()) err << report.dump() << '\n';
        else out << report.dump(2) << '\n';
        return 0;
    } catch (Failure& f) {
        f.report["status"] = "failed";
        err << f.report.dump(2) << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << json{{"status", "error"}, {"command", command}, {"error", e.what()}}.dump(2) << '\n';
        return 1;
    }
}

}  // namespace tucker
