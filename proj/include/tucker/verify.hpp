#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tucker {

/// Outcome of one randomized property campaign. Trial t draws from seed + t.
struct CampaignResult {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    /// Trials whose preconditions did not hold (e.g. a gap too small to test).
    std::size_t skipped = 0;
    /// Largest observed violation of the checked inequality (<= 0 means none).
    double worst_violation = 0.0;
    std::string first_failure;

    [[nodiscard]] bool passed() const { return failures == 0 && trials > skipped; }
};

/// |<X,Y>| <= sum_i sigma_i(X) sigma_i(Y) + 1e-10 on `trials` random pairs, plus
/// equality to 1e-10 on trials/10 pairs sharing singular vectors.
CampaignResult campaign_von_neumann(std::size_t trials, std::uint64_t seed);

/// Step-bound slack >= -1e-10 for X in O(8x3), Y in R^{8x10} with gap > 1e-6.
CampaignResult campaign_key_inequality(std::size_t trials, std::uint64_t seed);

/// greedy_project returns X to 1e-10 when X already spans the dominant subspace.
CampaignResult campaign_fixed_point(std::size_t trials, std::uint64_t seed);

/// HOOI and Greedy-HOOI from a shared HOSVD start keep per-mode projector
/// distance <= 1e-8 at every sweep whose minimal gap exceeds 1e-6.
CampaignResult campaign_sweep_equivalence(std::size_t instances, std::uint64_t seed);

/// All four campaigns, sized from `trials` (fixed point uses trials/5,
/// sweep equivalence trials/50, at least one instance each).
std::vector<CampaignResult> run_verification(std::size_t trials, std::uint64_t seed);

}  // namespace tucker
