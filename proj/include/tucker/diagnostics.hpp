#pragma once

#include <vector>

#include "tucker/model.hpp"

namespace tucker {

/// First-order optimality residuals, per mode, with G_n built from the current factors.
struct KktReport {
    /// ||G_n G_n^T A_n - A_n A_n^T G_n G_n^T A_n||_F
    std::vector<double> gradient;
    /// gradient[n] / (1 + ||G_n G_n^T A_n||_F)
    std::vector<double> gradient_normalized;
    /// ||A_n^T A_n - I||_F
    std::vector<double> feasibility;
    /// Max over modes of gradient and feasibility.
    double aggregate = 0.0;
    /// Max over modes of gradient_normalized and feasibility.
    double aggregate_normalized = 0.0;
};

KktReport kkt_residual(const DenseTensor& x, const FactorSet& a);

struct ProjectorDistance {
    std::vector<double> per_mode;
    double total = 0.0;
};

/// ||A_n A_n^T - B_n B_n^T||_F per mode, evaluated as sqrt(2) * ||A_n - B_n (B_n^T A_n)||_F
/// so that no I_n x I_n projector is formed.
ProjectorDistance projector_distance(const FactorSet& a, const FactorSet& b);

/// sum_n ||P_n^prev - P_n^curr||_F / sum_n ||P_n^prev||_F.
double subspace_rel_change(const FactorSet& prev, const FactorSet& curr);

/// sigma_{r_n}(G_n) - sigma_{r_n + 1}(G_n) per mode, G_n from the current factors.
std::vector<double> nondegeneracy_gaps(const DenseTensor& x, const FactorSet& a);

}  // namespace tucker
