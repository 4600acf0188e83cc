// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <nlohmann/json_fwd.hpp>

#include "sicsim/types.hpp"

namespace sicsim {

/// Estimated multi-antenna FIR model of the SI channel at the capture rate.
/// Coefficients are antenna-major: antenna j, tap k at index j*(order+1)+k.
struct LsModel {
    int nt = 0;
    int order = 0;
    double capture_rate_hz = 0.0;
    std::vector<double> coefficients;
};

struct DataMatrixSpec {
    std::size_t n_samples = 0;  // N rows
    std::size_t start_index = 0; // n; records must cover [n - order, n + N - 1]
};

/// Horizontal concatenation of per-antenna Toeplitz blocks:
/// row i, column k of block j is x_j(n + i - k), k = 0..order.
Eigen::MatrixXd build_data_matrix(const std::vector<RealSignal>& tx_if, int order,
                                  const DataMatrixSpec& spec);

/// Least-squares fit of the captured IF frame against the transmitted IF
/// records, solved by Householder QR. When the condition estimate exceeds
/// 1e10 a ridge term lambda = 1e-8 * trace(G)/cols is engaged through the
/// SVD of the triangular factor.
LsModel ls_estimate(const RealSignal& y, const std::vector<RealSignal>& tx_if, int order,
                    std::size_t n_samples);

/// Variant that throws conditioning_error instead of regularizing.
LsModel ls_estimate_strict(const RealSignal& y, const std::vector<RealSignal>& tx_if,
                           int order, std::size_t n_samples);

/// Render the composite reference over the full record duration:
/// r(t) = sum_j sum_k h[j,k] x_j(t - k). Circular over the frame (the
/// frame guards keep the wrap silent).
RealSignal construct_reference(const LsModel& model, const std::vector<RealSignal>& tx_if);

/// Default tap count: cover `max_path_delay_s` at the capture rate plus 25%.
int default_ls_order(double max_path_delay_s, double capture_rate_hz);

nlohmann::json ls_model_to_json(const LsModel& model);
LsModel ls_model_from_json(const nlohmann::json& j);

} // namespace sicsim
