// SPDX-License-Identifier: Apache-2.0
#include "sicsim/ls.hpp"

#include <cmath>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "sicsim/fft.hpp"

namespace sicsim {

Eigen::MatrixXd build_data_matrix(const std::vector<RealSignal>& tx_if, int order,
                                  const DataMatrixSpec& spec) {
    if (tx_if.empty()) throw config_error("build_data_matrix: no transmit records");
    if (order < 0) throw config_error("build_data_matrix: negative order");
    for (const RealSignal& x : tx_if) check_same_rate(tx_if.front(), x, "build_data_matrix");

    const std::size_t taps = static_cast<std::size_t>(order) + 1;
    const std::size_t n = spec.start_index;
    const std::size_t rows = spec.n_samples;
    if (n < taps - 1)
        throw config_error("build_data_matrix: start_index must be >= order");
    for (const RealSignal& x : tx_if)
        if (x.size() < n + rows)
            throw config_error("build_data_matrix: record too short for requested rows");

    Eigen::MatrixXd psi(rows, tx_if.size() * taps);
    for (std::size_t j = 0; j < tx_if.size(); ++j) {
        const std::vector<double>& x = tx_if[j].samples;
        for (std::size_t k = 0; k < taps; ++k) {
            const std::size_t col = j * taps + k;
            for (std::size_t i = 0; i < rows; ++i)
                psi(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(col)) =
                    x[n + i - k];
        }
    }
    return psi;
}

namespace {

LsModel solve_ls(const RealSignal& y, const std::vector<RealSignal>& tx_if, int order,
                 std::size_t n_samples, bool allow_ridge) {
    if (tx_if.empty()) throw config_error("ls_estimate: no transmit records");
    for (const RealSignal& x : tx_if) check_same_rate(y, x, "ls_estimate");

    const std::size_t taps = static_cast<std::size_t>(order) + 1;
    const std::size_t cols = tx_if.size() * taps;
    const std::size_t start = taps - 1;
    std::size_t rows = n_samples;
    if (start + rows > y.size())
        throw config_error("ls_estimate: capture shorter than start + n_samples");
    if (rows <= cols)
        throw config_error("ls_estimate: system not overdetermined (N <= NT*(M+1))");

    const Eigen::MatrixXd psi = build_data_matrix(tx_if, order, DataMatrixSpec{rows, start});
    Eigen::VectorXd yv(rows);
    for (std::size_t i = 0; i < rows; ++i)
        yv(static_cast<Eigen::Index>(i)) = y.samples[start + i];

    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(psi);
    Eigen::VectorXd qty = qr.householderQ().transpose() * yv;
    const Eigen::MatrixXd r = qr.matrixQR()
                                  .topRows(static_cast<Eigen::Index>(cols))
                                  .triangularView<Eigen::Upper>();

    // Condition estimate from the triangular factor (cond(R) = cond(Psi)).
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    const double cond = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();

    Eigen::VectorXd h;
    if (cond <= 1e10) {
        h = r.triangularView<Eigen::Upper>().solve(qty.head(static_cast<Eigen::Index>(cols)));
    } else if (allow_ridge) {
        const double lambda = 1e-8 * r.squaredNorm() / static_cast<double>(cols);
        const Eigen::VectorXd z =
            svd.matrixU().transpose() * qty.head(static_cast<Eigen::Index>(cols));
        Eigen::VectorXd filt(svd.singularValues().size());
        for (Eigen::Index i = 0; i < filt.size(); ++i) {
            const double s = svd.singularValues()(i);
            filt(i) = s / (s * s + lambda) * z(i);
        }
        h = svd.matrixV() * filt;
    } else {
        throw conditioning_error("ls_estimate: data matrix condition " + std::to_string(cond) +
                                     " exceeds 1e10",
                                 cond);
    }

    LsModel model;
    model.nt = static_cast<int>(tx_if.size());
    model.order = order;
    model.capture_rate_hz = y.sample_rate_hz;
    model.coefficients.assign(h.data(), h.data() + h.size());
    return model;
}

} // namespace

LsModel ls_estimate(const RealSignal& y, const std::vector<RealSignal>& tx_if, int order,
                    std::size_t n_samples) {
    return solve_ls(y, tx_if, order, n_samples, true);
}

LsModel ls_estimate_strict(const RealSignal& y, const std::vector<RealSignal>& tx_if,
                           int order, std::size_t n_samples) {
    return solve_ls(y, tx_if, order, n_samples, false);
}

RealSignal construct_reference(const LsModel& model, const std::vector<RealSignal>& tx_if) {
    if (static_cast<int>(tx_if.size()) != model.nt)
        throw config_error("construct_reference: antenna count mismatch");
    const std::size_t taps = static_cast<std::size_t>(model.order) + 1;
    if (model.coefficients.size() != taps * tx_if.size())
        throw config_error("construct_reference: coefficient length mismatch");

    const std::size_t n = tx_if.front().size();
    std::vector<cplx> acc(n / 2 + 1, cplx(0.0, 0.0));
    for (std::size_t j = 0; j < tx_if.size(); ++j) {
        if (tx_if[j].size() != n)
            throw config_error("construct_reference: record length mismatch");
        std::vector<double> fir(n, 0.0);
        for (std::size_t k = 0; k < taps; ++k) fir[k] = model.coefficients[j * taps + k];
        const std::vector<cplx> hf = fft::rforward(fir);
        const std::vector<cplx> xf = fft::rforward(tx_if[j].samples);
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += hf[k] * xf[k];
    }
    return RealSignal{model.capture_rate_hz, fft::rinverse(acc, n)};
}

int default_ls_order(double max_path_delay_s, double capture_rate_hz) {
    return static_cast<int>(std::ceil(max_path_delay_s * capture_rate_hz * 1.25));
}

nlohmann::json ls_model_to_json(const LsModel& model) {
    return nlohmann::json{{"nt", model.nt},
                          {"order", model.order},
                          {"capture_rate_hz", model.capture_rate_hz},
                          {"coefficients", model.coefficients}};
}

LsModel ls_model_from_json(const nlohmann::json& j) {
    LsModel m;
    m.nt = j.at("nt").get<int>();
    m.order = j.at("order").get<int>();
    m.capture_rate_hz = j.at("capture_rate_hz").get<double>();
    m.coefficients = j.at("coefficients").get<std::vector<double>>();
    if (m.coefficients.size() !=
        static_cast<std::size_t>(m.nt) * (static_cast<std::size_t>(m.order) + 1))
        throw config_error("ls_model_from_json: inconsistent coefficient length");
    return m;
}

} // namespace sicsim
