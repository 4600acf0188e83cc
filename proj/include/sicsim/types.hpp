// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sicsim {

using cplx = std::complex<double>;

/// Thrown when a configuration violates a physical or structural constraint
/// (Nyquist, band placement, inconsistent rates, ...).
class config_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an estimation step cannot produce a result (e.g. no
/// correlation peaks above threshold).
class estimation_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown by the LS solver when the data matrix is too ill-conditioned to
/// solve without regularization. Carries the condition estimate.
class conditioning_error : public std::runtime_error {
public:
    conditioning_error(const std::string& msg, double cond)
        : std::runtime_error(msg), condition_estimate(cond) {}
    double condition_estimate;
};

/// Uniformly sampled real-valued passband waveform. The universal carrier of
/// RF and IF signals throughout the pipeline.
struct RealSignal {
    double sample_rate_hz = 0.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return sample_rate_hz > 0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
    }
};

/// Complex baseband representation used between generation and upconversion.
struct ComplexBaseband {
    double sample_rate_hz = 0.0;
    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }
    double duration_s() const {
        return sample_rate_hz > 0 ? static_cast<double>(samples.size()) / sample_rate_hz : 0.0;
    }
};

/// Complex envelope of the optical field relative to the optical carrier.
/// Normalized so the unmodulated laser field has magnitude 1.
struct OpticalEnvelope {
    double sample_rate_hz = 0.0;
    std::vector<cplx> samples;

    std::size_t size() const { return samples.size(); }
};

inline double mean_power(const RealSignal& s) {
    if (s.samples.empty()) return 0.0;
    double acc = 0.0;
    for (double v : s.samples) acc += v * v;
    return acc / static_cast<double>(s.samples.size());
}

inline double mean_power(const ComplexBaseband& s) {
    if (s.samples.empty()) return 0.0;
    double acc = 0.0;
    for (const cplx& v : s.samples) acc += std::norm(v);
    return acc / static_cast<double>(s.samples.size());
}

inline double rms(const RealSignal& s) { return std::sqrt(mean_power(s)); }

inline void check_same_rate(const RealSignal& a, const RealSignal& b, const char* what) {
    if (a.sample_rate_hz != b.sample_rate_hz)
        throw config_error(std::string(what) + ": sample-rate mismatch");
}

inline bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double db_to_linear_field(double db) { return std::pow(10.0, db / 20.0); }
inline double db_to_linear_power(double db) { return std::pow(10.0, db / 10.0); }
inline double power_to_db(double p) { return 10.0 * std::log10(p); }

} // namespace sicsim
