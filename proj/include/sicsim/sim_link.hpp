// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "sicsim/channel.hpp"
#include "sicsim/delay_search.hpp"
#include "sicsim/photonic.hpp"
#include "sicsim/types.hpp"

namespace sicsim {

/// Everything between the DACs and the oscilloscope: modulator, optional
/// fiber remoting, photodetector, IF extraction and (optional) receiver
/// noise.
struct LinkConfig {
    ModulatorConfig modulator;
    PdConfig pd;
    double lo_freq_hz = 8e9;
    double lo_amplitude_v = 1.0;
    double fiber_length_km = 0.0;
    double fiber_atten_db_per_km = 0.1825;
    double fiber_delay_per_km_s = 4.9e-6;
    double snr_db = std::numeric_limits<double>::infinity();
    std::uint64_t noise_seed = 1;
};

/// Simulation-backed capture chain. The transmit waveforms pass through the
/// SI channel once at construction; each submit() drives the reference arm
/// with the supplied frame and returns the captured IF frame. The capture
/// trigger re-aligns the known fiber bulk delay.
class SimulatedLink : public ResidualEvaluator {
public:
    SimulatedLink(std::vector<RealSignal> tx_dac, const PathSet& paths, LinkConfig cfg,
                  std::optional<RealSignal> soi_rf = std::nullopt, double sir_db = 0.0);

    /// ResidualEvaluator seam: capture with the SOI in its configured state.
    RealSignal submit(const RealSignal& reference_frame) override;

    /// Simulation-privilege captures.
    RealSignal capture(const RealSignal& reference_frame, bool mute_soi);
    RealSignal capture_baseline(bool mute_soi); // reference muted
    RealSignal capture_reference_only(const RealSignal& reference_frame); // SI+SOI muted

    const RealSignal& received_si() const { return received_si_only_; }
    const LinkConfig& config() const { return cfg_; }
    double generation_rate_hz() const { return rate_; }
    std::size_t frame_samples() const { return n_; }
    std::size_t capture_count() const { return captures_; }

private:
    RealSignal run_chain(const std::vector<cplx>& received_arm, const RealSignal& reference);

    LinkConfig cfg_;
    double rate_ = 0.0;
    std::size_t n_ = 0;
    RealSignal received_si_only_;
    RealSignal received_with_soi_;
    std::vector<cplx> arm_si_only_;   // 1/2 exp(j pi V_rx / Vpi), SOI muted
    std::vector<cplx> arm_with_soi_;  // same with SOI present
    std::vector<cplx> lower_child_;   // 1/2 of the LO DD-MZM output
    std::vector<cplx> if_response_;   // zero-phase band-pass response, half spectrum
    std::size_t capture_n_ = 0;
    bool has_soi_ = false;
    std::size_t captures_ = 0;
};

} // namespace sicsim
