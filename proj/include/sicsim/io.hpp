// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "sicsim/metrics.hpp"
#include "sicsim/types.hpp"

namespace sicsim {

/// Flat binary waveform format, little-endian:
///   8-byte float64 sample rate, 8-byte uint64 count, then count float64s.
void write_waveform(const std::string& path, const RealSignal& sig);
RealSignal read_waveform(const std::string& path);

/// CSV with a "time_s,amplitude" header.
void write_waveform_csv(const std::string& path, const RealSignal& sig);

/// CSV with a "freq_hz,psd_db" header.
void write_psd_csv(const std::string& path, const std::vector<PsdPoint>& psd);

/// CSV with a "symbol_i,symbol_q" header.
void write_constellation_csv(const std::string& path, const std::vector<cplx>& symbols);

/// Generic CSV: header line plus rows of doubles.
void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::vector<double>>& rows);

} // namespace sicsim
