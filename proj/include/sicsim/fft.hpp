// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <vector>

#include "sicsim/types.hpp"

namespace sicsim::fft {

/// Forward complex DFT (no normalization).
std::vector<cplx> forward(const std::vector<cplx>& in);

/// Inverse complex DFT, normalized by 1/N.
std::vector<cplx> inverse(const std::vector<cplx>& in);

/// Real-to-complex DFT: returns n/2+1 bins (Hermitian half).
std::vector<cplx> rforward(const std::vector<double>& in);

/// Complex-to-real inverse DFT from the Hermitian half spectrum,
/// normalized by 1/n. `n` is the output length.
std::vector<double> rinverse(const std::vector<cplx>& half, std::size_t n);

} // namespace sicsim::fft
