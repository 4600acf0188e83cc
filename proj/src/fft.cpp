// SPDX-License-Identifier: Apache-2.0
#include "sicsim/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace sicsim::fft {
namespace {

// FFTW plan creation is not thread-safe; execution with explicit arrays is.
// Plans are cached per (kind, size) and reused with fftw_execute_dft-style
// new-array execution. FFTW_ESTIMATE keeps planning deterministic and cheap.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

enum class Kind { c2c_fwd, c2c_bwd, r2c, c2r };

fftw_plan get_plan(Kind kind, std::size_t n, void* in, void* out) {
    static std::map<std::pair<int, std::size_t>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(planner_mutex());
    auto key = std::make_pair(static_cast<int>(kind), n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    // Plan on the caller's buffers with FFTW_ESTIMATE | FFTW_UNALIGNED so the
    // plan stays valid for any future array of the same size.
    fftw_plan p = nullptr;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    switch (kind) {
    case Kind::c2c_fwd:
        p = fftw_plan_dft_1d(static_cast<int>(n), static_cast<fftw_complex*>(in),
                             static_cast<fftw_complex*>(out), FFTW_FORWARD, flags);
        break;
    case Kind::c2c_bwd:
        p = fftw_plan_dft_1d(static_cast<int>(n), static_cast<fftw_complex*>(in),
                             static_cast<fftw_complex*>(out), FFTW_BACKWARD, flags);
        break;
    case Kind::r2c:
        p = fftw_plan_dft_r2c_1d(static_cast<int>(n), static_cast<double*>(in),
                                 static_cast<fftw_complex*>(out), flags);
        break;
    case Kind::c2r:
        p = fftw_plan_dft_c2r_1d(static_cast<int>(n), static_cast<fftw_complex*>(in),
                                 static_cast<double*>(out), flags);
        break;
    }
    cache.emplace(key, p);
    return p;
}

} // namespace

std::vector<cplx> forward(const std::vector<cplx>& in) {
    const std::size_t n = in.size();
    std::vector<cplx> work(in);
    std::vector<cplx> out(n);
    fftw_plan p = get_plan(Kind::c2c_fwd, n, work.data(), out.data());
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<cplx> inverse(const std::vector<cplx>& in) {
    const std::size_t n = in.size();
    std::vector<cplx> work(in);
    std::vector<cplx> out(n);
    fftw_plan p = get_plan(Kind::c2c_bwd, n, work.data(), out.data());
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const double scale = 1.0 / static_cast<double>(n);
    for (cplx& v : out) v *= scale;
    return out;
}

std::vector<cplx> rforward(const std::vector<double>& in) {
    const std::size_t n = in.size();
    std::vector<double> work(in);
    std::vector<cplx> out(n / 2 + 1);
    fftw_plan p = get_plan(Kind::r2c, n, work.data(), out.data());
    fftw_execute_dft_r2c(p, work.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> rinverse(const std::vector<cplx>& half, std::size_t n) {
    if (half.size() != n / 2 + 1)
        throw config_error("rinverse: half-spectrum length inconsistent with n");
    std::vector<cplx> work(half); // c2r destroys its input
    std::vector<double> out(n);
    fftw_plan p = get_plan(Kind::c2r, n, work.data(), out.data());
    fftw_execute_dft_c2r(p, reinterpret_cast<fftw_complex*>(work.data()), out.data());
    const double scale = 1.0 / static_cast<double>(n);
    for (double& v : out) v *= scale;
    return out;
}

} // namespace sicsim::fft
