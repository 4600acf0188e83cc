// SPDX-License-Identifier: Apache-2.0
#include "sicsim/io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace sicsim {

namespace {

static_assert(std::endian::native == std::endian::little,
              "waveform container assumes a little-endian host");

void put_u64(std::ofstream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

void put_f64(std::ofstream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

} // namespace

void write_waveform(const std::string& path, const RealSignal& sig) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_waveform: cannot open " + path);
    put_f64(os, sig.sample_rate_hz);
    put_u64(os, static_cast<std::uint64_t>(sig.samples.size()));
    os.write(reinterpret_cast<const char*>(sig.samples.data()),
             static_cast<std::streamsize>(sig.samples.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write_waveform: write failed for " + path);
}

RealSignal read_waveform(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_waveform: cannot open " + path);
    RealSignal sig;
    std::uint64_t count = 0;
    is.read(reinterpret_cast<char*>(&sig.sample_rate_hz), sizeof(double));
    is.read(reinterpret_cast<char*>(&count), sizeof(count));
    if (!is) throw std::runtime_error("read_waveform: truncated header in " + path);
    sig.samples.resize(count);
    is.read(reinterpret_cast<char*>(sig.samples.data()),
            static_cast<std::streamsize>(count * sizeof(double)));
    if (!is) throw std::runtime_error("read_waveform: truncated payload in " + path);
    return sig;
}

void write_waveform_csv(const std::string& path, const RealSignal& sig) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_waveform_csv: cannot open " + path);
    os << "time_s,amplitude\n";
    os << std::setprecision(17);
    for (std::size_t i = 0; i < sig.samples.size(); ++i)
        os << static_cast<double>(i) / sig.sample_rate_hz << ',' << sig.samples[i] << '\n';
}

void write_psd_csv(const std::string& path, const std::vector<PsdPoint>& psd) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_psd_csv: cannot open " + path);
    os << "freq_hz,psd_db\n";
    os << std::setprecision(12);
    for (const PsdPoint& p : psd) {
        const double db = p.psd > 0 ? 10.0 * std::log10(p.psd) : -400.0;
        os << p.freq_hz << ',' << db << '\n';
    }
}

void write_constellation_csv(const std::string& path, const std::vector<cplx>& symbols) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_constellation_csv: cannot open " + path);
    os << "symbol_i,symbol_q\n";
    os << std::setprecision(12);
    for (const cplx& s : symbols) os << s.real() << ',' << s.imag() << '\n';
}

void write_rows_csv(const std::string& path, const std::string& header,
                    const std::vector<std::vector<double>>& rows) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("write_rows_csv: cannot open " + path);
    os << header << '\n';
    os << std::setprecision(15);
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << row[i];
        }
        os << '\n';
    }
}

} // namespace sicsim
