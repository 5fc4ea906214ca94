// SPDX-License-Identifier: Apache-2.0
//
// etvmftr - time-varying maritime fading channel simulation library
// Copyright (C) 2026 The etvmftr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ETVMFTR_OFDM_HPP
#define ETVMFTR_OFDM_HPP

#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace etvmftr
{

namespace detail
{
// FFTW's planner is not re-entrant.
inline std::mutex &fftw_planner_mutex()
{
    static std::mutex m;
    return m;
}

struct FftwFree
{
    void operator()(fftw_complex *p) const noexcept { fftw_free(p); }
};
struct FftwPlanDestroy
{
    void operator()(fftw_plan p) const noexcept
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(p);
    }
};
using FftwBuffer = std::unique_ptr<fftw_complex[], FftwFree>;
using FftwPlan = std::unique_ptr<std::remove_pointer_t<fftw_plan>, FftwPlanDestroy>;
} // namespace detail

/// OFDM modulator/demodulator with unitary transforms, guard subcarriers split
/// evenly between the two band edges, and a cyclic prefix. One instance per thread.
class OfdmModem
{
public:
    explicit OfdmModem(const LinkParams &lp)
        : n_(checked(lp).n_subcarriers), cp_(lp.cp_len), occupied_(static_cast<std::size_t>(lp.n_occupied())),
          in_(fftw_alloc_complex(static_cast<std::size_t>(n_))), out_(fftw_alloc_complex(static_cast<std::size_t>(n_)))
    {
        const int half_guard = lp.n_guard / 2;
        for (std::size_t q = 0; q < occupied_.size(); ++q)
        {
            const int j = half_guard + static_cast<int>(q); // frequency-ordered index, 0 <-> -N/2
            occupied_[q] = static_cast<std::size_t>((j - n_ / 2 + n_) % n_);
        }
        std::lock_guard lock(detail::fftw_planner_mutex());
        inverse_.reset(fftw_plan_dft_1d(n_, in_.get(), out_.get(), FFTW_BACKWARD, FFTW_ESTIMATE));
        forward_.reset(fftw_plan_dft_1d(n_, in_.get(), out_.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    }

    int fft_size() const { return n_; }
    int cp_len() const { return cp_; }
    int frame_len() const { return n_ + cp_; }
    std::size_t n_occupied() const { return occupied_.size(); }
    // FFT bin carrying data symbol q.
    const std::vector<std::size_t> &occupied_bins() const { return occupied_; }

    /// One OFDM symbol: n_occupied data symbols -> frame_len() time samples.
    void modulate(std::span<const std::complex<double>> data, std::span<std::complex<double>> frame)
    {
        if (data.size() != occupied_.size() || frame.size() != static_cast<std::size_t>(frame_len()))
            throw std::invalid_argument("OfdmModem::modulate: length mismatch");
        std::fill_n(&in_[0][0], 2 * n_, 0.0);
        for (std::size_t q = 0; q < data.size(); ++q)
        {
            in_[occupied_[q]][0] = data[q].real();
            in_[occupied_[q]][1] = data[q].imag();
        }
        fftw_execute(inverse_.get());
        const double s = 1.0 / std::sqrt(static_cast<double>(n_));
        for (int k = 0; k < n_; ++k)
            frame[static_cast<std::size_t>(cp_ + k)] = {out_[k][0] * s, out_[k][1] * s};
        std::copy_n(frame.begin() + n_, cp_, frame.begin());
    }

    /// Full-band spectrum (FFT bin order) of one received frame after CP removal.
    void spectrum(std::span<const std::complex<double>> frame, std::span<std::complex<double>> bins)
    {
        if (frame.size() != static_cast<std::size_t>(frame_len()) || bins.size() != static_cast<std::size_t>(n_))
            throw std::invalid_argument("OfdmModem::spectrum: length mismatch");
        for (int k = 0; k < n_; ++k)
        {
            in_[k][0] = frame[static_cast<std::size_t>(cp_ + k)].real();
            in_[k][1] = frame[static_cast<std::size_t>(cp_ + k)].imag();
        }
        fftw_execute(forward_.get());
        const double s = 1.0 / std::sqrt(static_cast<double>(n_));
        for (int k = 0; k < n_; ++k)
            bins[static_cast<std::size_t>(k)] = {out_[k][0] * s, out_[k][1] * s};
    }

    /// One received frame -> the n_occupied data subcarriers.
    void demodulate(std::span<const std::complex<double>> frame, std::span<std::complex<double>> data)
    {
        if (data.size() != occupied_.size())
            throw std::invalid_argument("OfdmModem::demodulate: length mismatch");
        std::vector<std::complex<double>> bins(static_cast<std::size_t>(n_));
        spectrum(frame, bins);
        for (std::size_t q = 0; q < data.size(); ++q)
            data[q] = bins[occupied_[q]];
    }

private:
    static const LinkParams &checked(const LinkParams &lp)
    {
        validate(lp);
        return lp;
    }

    int n_;
    int cp_;
    std::vector<std::size_t> occupied_;
    detail::FftwBuffer in_;
    detail::FftwBuffer out_;
    detail::FftwPlan inverse_;
    detail::FftwPlan forward_;
};

// Multi-symbol conveniences: symbols.size() must be a multiple of n_occupied.
inline std::vector<std::complex<double>> ofdm_frame(std::span<const std::complex<double>> symbols, const LinkParams &lp)
{
    OfdmModem modem(lp);
    const auto per = modem.n_occupied();
    if (symbols.size() % per != 0)
        throw std::invalid_argument("ofdm_frame: symbol count is not a multiple of the occupied subcarriers");
    const auto n_sym = symbols.size() / per;
    std::vector<std::complex<double>> out(n_sym * static_cast<std::size_t>(modem.frame_len()));
    for (std::size_t s = 0; s < n_sym; ++s)
        modem.modulate(symbols.subspan(s * per, per),
                       std::span(out).subspan(s * modem.frame_len(), static_cast<std::size_t>(modem.frame_len())));
    return out;
}

inline std::vector<std::complex<double>> ofdm_deframe(std::span<const std::complex<double>> samples,
                                                      const LinkParams &lp)
{
    OfdmModem modem(lp);
    const auto len = static_cast<std::size_t>(modem.frame_len());
    if (samples.size() % len != 0)
        throw std::invalid_argument("ofdm_deframe: sample count is not a multiple of the frame length");
    const auto n_sym = samples.size() / len;
    std::vector<std::complex<double>> out(n_sym * modem.n_occupied());
    for (std::size_t s = 0; s < n_sym; ++s)
        modem.demodulate(samples.subspan(s * len, len), std::span(out).subspan(s * modem.n_occupied(), modem.n_occupied()));
    return out;
}

} // namespace etvmftr

#endif
