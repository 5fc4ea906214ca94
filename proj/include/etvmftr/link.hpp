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

#ifndef ETVMFTR_LINK_HPP
#define ETVMFTR_LINK_HPP

#include "channel.hpp"
#include "config.hpp"
#include "large_scale.hpp"
#include "ofdm.hpp"
#include "parallel.hpp"
#include "qam.hpp"
#include "rng.hpp"
#include "sde.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace etvmftr
{

struct LinkRow
{
    double d = 0.0;
    double snr_db = 0.0;
    double ber = 0.0;
    std::uint64_t n_bits = 0;
    std::uint64_t bit_errors = 0;
    Regime regime = Regime::fsl;
    std::uint64_t null_subcarriers = 0; // subcarriers with H_k = 0, counted at 50 % errors
    std::int64_t max_excess_delay = 0;  // samples; above cp_len means inter-symbol interference
};

struct EnvelopeSample
{
    std::size_t point = 0;
    int symbol = 0;
    double d = 0.0;
    double envelope = 0.0; // sqrt(sum |gain|^2 / L(d)), the small-scale composite envelope
};

struct LinkTrace
{
    std::vector<LinkRow> rows;
    std::vector<EnvelopeSample> envelope;
};

/// Mean received-power SNR of a tap set: 10 log10(P_t G_t G_r sum|g|^2 / P_w).
inline double snr_at(const TapSet &ts, const GeometryRadioParams &g)
{
    return linear_to_db(g.rx_power_mw() * ts.power() / g.noise_power_mw());
}

inline std::vector<double> linspace(double start, double stop, std::size_t points)
{
    if (points == 0)
        return {};
    if (points == 1)
        return {start};
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i)
        out[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    return out;
}

namespace detail
{

inline std::vector<std::uint8_t> random_bits(RngStream &rng, std::size_t n)
{
    std::vector<std::uint8_t> bits(n);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        if (i % 64 == 0)
            word = rng.bits();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return bits;
}

inline void add_awgn(std::span<std::complex<double>> y, double noise_power, RngStream &rng)
{
    if (noise_power <= 0.0)
        return;
    const double s = std::sqrt(noise_power / 2.0);
    for (auto &v : y)
        v += std::complex<double>(s * rng.normal(), s * rng.normal());
}

} // namespace detail

struct LinkPoint
{
    LinkRow row;
    std::vector<double> envelope;
};

/// Simulates one distance point: the channel state evolves over one coherence
/// interval per OFDM symbol, each symbol passes its own tap set (bulk delay
/// compensated), AWGN is added, and the receiver zero-forces with the exact
/// frequency response.
inline LinkPoint simulate_link_point(const ScenarioConfig &cfg, double d, std::uint32_t point_index,
                                     double d_reference = 0.0)
{
    const auto &g = cfg.geometry;
    const auto &lp = cfg.link;
    const auto dp = derive_secondary_params(cfg.mftr);

    StreamBank bank(cfg.seed, StreamDomain::link, point_index, cfg.mftr.mu);
    RngStream doppler_rng(cfg.seed, stream_id(StreamDomain::link, point_index, 0, Process::doppler));
    RngStream bit_rng(cfg.seed, stream_id(StreamDomain::link, point_index, 0, Process::bits));
    RngStream noise_rng(cfg.seed, stream_id(StreamDomain::link, point_index, 0, Process::noise));

    ChannelState st = init_state(cfg.mftr, cfg.sde, bank);
    const Dopplers dop = draw_dopplers(cfg.mftr.mu, g.f_d, g.doppler_mode, doppler_rng);
    const auto block_steps = steps_for(cfg.sde.T_c, cfg.sde.dt);
    const double t0 = g.v > 0.0 ? (d - d_reference) / g.v : 0.0;

    OfdmModem modem(lp);
    const auto n_sym = static_cast<std::size_t>(lp.symbols_per_point);
    const auto frame_len = static_cast<std::size_t>(modem.frame_len());
    const auto n_occ = modem.n_occupied();
    const double tx_amp = std::sqrt(g.rx_power_mw());
    const double noise_power = g.noise_power_mw();

    LinkPoint out;
    out.row.d = d;
    out.row.regime = regime_at(d, g);

    std::vector<TapSet> channels;
    channels.reserve(n_sym);
    std::vector<std::vector<std::uint8_t>> tx_bits(n_sym);
    std::vector<std::complex<double>> rx(n_sym * frame_len);
    std::vector<std::complex<double>> frame(frame_len);
    double power_acc = 0.0;

    for (std::size_t s = 0; s < n_sym; ++s)
    {
        for (std::int64_t k = 0; k < block_steps; ++k)
            step_inplace(st, cfg.mftr, cfg.sde, cfg.sde.dt, bank);
        channels.push_back(build_tapset(st, cfg.mftr, dp, g, d, t0 + static_cast<double>(s) * cfg.sde.T_c, dop));
        const TapSet &ts = channels.back();
        power_acc += ts.power();
        out.row.max_excess_delay = std::max(out.row.max_excess_delay, ts.max_excess_delay());
        out.envelope.push_back(ts.large_scale.gain > 0.0 ? std::sqrt(ts.power() / ts.large_scale.gain) : 0.0);

        tx_bits[s] = detail::random_bits(bit_rng, n_occ * 4);
        const auto symbols = qam16_mod(tx_bits[s]);
        modem.modulate(symbols, frame);

        const std::size_t base = s * frame_len;
        const auto needed = base + frame_len + static_cast<std::size_t>(ts.max_excess_delay());
        if (rx.size() < needed)
            rx.resize(needed);
        for (const auto &tap : ts.taps)
        {
            const auto offset = base + static_cast<std::size_t>(tap.delay_samples - ts.bulk_delay_samples);
            const std::complex<double> a = tx_amp * tap.gain;
            for (std::size_t n = 0; n < frame_len; ++n)
                rx[offset + n] += a * frame[n];
        }
    }
    detail::add_awgn(rx, noise_power, noise_rng);

    std::vector<std::complex<double>> bins(static_cast<std::size_t>(modem.fft_size()));
    std::vector<std::complex<double>> equalized(n_occ);
    std::vector<bool> null_bin(n_occ);
    for (std::size_t s = 0; s < n_sym; ++s)
    {
        modem.spectrum(std::span(rx).subspan(s * frame_len, frame_len), bins);
        const auto h = frequency_response(channels[s], modem.fft_size());
        for (std::size_t q = 0; q < n_occ; ++q)
        {
            const auto bin = modem.occupied_bins()[q];
            const std::complex<double> hk = tx_amp * h[bin];
            null_bin[q] = std::abs(hk) == 0.0;
            equalized[q] = null_bin[q] ? std::complex<double>{} : bins[bin] / hk;
        }
        const auto rx_bits = qam16_demod(equalized);
        for (std::size_t q = 0; q < n_occ; ++q)
        {
            if (null_bin[q])
            {
                out.row.bit_errors += 2;
                ++out.row.null_subcarriers;
                continue;
            }
            for (std::size_t b = 4 * q; b < 4 * q + 4; ++b)
                out.row.bit_errors += rx_bits[b] != tx_bits[s][b];
        }
    }
    out.row.n_bits = n_sym * n_occ * 4;
    out.row.ber = static_cast<double>(out.row.bit_errors) / static_cast<double>(out.row.n_bits);
    const double mean_power = power_acc / static_cast<double>(n_sym);
    out.row.snr_db = noise_power > 0.0 ? linear_to_db(g.rx_power_mw() * mean_power / noise_power)
                                       : std::numeric_limits<double>::infinity();
    return out;
}

/// SNR and BER over a list of distances. Each point has its own random streams
/// (keyed by its index), so points run in parallel and the trace does not
/// depend on the number of workers.
inline LinkTrace run_link_over_distance(const ScenarioConfig &cfg, std::span<const double> distances,
                                        unsigned threads = 0)
{
    validate(cfg);
    for (double d : distances)
        if (!(d > 0.0) || d > cfg.geometry.d_los())
            throw out_of_horizon("link sweep distance " + std::to_string(d) + " m outside (0, d_LOS]");
    std::vector<LinkPoint> points(distances.size());
    const double d_ref = distances.empty() ? 0.0 : distances.front();
    parallel_for(
        distances.size(),
        [&](std::size_t i) {
            points[i] = simulate_link_point(cfg, distances[i], static_cast<std::uint32_t>(i), d_ref);
        },
        threads);
    LinkTrace trace;
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        trace.rows.push_back(points[i].row);
        for (std::size_t s = 0; s < points[i].envelope.size(); ++s)
            trace.envelope.push_back({i, static_cast<int>(s), distances[i], points[i].envelope[s]});
    }
    return trace;
}

struct AwgnResult
{
    double es_n0_db = 0.0;
    std::uint64_t n_bits = 0;
    std::uint64_t bit_errors = 0;
    double ber = 0.0;
    double analytic = 0.0;
};

/// OFDM/16-QAM over an AWGN-only channel (H = 1), for calibrating the harness
/// against the analytic Gray 16-QAM curve. Runs whole OFDM symbols until at
/// least `min_bits` bits have been sent.
inline AwgnResult simulate_awgn_ber(const LinkParams &lp, double es_n0_db, std::uint64_t min_bits,
                                    std::uint64_t seed)
{
    OfdmModem modem(lp);
    RngStream bit_rng(seed, stream_id(StreamDomain::awgn, 0, 0, Process::bits));
    RngStream noise_rng(seed, stream_id(StreamDomain::awgn, 0, 0, Process::noise));
    const double n0 = 1.0 / db_to_linear(es_n0_db);
    const auto n_occ = modem.n_occupied();
    std::vector<std::complex<double>> frame(static_cast<std::size_t>(modem.frame_len()));
    std::vector<std::complex<double>> data(n_occ);

    AwgnResult r;
    r.es_n0_db = es_n0_db;
    r.analytic = qam16_ber_awgn(db_to_linear(es_n0_db));
    while (r.n_bits < min_bits)
    {
        const auto bits = detail::random_bits(bit_rng, n_occ * 4);
        modem.modulate(qam16_mod(bits), frame);
        detail::add_awgn(frame, n0, noise_rng);
        modem.demodulate(frame, data);
        const auto rx_bits = qam16_demod(data);
        for (std::size_t b = 0; b < bits.size(); ++b)
            r.bit_errors += rx_bits[b] != bits[b];
        r.n_bits += bits.size();
    }
    r.ber = static_cast<double>(r.bit_errors) / static_cast<double>(r.n_bits);
    return r;
}

} // namespace etvmftr

#endif
