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

#ifndef ETVMFTR_ENSEMBLE_HPP
#define ETVMFTR_ENSEMBLE_HPP

#include "channel.hpp"
#include "config.hpp"
#include "parallel.hpp"
#include "rng.hpp"
#include "sde.hpp"
#include "stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace etvmftr
{

// Sampling design for long-run SDE statistics: `paths` independent realizations,
// each started from init_state, run for `burn_in` seconds and then sampled over `window` seconds.
struct EnsembleOptions
{
    int paths = 250;
    double burn_in = 1.0; // s
    double window = 5.0;  // s
    unsigned threads = 0;
};

struct StationarySamples
{
    std::vector<double> zeta;
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> tau;   // cluster delays
    std::vector<double> abs_z; // sigma sqrt(X^2 + Y^2)
    std::vector<double> tau1;  // LOS delay, descriptive only
};

/// Collects n long-run samples of each process. Cluster variables are read from
/// every cluster at evenly spaced snapshots; shadowing is read at its own, finer
/// stride so that it contributes n samples as well.
inline StationarySamples collect_stationary_samples(const ScenarioConfig &cfg, std::size_t n,
                                                    const EnsembleOptions &opt = {})
{
    validate(cfg);
    if (n == 0 || opt.paths < 1)
        throw std::invalid_argument("collect_stationary_samples: need n > 0 and at least one path");
    const auto &p = cfg.mftr;
    const double dt = cfg.sde.dt;
    const double sigma = derive_secondary_params(p).sigma;
    const auto paths = static_cast<std::size_t>(opt.paths);
    const auto mu = static_cast<std::size_t>(p.mu);

    const auto burn_steps = static_cast<std::int64_t>(std::llround(opt.burn_in / dt));
    const auto window_steps = std::max<std::int64_t>(1, std::llround(opt.window / dt));
    const auto snaps = static_cast<std::int64_t>((n + mu * paths - 1) / (mu * paths));
    const auto zeta_snaps = static_cast<std::int64_t>((n + paths - 1) / paths);
    const auto stride = std::max<std::int64_t>(1, window_steps / snaps);
    const auto zeta_stride = std::max<std::int64_t>(1, window_steps / zeta_snaps);
    const auto run_steps = std::max(snaps * stride, zeta_snaps * zeta_stride);

    std::vector<StationarySamples> per_path(paths);
    parallel_for(
        paths,
        [&](std::size_t path) {
            StreamBank bank(cfg.seed, StreamDomain::ensemble, static_cast<std::uint32_t>(path), p.mu);
            ChannelState st = init_state(p, cfg.sde, bank);
            for (std::int64_t k = 0; k < burn_steps; ++k)
                step_inplace(st, p, cfg.sde, dt, bank);
            auto &out = per_path[path];
            std::int64_t taken = 0, zeta_taken = 0;
            for (std::int64_t k = 1; k <= run_steps; ++k)
            {
                step_inplace(st, p, cfg.sde, dt, bank);
                if (k % zeta_stride == 0 && zeta_taken < zeta_snaps)
                {
                    out.zeta.push_back(st.zeta);
                    ++zeta_taken;
                }
                if (k % stride == 0 && taken < snaps)
                {
                    for (const auto &c : st.clusters)
                    {
                        out.x.push_back(c.x);
                        out.y.push_back(c.y);
                        out.tau.push_back(c.tau);
                        out.abs_z.push_back(sigma * std::hypot(c.x, c.y));
                    }
                    out.tau1.push_back(st.tau1);
                    ++taken;
                }
            }
        },
        opt.threads);

    StationarySamples all;
    auto append = [n](std::vector<double> &dst, const std::vector<double> &src) {
        const auto room = n > dst.size() ? n - dst.size() : 0;
        dst.insert(dst.end(), src.begin(), src.begin() + static_cast<std::ptrdiff_t>(std::min(room, src.size())));
    };
    for (const auto &s : per_path)
    {
        append(all.zeta, s.zeta);
        append(all.x, s.x);
        append(all.y, s.y);
        append(all.tau, s.tau);
        append(all.abs_z, s.abs_z);
        all.tau1.insert(all.tau1.end(), s.tau1.begin(), s.tau1.end());
    }
    return all;
}

/// QQ comparison of each process with its target law: shadowing vs Gamma(m, 1/m),
/// X and Y vs N(0, 1), cluster delays vs a maximum-likelihood Weibull, |Z| vs Rayleigh(sigma).
inline std::vector<stats::QqReport> stationary_reports(const StationarySamples &s, const ScenarioConfig &cfg)
{
    const double sigma = derive_secondary_params(cfg.mftr).sigma;
    std::vector<stats::QqReport> out;
    out.push_back(stats::qq_metrics("zeta", s.zeta, stats::GammaLaw{cfg.mftr.m, 1.0 / cfg.mftr.m}));
    out.push_back(stats::qq_metrics("X", s.x, stats::NormalLaw{0.0, 1.0}));
    out.push_back(stats::qq_metrics("Y", s.y, stats::NormalLaw{0.0, 1.0}));
    out.push_back(stats::qq_metrics("tau_i", s.tau, stats::WeibullFitted{}));
    out.push_back(stats::qq_metrics("abs_Z", s.abs_z, stats::RayleighLaw{sigma}));
    return out;
}

// Sampling design for the composite small-scale power.
struct CompositeOptions
{
    int paths = 10000;
    double spacing = 0.02; // s between snapshots of one path
    unsigned threads = 0;
};

/// Composite power sum |gain * norm|^2 over the mu + 1 paths of SDE-driven tap
/// sets with L = L_i = 1, i.e. the time-varying counterpart of sample_static_mftr.
/// Each path contributes ceil(n / paths) snapshots spaced `spacing` seconds apart.
inline std::vector<double> sde_composite_power(const ScenarioConfig &cfg, std::size_t n,
                                               const CompositeOptions &opt = {})
{
    validate(cfg);
    const auto &p = cfg.mftr;
    const auto dp = derive_secondary_params(p);
    const auto paths = static_cast<std::size_t>(std::max(opt.paths, 1));
    const auto per_path = (n + paths - 1) / paths;
    const auto spacing_steps = std::max<std::int64_t>(1, std::llround(opt.spacing / cfg.sde.dt));
    const double d_ref = std::min(1000.0, cfg.geometry.d_los());
    const ChannelOptions unit_loss{false, false};

    std::vector<std::vector<double>> per(paths);
    parallel_for(
        paths,
        [&](std::size_t path) {
            const auto id = static_cast<std::uint32_t>(path);
            StreamBank bank(cfg.seed, StreamDomain::ensemble, id, p.mu);
            RngStream doppler_rng(cfg.seed, stream_id(StreamDomain::ensemble, id, 0, Process::doppler));
            ChannelState st = init_state(p, cfg.sde, bank);
            const Dopplers dop = draw_dopplers(p.mu, cfg.geometry.f_d, cfg.geometry.doppler_mode, doppler_rng);
            auto &out = per[path];
            for (std::size_t k = 1; k <= per_path; ++k)
            {
                for (std::int64_t j = 0; j < spacing_steps; ++j)
                    step_inplace(st, p, cfg.sde, cfg.sde.dt, bank);
                const double t = static_cast<double>(k * static_cast<std::size_t>(spacing_steps)) * cfg.sde.dt;
                const auto ts = build_tapset(st, p, dp, cfg.geometry, d_ref, t, dop, unit_loss);
                out.push_back(ts.contribution_power() * dp.norm * dp.norm);
            }
        },
        opt.threads);

    std::vector<double> all;
    all.reserve(n);
    for (const auto &v : per)
        for (double w : v)
            if (all.size() < n)
                all.push_back(w);
    return all;
}

/// n i.i.d. draws of the static composite power.
inline std::vector<double> static_composite_power(const ScenarioConfig &cfg, std::size_t n)
{
    const auto dp = derive_secondary_params(cfg.mftr);
    RngStream rng(cfg.seed, stream_id(StreamDomain::static_mftr, 0, 0, Process::generic));
    std::vector<double> w(n);
    for (auto &v : w)
        v = sample_static_mftr(cfg.mftr, dp, rng);
    return w;
}

/// Normalized small-scale envelope sqrt(W) / norm from the SDE-driven channel.
inline std::vector<double> composite_envelope(const ScenarioConfig &cfg, std::size_t n,
                                              const CompositeOptions &opt = {})
{
    const double norm = derive_secondary_params(cfg.mftr).norm;
    auto w = sde_composite_power(cfg, n, opt);
    for (auto &v : w)
        v = std::sqrt(v) / norm;
    return w;
}

} // namespace etvmftr

#endif
