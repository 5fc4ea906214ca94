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

#ifndef ETVMFTR_CHANNEL_HPP
#define ETVMFTR_CHANNEL_HPP

#include "config.hpp"
#include "core.hpp"
#include "large_scale.hpp"
#include "rng.hpp"
#include "sde.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace etvmftr
{

using cplx = std::complex<double>;

struct Tap
{
    cplx gain{0.0, 0.0};
    std::int64_t delay_samples = 0;
    double delay_seconds = 0.0; // before quantization
};

/// Discrete tapped-delay-line snapshot of the channel at time t and distance d.
///
/// `contributions` keeps the mu + 1 physical paths (LOS cluster first, then
/// clusters 1..mu) with their exact delays; `taps` is the FIR obtained by rounding
/// every delay to the sample grid and summing paths that land on the same index.
struct TapSet
{
    std::vector<Tap> contributions;
    std::vector<Tap> taps;
    double t = 0.0;
    double d = 0.0;
    double norm = 1.0;
    std::int64_t bulk_delay_samples = 0; // round(d / c * f_s)
    PathLossSample large_scale;

    double power() const
    {
        double acc = 0.0;
        for (const auto &tap : taps)
            acc += std::norm(tap.gain);
        return acc;
    }

    double contribution_power() const
    {
        double acc = 0.0;
        for (const auto &c : contributions)
            acc += std::norm(c.gain);
        return acc;
    }

    // Largest tap delay relative to the bulk propagation delay, in samples.
    std::int64_t max_excess_delay() const
    {
        return taps.empty() ? 0 : taps.back().delay_samples - bulk_delay_samples;
    }
};

struct Dopplers
{
    double los1 = 0.0; // Hz
    double los2 = 0.0;
    std::vector<double> clusters;
};

struct ChannelOptions
{
    bool large_scale = true; // apply L(d)
    bool delay_loss = true;  // apply the per-path excess-delay loss
};

/// Power lost by a path whose excess delay tau lengthens the route: (d / (d + c tau))^2.
inline double delay_power_loss(double d, double tau)
{
    if (!(d > 0.0))
        throw std::domain_error("delay_power_loss: distance must be > 0");
    const double r = d / (d + speed_of_light * tau);
    return r * r;
}

/// Per-component Doppler frequencies. `shared` puts every component at f_d_max;
/// `jakes` draws f_d_max cos(theta) with a uniform angle of arrival.
inline std::vector<double> jakes_dopplers(int count, double f_d_max, DopplerMode mode, RngStream &rng)
{
    if (!(f_d_max >= 0.0))
        throw std::invalid_argument("jakes_dopplers: f_d_max must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)), f_d_max);
    if (mode == DopplerMode::jakes)
        for (auto &f : out)
            f = f_d_max * std::cos(rng.uniform_angle());
    return out;
}

inline Dopplers draw_dopplers(int mu, double f_d_max, DopplerMode mode, RngStream &rng)
{
    auto f = jakes_dopplers(mu + 2, f_d_max, mode, rng);
    Dopplers out;
    out.los1 = f[0];
    out.los2 = f[1];
    out.clusters.assign(f.begin() + 2, f.end());
    return out;
}

/// One i.i.d. draw of the static composite power
///   W = |sqrt(zeta) (V1 e^{j phi1} + V2 e^{j phi2}) + Z_1|^2 + zeta U_1^2
///       + sum_{i>=2} |sqrt(zeta) U_i e^{j varphi_i} + Z_i|^2
/// with zeta ~ Gamma(m, 1/m), uniform phases and Z_i ~ CN(0, 2 sigma^2).
/// Cluster 1's diffuse part belongs to the LOS cluster, so the mean is 1 for the
/// consistent sigma.
inline double sample_static_mftr(const MftrParams &p, const DerivedParams &dp, RngStream &rng)
{
    const double zeta = rng.gamma(p.m, 1.0 / p.m);
    const double sz = std::sqrt(zeta);
    auto diffuse = [&] { return dp.sigma * cplx(rng.normal(), rng.normal()); };
    const cplx los = sz * (dp.V1 * std::polar(1.0, rng.uniform_angle()) + dp.V2 * std::polar(1.0, rng.uniform_angle()));
    double w = std::norm(los + diffuse());
    for (int i = 0; i < p.mu; ++i)
    {
        const cplx spec = sz * p.cluster_specular(i) * std::polar(1.0, rng.uniform_angle());
        w += std::norm(i == 0 ? spec : spec + diffuse());
    }
    return w;
}

/// Assembles the tapped delay line for a channel state at distance d and time t.
///
/// LOS path (delay tau1 + d/c):
///   sqrt(L L_1) [sqrt(zeta) V1 e^{j(phi1 - w_c tau1 + w_d1 t)}
///              + sqrt(zeta) V2 e^{j(phi2 - w_c tau1 + w_d2 t)} + Z_1]
/// cluster i (delay tau_i + d/c):
///   sqrt(L) [sqrt(L_i zeta) U_i e^{j theta_i} + sqrt(L_i) Z_i],  theta_i = varphi_i - w_c tau_i + w_di t
/// with Z_i = sigma sqrt(X_i^2 + Y_i^2) e^{-j theta_i}. Cluster 1's Z term is the one
/// inside the LOS bracket. All gains are divided by the power normalizer.
inline TapSet build_tapset(const ChannelState &st, const MftrParams &p, const DerivedParams &dp,
                           const GeometryRadioParams &g, double d, double t, const Dopplers &dop,
                           const ChannelOptions &opt = {})
{
    if (st.clusters.size() != static_cast<std::size_t>(p.mu) || dop.clusters.size() != st.clusters.size())
        throw std::invalid_argument("build_tapset: state, Doppler set and mu disagree on the cluster count");

    TapSet ts;
    ts.t = t;
    ts.d = d;
    ts.norm = dp.norm;
    if (opt.large_scale)
        ts.large_scale = path_loss(d, g);
    else
        ts.large_scale = PathLossSample{d, regime_at(d, g), 1.0, 0.0};

    const double w_c = two_pi * g.f_c;
    const double bulk = d / speed_of_light;
    ts.bulk_delay_samples = std::llround(bulk * g.f_s);
    const double sqrt_l = std::sqrt(ts.large_scale.gain);
    const double sz = std::sqrt(std::max(st.zeta, 0.0));
    auto path_loss_of = [&](double tau) { return opt.delay_loss ? delay_power_loss(d, tau) : 1.0; };
    auto diffuse_amp = [&](const ClusterState &c) { return dp.sigma * std::hypot(c.x, c.y); };

    ts.contributions.reserve(st.clusters.size() + 1);
    {
        const auto &c1 = st.clusters.front();
        const double carrier = w_c * st.tau1;
        const cplx ray1 = sz * dp.V1 * std::polar(1.0, st.phi1 - carrier + two_pi * dop.los1 * t);
        const cplx ray2 = sz * dp.V2 * std::polar(1.0, st.phi2 - carrier + two_pi * dop.los2 * t);
        const cplx z1 = diffuse_amp(c1) * std::polar(1.0, -(c1.phase - carrier + two_pi * dop.los1 * t));
        Tap los;
        los.delay_seconds = st.tau1 + bulk;
        los.delay_samples = std::llround(los.delay_seconds * g.f_s);
        los.gain = sqrt_l * std::sqrt(path_loss_of(st.tau1)) * (ray1 + ray2 + z1) / dp.norm;
        ts.contributions.push_back(los);
    }
    for (std::size_t i = 0; i < st.clusters.size(); ++i)
    {
        const auto &c = st.clusters[i];
        const double theta = c.phase - w_c * c.tau + two_pi * dop.clusters[i] * t;
        const double li = path_loss_of(c.tau);
        cplx g_i = std::sqrt(li) * sz * p.cluster_specular(static_cast<int>(i)) * std::polar(1.0, theta);
        if (i > 0)
            g_i += std::sqrt(li) * diffuse_amp(c) * std::polar(1.0, -theta);
        Tap tap;
        tap.delay_seconds = c.tau + bulk;
        tap.delay_samples = std::llround(tap.delay_seconds * g.f_s);
        tap.gain = sqrt_l * g_i / dp.norm;
        ts.contributions.push_back(tap);
    }

    auto sorted = ts.contributions;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Tap &a, const Tap &b) { return a.delay_samples < b.delay_samples; });
    for (const auto &c : sorted)
    {
        if (!ts.taps.empty() && ts.taps.back().delay_samples == c.delay_samples)
            ts.taps.back().gain += c.gain;
        else
            ts.taps.push_back(c);
    }
    return ts;
}

/// Frequency response on an n_fft-point grid (FFT bin order) of the taps with the
/// bulk delay removed: H[k] = sum g exp(-j 2 pi k (delay - bulk) / n_fft).
inline std::vector<cplx> frequency_response(const TapSet &ts, int n_fft)
{
    std::vector<cplx> h(static_cast<std::size_t>(n_fft), cplx{});
    for (const auto &tap : ts.taps)
    {
        const auto excess = tap.delay_samples - ts.bulk_delay_samples;
        const double w = -two_pi * static_cast<double>(excess % n_fft) / n_fft;
        for (int k = 0; k < n_fft; ++k)
            h[static_cast<std::size_t>(k)] += tap.gain * std::polar(1.0, w * k);
    }
    return h;
}

} // namespace etvmftr

#endif
