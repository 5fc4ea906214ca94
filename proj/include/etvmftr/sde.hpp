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

#ifndef ETVMFTR_SDE_HPP
#define ETVMFTR_SDE_HPP

#include "config.hpp"
#include "core.hpp"
#include "rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

namespace etvmftr
{

struct ClusterState
{
    double x = 0.0;     // in-phase Gaussian driver of the diffuse amplitude
    double y = 0.0;     // quadrature Gaussian driver
    double phase = 0.0; // varphi_i, rad
    double tau = 0.0;   // excess delay, s

    friend bool operator==(const ClusterState &, const ClusterState &) = default;
};

// Evolving channel state: shadowing, the two LOS phases, the LOS delay and
// one (X, Y, phase, delay) block per cluster.
struct ChannelState
{
    double zeta = 1.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
    double tau1 = 0.0;
    std::vector<ClusterState> clusters;

    double min_cluster_tau() const
    {
        double m = std::numeric_limits<double>::infinity();
        for (const auto &c : clusters)
            m = std::min(m, c.tau);
        return m;
    }

    friend bool operator==(const ChannelState &, const ChannelState &) = default;
};

// Euler-Maruyama updates for the individual processes. `dw` is the Wiener
// increment over the step, i.e. already scaled by sqrt(dt).
namespace kernel
{

// d phi = sqrt(C_phi) dW
inline double phase(double phi, double c_phi, double dw) { return phi + std::sqrt(c_phi) * dw; }

// d tau = -tau dt + sqrt(2 C_tau) dW, reflected at zero.
inline double delay(double tau, double c_tau, double dt, double dw)
{
    return std::abs(tau - tau * dt + std::sqrt(2.0 * c_tau) * dw);
}

// dX = -X dt + sqrt(2) dW, stationary law N(0, 1).
inline double gaussian(double x, double dt, double dw) { return x - x * dt + std::numbers::sqrt2 * dw; }

// d zeta = m (1 - zeta) dt + sqrt(2 |zeta|) dW, clamped at zero; stationary law Gamma(m, 1/m).
inline double shadowing(double zeta, double m, double dt, double dw)
{
    return std::max(0.0, zeta + m * (1.0 - zeta) * dt + std::sqrt(2.0 * std::abs(zeta)) * dw);
}

} // namespace kernel

// Keeps the LOS delay at or below every cluster delay by swapping it with the smallest one.
inline void apply_delay_ordering(ChannelState &s)
{
    if (s.clusters.empty())
        return;
    auto it = std::min_element(s.clusters.begin(), s.clusters.end(),
                               [](const ClusterState &a, const ClusterState &b) { return a.tau < b.tau; });
    if (it->tau < s.tau1)
        std::swap(it->tau, s.tau1);
}

/// Wiener sources of one channel realization: one RngStream per process variable
/// and cluster, all derived from (seed, domain, realization).
class StreamBank
{
public:
    StreamBank(std::uint64_t seed, StreamDomain domain, std::uint32_t realization, int mu)
    {
        streams_.reserve(4 + 4 * static_cast<std::size_t>(mu));
        for (auto p : {Process::zeta, Process::phi1, Process::phi2, Process::tau1})
            streams_.emplace_back(seed, stream_id(domain, realization, 0, p));
        for (int i = 0; i < mu; ++i)
            for (auto p : {Process::cluster_x, Process::cluster_y, Process::cluster_phase, Process::cluster_tau})
                streams_.emplace_back(seed, stream_id(domain, realization, static_cast<std::uint16_t>(i), p));
    }

    RngStream &stream(Process p, int cluster = 0)
    {
        const auto k = static_cast<std::size_t>(p);
        return k < 4 ? streams_[k] : streams_[4 + 4 * static_cast<std::size_t>(cluster) + (k - 4)];
    }

    // Standard normal draw for (process, cluster); the noise interface of step().
    double operator()(Process p, int cluster) { return stream(p, cluster).normal(); }

    int clusters() const { return static_cast<int>((streams_.size() - 4) / 4); }

private:
    std::vector<RngStream> streams_;
};

/// Draws a state from the stationary laws: uniform phases, half-normal delays
/// with scale sqrt(C_tau), standard normal X/Y and Gamma(m, 1/m) shadowing.
inline ChannelState init_state(const MftrParams &p, const SdeParams &s, StreamBank &bank)
{
    const double sigma_tau = std::sqrt(s.C_tau);
    ChannelState st;
    st.zeta = bank.stream(Process::zeta).gamma(p.m, 1.0 / p.m);
    st.phi1 = bank.stream(Process::phi1).uniform_angle();
    st.phi2 = bank.stream(Process::phi2).uniform_angle();
    st.tau1 = std::abs(sigma_tau * bank.stream(Process::tau1).normal());
    st.clusters.resize(static_cast<std::size_t>(p.mu));
    for (int i = 0; i < p.mu; ++i)
    {
        auto &c = st.clusters[static_cast<std::size_t>(i)];
        c.x = bank.stream(Process::cluster_x, i).normal();
        c.y = bank.stream(Process::cluster_y, i).normal();
        c.phase = bank.stream(Process::cluster_phase, i).uniform_angle();
        c.tau = std::abs(sigma_tau * bank.stream(Process::cluster_tau, i).normal());
    }
    apply_delay_ordering(st);
    return st;
}

inline void check_step(double m, double dt)
{
    if (!(dt > 0.0))
        throw std::domain_error("SDE step dt must be > 0");
    if (m * dt >= 1.0)
        throw stability_error("m * dt = " + std::to_string(m * dt) + " >= 1: step too coarse for the shadowing drift");
}

/// One Euler-Maruyama step of every process, in place. `noise(process, cluster)`
/// returns a standard normal; it is scaled by sqrt(dt) here. Passing a noise
/// source that returns zero gives the deterministic drift-only update.
template <class Noise>
void step_inplace(ChannelState &st, const MftrParams &p, const SdeParams &s, double dt, Noise &&noise)
{
    check_step(p.m, dt);
    const double sq = std::sqrt(dt);
    st.zeta = kernel::shadowing(st.zeta, p.m, dt, sq * noise(Process::zeta, 0));
    st.phi1 = kernel::phase(st.phi1, s.C_phi, sq * noise(Process::phi1, 0));
    st.phi2 = kernel::phase(st.phi2, s.C_phi, sq * noise(Process::phi2, 0));
    st.tau1 = kernel::delay(st.tau1, s.C_tau, dt, sq * noise(Process::tau1, 0));
    for (std::size_t i = 0; i < st.clusters.size(); ++i)
    {
        auto &c = st.clusters[i];
        const int ci = static_cast<int>(i);
        c.x = kernel::gaussian(c.x, dt, sq * noise(Process::cluster_x, ci));
        c.y = kernel::gaussian(c.y, dt, sq * noise(Process::cluster_y, ci));
        c.phase = kernel::phase(c.phase, s.C_phi, sq * noise(Process::cluster_phase, ci));
        c.tau = kernel::delay(c.tau, s.C_tau, dt, sq * noise(Process::cluster_tau, ci));
    }
    apply_delay_ordering(st);
}

template <class Noise>
ChannelState step(ChannelState st, const MftrParams &p, const SdeParams &s, double dt, Noise &&noise)
{
    step_inplace(st, p, s, dt, noise);
    return st;
}

inline std::int64_t steps_for(double duration, double dt)
{
    const double n = duration / dt;
    const auto r = static_cast<std::int64_t>(std::llround(n));
    if (std::abs(n - static_cast<double>(r)) > 1e-6 * std::max(1.0, n))
        throw std::invalid_argument("duration " + std::to_string(duration) + " s is not a multiple of dt");
    return r;
}

/// Advances `state` over `horizon` seconds and returns snapshots every `sample_every`
/// seconds (the initial state is not included).
template <class Noise>
std::vector<ChannelState> evolve(ChannelState state, const MftrParams &p, const SdeParams &s, double horizon,
                                 double dt, double sample_every, Noise &&noise)
{
    if (!(sample_every >= dt))
        throw std::invalid_argument("sample_every must be >= dt");
    check_step(p.m, dt);
    const auto per_sample = steps_for(sample_every, dt);
    const auto n_samples = static_cast<std::int64_t>(std::floor(horizon / sample_every + 1e-9));
    std::vector<ChannelState> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(n_samples, 0)));
    for (std::int64_t k = 0; k < n_samples; ++k)
    {
        for (std::int64_t j = 0; j < per_sample; ++j)
            step_inplace(state, p, s, dt, noise);
        out.push_back(state);
    }
    return out;
}

} // namespace etvmftr

#endif
