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

#ifndef ETVMFTR_RNG_HPP
#define ETVMFTR_RNG_HPP

#include "core.hpp"

#include <array>
#include <cstdint>
#include <limits>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace etvmftr
{

// SplitMix64 finalizer, used for seed expansion and stream-id mixing.
constexpr std::uint64_t splitmix64(std::uint64_t &state) noexcept
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). 32 bytes of state, so one engine per
// process variable stays cheap even for a few hundred clusters.
class Xoshiro256pp
{
public:
    using result_type = std::uint64_t;

    explicit Xoshiro256pp(std::uint64_t seed = 0) noexcept
    {
        std::uint64_t sm = seed;
        for (auto &w : s_)
            w = splitmix64(sm);
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept
    {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    friend bool operator==(const Xoshiro256pp &, const Xoshiro256pp &) = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> s_{};
};

// Top byte of a stream id: which part of the program owns the stream.
enum class StreamDomain : std::uint8_t
{
    link = 1,
    ensemble = 2,
    channel_dump = 3,
    static_mftr = 4,
    awgn = 5,
    test = 255
};

// Low byte of a stream id: which random quantity the stream drives.
enum class Process : std::uint8_t
{
    zeta = 0,
    phi1 = 1,
    phi2 = 2,
    tau1 = 3,
    cluster_x = 4,
    cluster_y = 5,
    cluster_phase = 6,
    cluster_tau = 7,
    doppler = 8,
    bits = 9,
    noise = 10,
    generic = 11
};

// Stream id layout: [domain:8][realization:32][cluster:16][process:8].
// Adding clusters or realizations never changes the ids of existing streams.
constexpr std::uint64_t stream_id(StreamDomain domain, std::uint32_t realization, std::uint16_t cluster,
                                  Process process) noexcept
{
    return (std::uint64_t(domain) << 56) | (std::uint64_t(realization) << 24) | (std::uint64_t(cluster) << 8) |
           std::uint64_t(process);
}

/// Independent random stream keyed by (master seed, stream id).
class RngStream
{
public:
    RngStream(std::uint64_t seed, std::uint64_t id) : engine_(mix(seed, id)), seed_(seed), id_(id) {}

    double normal() { return normal_(engine_); }
    double uniform() { return uniform_(engine_); }
    double uniform_angle() { return two_pi * uniform(); }
    double gamma(double shape, double scale)
    {
        return boost::random::gamma_distribution<double>(shape, scale)(engine_);
    }
    std::uint64_t bits() { return engine_(); }

    Xoshiro256pp &engine() noexcept { return engine_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t id() const noexcept { return id_; }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t id) noexcept
    {
        std::uint64_t a = seed;
        std::uint64_t b = id ^ 0x6a09e667f3bcc909ULL;
        return splitmix64(a) ^ (splitmix64(b) * 0x9e3779b97f4a7c15ULL);
    }

    Xoshiro256pp engine_;
    boost::random::normal_distribution<double> normal_;
    boost::random::uniform_01<double> uniform_;
    std::uint64_t seed_;
    std::uint64_t id_;
};

} // namespace etvmftr

#endif
