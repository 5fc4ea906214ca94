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

#ifndef ETVMFTR_QAM_HPP
#define ETVMFTR_QAM_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace etvmftr
{

// Gray-coded square 16-QAM with unit average symbol energy. Each symbol carries
// four bits: the first pair selects the in-phase level, the second the quadrature
// level, with per-axis Gray map 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3 (times 1/sqrt(10)).
namespace qam16
{

inline constexpr int bits_per_symbol = 4;
inline const double scale = 1.0 / std::sqrt(10.0);

inline double level(std::uint8_t b0, std::uint8_t b1)
{
    static constexpr std::array<double, 4> lut{-3.0, -1.0, 3.0, 1.0}; // index b0 * 2 + b1
    return lut[static_cast<std::size_t>((b0 << 1) | b1)];
}

inline void slice(double v, std::uint8_t &b0, std::uint8_t &b1)
{
    v /= scale;
    b0 = v > 0.0 ? 1 : 0;
    b1 = std::abs(v) < 2.0 ? 1 : 0;
}

} // namespace qam16

inline std::vector<std::complex<double>> qam16_mod(std::span<const std::uint8_t> bits)
{
    if (bits.size() % qam16::bits_per_symbol != 0)
        throw std::invalid_argument("qam16_mod: bit count must be a multiple of 4");
    std::vector<std::complex<double>> out(bits.size() / 4);
    for (std::size_t s = 0; s < out.size(); ++s)
    {
        const auto *b = &bits[4 * s];
        out[s] = {qam16::scale * qam16::level(b[0] & 1, b[1] & 1), qam16::scale * qam16::level(b[2] & 1, b[3] & 1)};
    }
    return out;
}

// Nearest-neighbour hard decision.
inline std::vector<std::uint8_t> qam16_demod(std::span<const std::complex<double>> symbols)
{
    std::vector<std::uint8_t> bits(symbols.size() * 4);
    for (std::size_t s = 0; s < symbols.size(); ++s)
    {
        qam16::slice(symbols[s].real(), bits[4 * s], bits[4 * s + 1]);
        qam16::slice(symbols[s].imag(), bits[4 * s + 2], bits[4 * s + 3]);
    }
    return bits;
}

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

/// Exact bit error rate of Gray 16-QAM on AWGN at the given Es/N0 (linear):
/// (3 Q(a) + 2 Q(3a) - Q(5a)) / 4 with a = sqrt(Es / (5 N0)).
inline double qam16_ber_awgn(double es_n0)
{
    const double a = std::sqrt(es_n0 / 5.0);
    return (3.0 * q_function(a) + 2.0 * q_function(3.0 * a) - q_function(5.0 * a)) / 4.0;
}

} // namespace etvmftr

#endif
