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

#ifndef ETVMFTR_LARGE_SCALE_HPP
#define ETVMFTR_LARGE_SCALE_HPP

#include "config.hpp"
#include "core.hpp"

#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace etvmftr
{

enum class Regime
{
    fsl,
    two_ray,
    three_ray
};

inline std::string_view to_string(Regime r)
{
    switch (r)
    {
    case Regime::fsl:
        return "FSL";
    case Regime::two_ray:
        return "TwoRay";
    case Regime::three_ray:
        return "ThreeRay";
    }
    return "?";
}

struct PathLossSample
{
    double d = 0.0;
    Regime regime = Regime::fsl;
    double gain = 0.0;    // linear power gain
    double gain_db = 0.0; // 10 log10(gain), -inf at an exact null
};

namespace detail
{
inline void require_positive_distance(double d)
{
    if (!(d > 0.0))
        throw std::domain_error("distance must be > 0, got " + std::to_string(d));
}
} // namespace detail

// Free-space loss (lambda / (4 pi d))^2.
inline double fsl(double d, double lambda)
{
    detail::require_positive_distance(d);
    const double r = lambda / (4.0 * pi * d);
    return r * r;
}

// Direct ray plus ideal (Gamma = -1) sea-surface reflection.
inline double two_ray(double d, double lambda, double h_t, double h_r)
{
    const double s = std::sin(two_pi / lambda * h_t * h_r / d);
    return 4.0 * fsl(d, lambda) * s * s;
}

// Ducting term b(d) of the three-ray model; |b| <= 2.
inline double ducting_factor(double d, double lambda, double h_t, double h_r, double h_e)
{
    return 2.0 * std::sin(two_pi * h_t * h_r / (lambda * d)) *
           std::sin(two_pi * (h_e - h_r) * (h_e - h_t) / (lambda * d));
}

inline double three_ray(double d, double lambda, double h_t, double h_r, double h_e)
{
    const double f = fsl(d, lambda);
    const double one_b = 1.0 + ducting_factor(d, lambda, h_t, h_r, h_e);
    return 4.0 * f * one_b * one_b;
}

// Regime boundaries are half-open: [d0, d_break) is two-ray, [d_break, d_LOS] three-ray.
inline Regime regime_at(double d, const GeometryRadioParams &g)
{
    if (d < g.d0)
        return Regime::fsl;
    if (d < g.d_break())
        return Regime::two_ray;
    return Regime::three_ray;
}

/// Piecewise large-scale loss. The model is discontinuous at d0 and d_break.
inline PathLossSample path_loss(double d, const GeometryRadioParams &g)
{
    detail::require_positive_distance(d);
    if (d > g.d_los())
        throw out_of_horizon("distance " + std::to_string(d) + " m exceeds the radio horizon " +
                             std::to_string(g.d_los()) + " m");
    const double lambda = g.wavelength();
    PathLossSample s;
    s.d = d;
    s.regime = regime_at(d, g);
    switch (s.regime)
    {
    case Regime::fsl:
        s.gain = fsl(d, lambda);
        break;
    case Regime::two_ray:
        s.gain = two_ray(d, lambda, g.h_t, g.h_r);
        break;
    case Regime::three_ray:
        s.gain = three_ray(d, lambda, g.h_t, g.h_r, g.h_e);
        break;
    }
    s.gain_db = linear_to_db(s.gain);
    return s;
}

// Distances 2 h_t h_r / (k lambda) where the two-ray gain vanishes, restricted to [d0, d_break),
// in decreasing order (k = 1, 2, ...).
inline std::vector<double> two_ray_nulls(const GeometryRadioParams &g)
{
    std::vector<double> nulls;
    const double base = 2.0 * g.h_t * g.h_r / g.wavelength();
    for (int k = 1;; ++k)
    {
        const double d = base / k;
        if (d < g.d0)
            break;
        if (d < g.d_break())
            nulls.push_back(d);
    }
    return nulls;
}

} // namespace etvmftr

#endif
