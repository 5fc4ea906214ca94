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

#ifndef ETVMFTR_STATS_HPP
#define ETVMFTR_STATS_HPP

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <type_traits>
#include <variant>
#include <vector>

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/rayleigh.hpp>
#include <boost/math/distributions/weibull.hpp>
#include <boost/math/tools/roots.hpp>

namespace etvmftr::stats
{

// 199 evenly spaced probabilities 0.005, 0.010, ..., 0.995.
inline std::vector<double> default_probability_grid()
{
    std::vector<double> p(199);
    for (std::size_t i = 0; i < p.size(); ++i)
        p[i] = 0.005 * static_cast<double>(i + 1);
    return p;
}

/// Linear-interpolation quantiles (h = (n - 1) p) of an already sorted sample.
inline std::vector<double> sorted_quantiles(std::span<const double> sorted, std::span<const double> probs)
{
    if (sorted.empty())
        throw std::invalid_argument("empirical_quantiles: empty sample set");
    std::vector<double> q;
    q.reserve(probs.size());
    const double last = static_cast<double>(sorted.size() - 1);
    for (double p : probs)
    {
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("empirical_quantiles: probability outside [0, 1]");
        const double h = last * p;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const auto hi = std::min(lo + 1, sorted.size() - 1);
        q.push_back(sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]));
    }
    return q;
}

inline std::vector<double> empirical_quantiles(std::span<const double> samples, std::span<const double> probs)
{
    std::vector<double> s(samples.begin(), samples.end());
    std::sort(s.begin(), s.end());
    return sorted_quantiles(s, probs);
}

struct GammaLaw
{
    double shape;
    double scale;
};
struct NormalLaw
{
    double mean;
    double sd;
};
struct RayleighLaw
{
    double sigma;
};
struct WeibullLaw
{
    double shape;
    double scale;
};
// Placeholder: fit a Weibull by maximum likelihood before comparing.
struct WeibullFitted
{
};

using Law = std::variant<GammaLaw, NormalLaw, RayleighLaw, WeibullLaw, WeibullFitted>;

inline double law_quantile(const Law &law, double p)
{
    namespace bm = boost::math;
    return std::visit(
        [p](const auto &l) -> double {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaLaw>)
                return bm::quantile(bm::gamma_distribution<double>(l.shape, l.scale), p);
            else if constexpr (std::is_same_v<T, NormalLaw>)
                return bm::quantile(bm::normal_distribution<double>(l.mean, l.sd), p);
            else if constexpr (std::is_same_v<T, RayleighLaw>)
                return bm::quantile(bm::rayleigh_distribution<double>(l.sigma), p);
            else if constexpr (std::is_same_v<T, WeibullLaw>)
                return bm::quantile(bm::weibull_distribution<double>(l.shape, l.scale), p);
            else
                throw std::invalid_argument("law_quantile: fit the Weibull law first");
        },
        law);
}

inline std::string describe(const Law &law)
{
    return std::visit(
        [](const auto &l) -> std::string {
            using T = std::decay_t<decltype(l)>;
            if constexpr (std::is_same_v<T, GammaLaw>)
                return "Gamma(" + std::to_string(l.shape) + "," + std::to_string(l.scale) + ")";
            else if constexpr (std::is_same_v<T, NormalLaw>)
                return "Normal(" + std::to_string(l.mean) + "," + std::to_string(l.sd) + ")";
            else if constexpr (std::is_same_v<T, RayleighLaw>)
                return "Rayleigh(" + std::to_string(l.sigma) + ")";
            else if constexpr (std::is_same_v<T, WeibullLaw>)
            {
                char buf[96];
                std::snprintf(buf, sizeof buf, "Weibull(%.6g,%.6g)", l.shape, l.scale);
                return buf;
            }
            else
                return "WeibullFitted";
        },
        law);
}

/// Maximum-likelihood Weibull fit. The shape solves
///   sum x^k ln x / sum x^k - 1/k - mean(ln x) = 0,
/// the scale is then (mean x^k)^(1/k). Data are rescaled by their mean for conditioning.
inline WeibullLaw fit_weibull_mle(std::span<const double> samples)
{
    if (samples.size() < 2)
        throw std::invalid_argument("fit_weibull_mle: need at least two samples");
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / static_cast<double>(samples.size());
    std::vector<double> x;
    x.reserve(samples.size());
    for (double v : samples)
    {
        if (!(v > 0.0))
            throw std::invalid_argument("fit_weibull_mle: samples must be strictly positive");
        x.push_back(v / mean);
    }
    const auto mm = std::minmax_element(x.begin(), x.end());
    if (*mm.second - *mm.first <= 1e-12 * *mm.second)
        throw std::invalid_argument("fit_weibull_mle: degenerate (zero-variance) sample");

    std::vector<double> lx(x.size());
    std::transform(x.begin(), x.end(), lx.begin(), [](double v) { return std::log(v); });
    const double mean_log = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(lx.size());

    auto score = [&](double k) {
        double s0 = 0.0, s1 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double xk = std::exp(k * lx[i]);
            s0 += xk;
            s1 += xk * lx[i];
        }
        return s1 / s0 - 1.0 / k - mean_log;
    };
    // The score is increasing in k; bracket the root then refine.
    double lo = 0.05, hi = 1.0;
    while (score(hi) < 0.0 && hi < 1e3)
        hi *= 2.0;
    while (score(lo) > 0.0 && lo > 1e-6)
        lo /= 2.0;
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    const auto root = boost::math::tools::toms748_solve(score, lo, hi, tol, iters);
    const double k = 0.5 * (root.first + root.second);

    double s0 = 0.0;
    for (double v : lx)
        s0 += std::exp(k * v);
    const double scale = std::pow(s0 / static_cast<double>(x.size()), 1.0 / k) * mean;
    return {k, scale};
}

struct QqReport
{
    std::string variable;
    Law law;
    double r_squared = 0.0;
    double mse = 0.0;
    std::size_t n_samples = 0;
    std::vector<double> probs;
    std::vector<double> empirical;
    std::vector<double> theoretical;
};

/// R^2 = 1 - SS_res / SS_tot of empirical against reference quantiles, and their mean squared difference.
inline std::pair<double, double> quantile_agreement(std::span<const double> empirical, std::span<const double> reference)
{
    if (empirical.size() != reference.size() || empirical.empty())
        throw std::invalid_argument("quantile_agreement: size mismatch");
    const double n = static_cast<double>(empirical.size());
    const double mean = std::accumulate(empirical.begin(), empirical.end(), 0.0) / n;
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < empirical.size(); ++i)
    {
        ss_res += (empirical[i] - reference[i]) * (empirical[i] - reference[i]);
        ss_tot += (empirical[i] - mean) * (empirical[i] - mean);
    }
    if (ss_tot <= 0.0)
        throw std::invalid_argument("quantile_agreement: degenerate sample (zero spread of quantiles)");
    return {1.0 - ss_res / ss_tot, ss_res / n};
}

/// Compares sample quantiles with a theoretical law on the probability grid.
inline QqReport qq_metrics(std::string variable, std::span<const double> samples, Law law,
                           std::span<const double> probs = {})
{
    QqReport r;
    r.variable = std::move(variable);
    r.n_samples = samples.size();
    r.probs = probs.empty() ? default_probability_grid() : std::vector<double>(probs.begin(), probs.end());
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    if (sorted.empty())
        throw std::invalid_argument("qq_metrics: empty sample set");
    if (sorted.front() == sorted.back())
        throw std::invalid_argument("qq_metrics: degenerate (zero-variance) sample");
    if (std::holds_alternative<WeibullFitted>(law))
        law = fit_weibull_mle(sorted);
    r.law = law;
    r.empirical = sorted_quantiles(sorted, r.probs);
    r.theoretical.reserve(r.probs.size());
    for (double p : r.probs)
        r.theoretical.push_back(law_quantile(law, p));
    std::tie(r.r_squared, r.mse) = quantile_agreement(r.empirical, r.theoretical);
    return r;
}

/// Two-sample variant: the reference quantiles come from a second sample set.
inline QqReport qq_metrics(std::string variable, std::span<const double> samples, std::span<const double> reference,
                           std::span<const double> probs = {})
{
    QqReport r;
    r.variable = std::move(variable);
    r.n_samples = samples.size();
    r.law = WeibullFitted{};
    r.probs = probs.empty() ? default_probability_grid() : std::vector<double>(probs.begin(), probs.end());
    r.empirical = empirical_quantiles(samples, r.probs);
    r.theoretical = empirical_quantiles(reference, r.probs);
    std::tie(r.r_squared, r.mse) = quantile_agreement(r.empirical, r.theoretical);
    return r;
}

struct Pdf
{
    std::vector<double> centers;
    std::vector<double> density;
    double bin_width = 0.0;
};

/// Histogram density over [min, max] with n_bins equal bins; sums to 1 when multiplied by the bin width.
inline Pdf empirical_pdf(std::span<const double> samples, int n_bins)
{
    if (samples.empty())
        throw std::invalid_argument("empirical_pdf: empty sample set");
    if (n_bins < 1)
        throw std::invalid_argument("empirical_pdf: n_bins must be >= 1");
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = *lo_it, hi = *hi_it;
    if (hi == lo)
    {
        lo -= 0.5;
        hi += 0.5;
    }
    Pdf pdf;
    pdf.bin_width = (hi - lo) / n_bins;
    pdf.centers.resize(static_cast<std::size_t>(n_bins));
    pdf.density.assign(static_cast<std::size_t>(n_bins), 0.0);
    for (int b = 0; b < n_bins; ++b)
        pdf.centers[static_cast<std::size_t>(b)] = lo + (b + 0.5) * pdf.bin_width;
    for (double v : samples)
    {
        auto b = static_cast<std::size_t>((v - lo) / pdf.bin_width);
        pdf.density[std::min(b, pdf.density.size() - 1)] += 1.0;
    }
    const double scale = 1.0 / (static_cast<double>(samples.size()) * pdf.bin_width);
    for (auto &d : pdf.density)
        d *= scale;
    return pdf;
}

inline double mean(std::span<const double> x)
{
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double variance(std::span<const double> x)
{
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x)
        acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size() - 1);
}

} // namespace etvmftr::stats

#endif
