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

#include <etvmftr/rng.hpp>
#include <etvmftr/stats.hpp>

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace etvmftr;
using namespace etvmftr::stats;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("probability grid")
{
    const auto p = default_probability_grid();
    REQUIRE(p.size() == 199);
    CHECK_THAT(p.front(), WithinRel(0.005, 1e-12));
    CHECK_THAT(p[99], WithinRel(0.5, 1e-12));
    CHECK_THAT(p.back(), WithinRel(0.995, 1e-12));
}

TEST_CASE("linear-interpolation quantiles")
{
    const std::vector<double> x{10.0, 1.0, 3.0, 4.0, 2.0};
    const std::vector<double> probs{0.0, 0.5, 0.9, 1.0, 0.125};
    const auto q = empirical_quantiles(x, probs);
    CHECK(q[0] == 1.0);
    CHECK(q[1] == 3.0);
    CHECK_THAT(q[2], WithinRel(7.6, 1e-14));
    CHECK(q[3] == 10.0);
    CHECK_THAT(q[4], WithinRel(1.5, 1e-14));
    CHECK_THROWS_AS(empirical_quantiles(std::vector<double>{}, probs), std::invalid_argument);
}

TEST_CASE("law quantiles")
{
    CHECK_THAT(law_quantile(GammaLaw{90.252, 1.0 / 90.252}, 0.9), WithinRel(1.13704820515588, 1e-10));
    CHECK_THAT(law_quantile(RayleighLaw{0.0325637898162016}, 0.5), WithinRel(0.0383409325006831, 1e-10));
    CHECK_THAT(law_quantile(WeibullLaw{1.2, 1e-5}, 0.3), WithinRel(4.2353941722959e-06, 1e-10));
    CHECK_THAT(law_quantile(NormalLaw{0.0, 1.0}, 0.995), WithinRel(2.5758293035489, 1e-10));
    CHECK_THROWS_AS(law_quantile(WeibullFitted{}, 0.5), std::invalid_argument);
}

TEST_CASE("quantile agreement metrics")
{
    const std::vector<double> emp{3, 1, 4, 1, 5, 9, 2, 6};
    const std::vector<double> ref{1, 2, 3, 4, 5, 6, 7, 8};
    const auto [r2, mse] = quantile_agreement(emp, ref);
    CHECK_THAT(r2, WithinAbs(-0.00236406619385332, 1e-12));
    CHECK_THAT(mse, WithinRel(6.625, 1e-14));
    const auto [r2_same, mse_same] = quantile_agreement(ref, ref);
    CHECK(r2_same == 1.0);
    CHECK(mse_same == 0.0);
    CHECK_THROWS_AS(quantile_agreement(std::vector<double>(3, 1.0), std::vector<double>(3, 1.0)),
                    std::invalid_argument);
}

TEST_CASE("Weibull maximum-likelihood fit")
{
    const std::vector<double> x{0.3, 1.1, 0.7, 2.5, 1.9, 0.45, 1.3, 0.9, 3.2, 1.6};
    const auto w = fit_weibull_mle(x);
    CHECK_THAT(w.shape, WithinRel(1.66140138992602, 1e-9));
    CHECK_THAT(w.scale, WithinRel(1.5669061324116, 1e-9));

    std::vector<double> tiny(x);
    for (auto &v : tiny)
        v *= 1e-6;
    const auto wt = fit_weibull_mle(tiny);
    CHECK_THAT(wt.shape, WithinRel(w.shape, 1e-9));
    CHECK_THAT(wt.scale, WithinRel(1.5669061324116e-6, 1e-9));

    RngStream rng(4, stream_id(StreamDomain::test, 0, 0, Process::generic));
    std::vector<double> s(1000000);
    for (auto &v : s)
        v = 1e-5 * std::pow(-std::log1p(-rng.uniform()), 1.0 / 1.2);
    const auto ws = fit_weibull_mle(s);
    CHECK_THAT(ws.shape, WithinRel(1.2, 0.02));
    CHECK_THAT(ws.scale, WithinRel(1e-5, 0.02));

    CHECK_THROWS_AS(fit_weibull_mle(std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_weibull_mle(std::vector<double>{1.0, -1.0}), std::invalid_argument);
}

TEST_CASE("QQ report against a matching law")
{
    RngStream rng(5, stream_id(StreamDomain::test, 0, 0, Process::generic));
    std::vector<double> g(200000);
    for (auto &v : g)
        v = rng.gamma(90.252, 1.0 / 90.252);
    const auto r = qq_metrics("zeta", g, GammaLaw{90.252, 1.0 / 90.252});
    CHECK(r.n_samples == g.size());
    CHECK(r.probs.size() == 199);
    CHECK(r.r_squared > 0.999);
    CHECK(r.mse < 1e-5);
    const auto wrong = qq_metrics("zeta", g, GammaLaw{30.0, 1.0 / 30.0});
    CHECK(wrong.r_squared < r.r_squared);

    const auto fitted = qq_metrics("w", g, WeibullFitted{});
    CHECK(std::holds_alternative<WeibullLaw>(fitted.law));

    CHECK_THROWS_AS(qq_metrics("c", std::vector<double>(10, 2.0), NormalLaw{0, 1}), std::invalid_argument);
}

TEST_CASE("two-sample QQ")
{
    RngStream a(6, 1), b(6, 2);
    std::vector<double> x(100000), y(100000);
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        x[i] = a.normal();
        y[i] = b.normal();
    }
    CHECK(qq_metrics("n", x, std::span<const double>(y)).r_squared > 0.999);
    const auto self = qq_metrics("n", x, std::span<const double>(x));
    CHECK(self.r_squared == 1.0);
    CHECK(self.mse == 0.0);
}

TEST_CASE("exact draws against their own law")
{
    RngStream rng(8, stream_id(StreamDomain::test, 0, 0, Process::generic));
    std::vector<double> n(100000), r(100000);
    const double sigma = 0.0325637898162016;
    for (std::size_t i = 0; i < n.size(); ++i)
    {
        n[i] = rng.normal();
        r[i] = sigma * std::hypot(rng.normal(), rng.normal());
    }
    const auto qn = qq_metrics("X", n, NormalLaw{0.0, 1.0});
    CHECK(qn.r_squared >= 0.999);
    CHECK(qn.mse <= 1e-3);
    CHECK(qq_metrics("abs_Z", r, RayleighLaw{sigma}).r_squared >= 0.999);
}

TEST_CASE("histogram density")
{
    RngStream rng(7, stream_id(StreamDomain::test, 0, 0, Process::generic));
    std::vector<double> x(400000);
    for (auto &v : x)
        v = rng.normal();
    const auto pdf = empirical_pdf(x, 80);
    double area = 0.0, worst = 0.0;
    for (std::size_t i = 0; i < pdf.centers.size(); ++i)
    {
        area += pdf.density[i] * pdf.bin_width;
        const double c = pdf.centers[i];
        worst = std::max(worst, std::abs(pdf.density[i] - std::exp(-c * c / 2) / std::sqrt(two_pi)));
    }
    CHECK_THAT(area, WithinRel(1.0, 1e-12));
    CHECK(worst <= 0.02);

    const auto flat = empirical_pdf(std::vector<double>(5, 3.0), 4);
    CHECK_THAT(flat.bin_width, WithinRel(0.25, 1e-14));
    CHECK_THROWS_AS(empirical_pdf(std::vector<double>{}, 4), std::invalid_argument);
    CHECK_THROWS_AS(empirical_pdf(x, 0), std::invalid_argument);
}

TEST_CASE("moments")
{
    const std::vector<double> x{1, 2, 3, 4};
    CHECK(mean(x) == 2.5);
    CHECK_THAT(variance(x), WithinRel(5.0 / 3.0, 1e-14));
}
