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

#ifndef ETVMFTR_CONFIG_HPP
#define ETVMFTR_CONFIG_HPP

#include "core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace etvmftr
{

// How the per-component diffuse scale sigma is obtained from (K, mu).
//   consistent    : sigma^2 = 1 / (2 mu (1 + K)), unit total mean power
//   paper_literal : sigma   = (2 mu (1 + K))^(-1/4), kept for reproduction studies
enum class SigmaFormula
{
    consistent,
    paper_literal
};

enum class DopplerMode
{
    shared, // every ray and cluster at f_d
    jakes   // f_d * cos(theta), theta ~ U(0, 2 pi)
};

// Small-scale macro-parameters of the multi-cluster fluctuating two-ray model.
struct MftrParams
{
    double K = 10.788;     // specular-to-diffuse power ratio
    double Delta = 0.29;   // similarity of the two LOS rays, [0, 1]
    int mu = 40;           // number of clusters
    double m = 90.252;     // shadowing severity
    std::vector<double> U; // specular amplitude per cluster (size mu); empty means all zero
    SigmaFormula sigma_formula = SigmaFormula::consistent;

    double specular_power() const
    {
        return std::accumulate(U.begin(), U.end(), 0.0, [](double acc, double u) { return acc + u * u; });
    }
    double cluster_specular(int i) const { return U.empty() ? 0.0 : U[static_cast<std::size_t>(i)]; }
};

struct DerivedParams
{
    double sigma = 0.0;
    double V1 = 0.0;
    double V2 = 0.0;
    double norm = 1.0; // sqrt(V1^2 + V2^2 + sum U_i^2 + 2 mu sigma^2)
};

struct GeometryRadioParams
{
    double h_t = 8.0;         // transmitter height, m
    double h_r = 15.0;        // receiver height, m
    double h_e = 35.0;        // effective duct height, m
    double d0 = 200.0;        // start of the two-ray region, m
    double R_earth = 6.371e6; // m
    double f_c = 5e9;         // carrier, Hz
    double f_d = 100.0;       // maximum Doppler, Hz
    double f_s = 20e6;        // sampling rate, Hz
    double P_t_dbm = 40.0;
    double P_w_dbm = -100.0;
    double G_t_db = 0.0;
    double G_r_db = 0.0;
    double v = 25.0 / 3.6; // m/s
    DopplerMode doppler_mode = DopplerMode::shared;

    double wavelength() const { return speed_of_light / f_c; }
    double d_break() const { return 4.0 * h_t * h_r / wavelength(); }
    double d_los() const
    {
        return std::sqrt(h_t * h_t + 2.0 * h_t * R_earth) + std::sqrt(h_r * h_r + 2.0 * h_r * R_earth);
    }
    // Received power scale P_t G_t G_r in mW.
    double rx_power_mw() const { return db_to_linear(P_t_dbm + G_t_db + G_r_db); }
    double noise_power_mw() const { return db_to_linear(P_w_dbm); }
};

struct SdeParams
{
    double C_phi = two_pi; // rad^2/s
    double C_tau = 1e-10;  // s^2
    double T_c = 10e-3;    // s
    double dt = 1e-4;      // s
};

struct LinkParams
{
    int n_subcarriers = 1024;
    int n_guard = 64;
    int cp_len = 256;
    int qam_order = 16;
    int symbols_per_point = 20;

    int n_occupied() const { return n_subcarriers - n_guard; }
};

struct ScenarioConfig
{
    MftrParams mftr;
    GeometryRadioParams geometry;
    SdeParams sde;
    LinkParams link;
    std::uint64_t seed = 1;
};

/// Checks the MFTR invariants. Throws config_error naming the field.
inline void validate(const MftrParams &p)
{
    if (!(p.K > 0.0) || !std::isfinite(p.K))
        throw config_error("mftr.K", "must be > 0");
    if (!(p.Delta >= 0.0 && p.Delta <= 1.0))
        throw config_error("mftr.Delta", "must lie in [0, 1]");
    if (p.mu < 1)
        throw config_error("mftr.mu", "must be >= 1");
    if (!(p.m >= 1.0) || !std::isfinite(p.m))
        throw config_error("mftr.m", "must be >= 1 (Feller condition of the shadowing process)");
    if (!p.U.empty())
    {
        if (p.U.size() != static_cast<std::size_t>(p.mu))
            throw config_error("mftr.U", "must hold exactly mu values");
        for (double u : p.U)
            if (!(u >= 0.0) || !std::isfinite(u))
                throw config_error("mftr.U", "amplitudes must be finite and >= 0");
    }
}

/// Derives sigma, V1, V2 and the power normalizer from the macro-parameters.
///
/// With U = 0 the LOS amplitudes follow the closed form
///   V1,2 = sqrt(sigma^2 mu K (1 +/- sqrt(1 - Delta^2))).
/// With a non-zero U they are re-derived from the K and Delta identities
///   V1^2 + V2^2 = 2 sigma^2 mu K - sum U^2,   V1 V2 = Delta sigma^2 mu K,
/// which requires the cluster speculars to leave enough power for the requested Delta.
inline DerivedParams derive_secondary_params(const MftrParams &p)
{
    validate(p);
    const double two_mu_1k = 2.0 * p.mu * (1.0 + p.K);
    DerivedParams out;
    out.sigma = p.sigma_formula == SigmaFormula::consistent ? std::sqrt(1.0 / two_mu_1k)
                                                            : std::sqrt(1.0 / std::sqrt(two_mu_1k));
    const double s2 = out.sigma * out.sigma;
    const double los_scale = s2 * p.mu * p.K;
    const double sum_u2 = p.specular_power();

    if (sum_u2 == 0.0)
    {
        const double root = std::sqrt(1.0 - p.Delta * p.Delta);
        out.V1 = std::sqrt(los_scale * (1.0 + root));
        out.V2 = std::sqrt(los_scale * (1.0 - root));
    }
    else
    {
        const double S = 2.0 * los_scale - sum_u2;
        const double P = p.Delta * los_scale;
        const double disc = S * S - 4.0 * P * P;
        if (S <= 0.0 || disc < 0.0)
            throw config_error("mftr.U", "cluster specular power too large for the requested K and Delta");
        out.V1 = std::sqrt(0.5 * (S + std::sqrt(disc)));
        out.V2 = std::sqrt(std::max(0.0, 0.5 * (S - std::sqrt(disc))));
    }
    out.norm = std::sqrt(out.V1 * out.V1 + out.V2 * out.V2 + sum_u2 + 2.0 * p.mu * s2);
    return out;
}

inline void validate(const GeometryRadioParams &g)
{
    auto positive = [](double v, const char *field) {
        if (!(v > 0.0) || !std::isfinite(v))
            throw config_error(field, "must be > 0");
    };
    positive(g.h_t, "geometry.h_t");
    positive(g.h_r, "geometry.h_r");
    positive(g.h_e, "geometry.h_e");
    positive(g.d0, "geometry.d0");
    positive(g.R_earth, "geometry.R_earth");
    positive(g.f_c, "radio.f_c_ghz");
    positive(g.f_s, "radio.f_s_mhz");
    if (!(g.f_d >= 0.0) || !std::isfinite(g.f_d))
        throw config_error("radio.f_d_hz", "must be >= 0");
    if (!(g.v >= 0.0) || !std::isfinite(g.v))
        throw config_error("radio.v_kmh", "must be >= 0");
    if (!std::isfinite(g.P_t_dbm))
        throw config_error("radio.P_t_dbm", "must be finite");
    if (std::isnan(g.P_w_dbm) || g.P_w_dbm == std::numeric_limits<double>::infinity())
        throw config_error("radio.P_w_dbm", "must be finite or -inf");
    if (!std::isfinite(g.G_t_db))
        throw config_error("radio.G_t_db", "must be finite");
    if (!std::isfinite(g.G_r_db))
        throw config_error("radio.G_r_db", "must be finite");
    if (!(g.h_e > std::max(g.h_t, g.h_r)))
        throw config_error("geometry.h_e", "duct height must exceed both antenna heights");
    if (!(g.d0 < g.d_break()))
        throw config_error("geometry.d0", "must be below the breakpoint distance 4 h_t h_r / lambda");
    if (!(g.d_break() < g.d_los()))
        throw config_error("geometry.h_t", "breakpoint distance lies beyond the radio horizon");
}

inline void validate(const SdeParams &s, const MftrParams &p)
{
    if (!(s.C_phi >= 0.0) || !std::isfinite(s.C_phi))
        throw config_error("sde.C_phi", "must be >= 0");
    if (!(s.C_tau >= 0.0) || !std::isfinite(s.C_tau))
        throw config_error("sde.C_tau", "must be >= 0");
    if (!(s.T_c > 0.0) || !std::isfinite(s.T_c))
        throw config_error("sde.T_c_ms", "must be > 0");
    if (!(s.dt > 0.0 && s.dt <= s.T_c))
        throw config_error("sde.dt_s", "must satisfy 0 < dt <= T_c");
    if (p.m * s.dt >= 1.0)
        throw config_error("sde.dt_s", "m * dt must stay below 1 for the explicit scheme");
}

inline void validate(const LinkParams &l)
{
    if (l.n_subcarriers < 2)
        throw config_error("link.n_subcarriers", "must be >= 2");
    if (l.n_guard < 0 || l.n_guard >= l.n_subcarriers || l.n_guard % 2 != 0)
        throw config_error("link.n_guard", "must be even and in [0, n_subcarriers)");
    if (l.cp_len < 0 || l.cp_len > l.n_subcarriers)
        throw config_error("link.cp_len", "must be in [0, n_subcarriers]");
    if (l.qam_order != 16)
        throw config_error("link.qam_order", "only 16-QAM is supported");
    if (l.symbols_per_point < 1)
        throw config_error("link.symbols_per_point", "must be >= 1");
}

inline void validate(const ScenarioConfig &c)
{
    validate(c.mftr);
    validate(c.geometry);
    validate(c.sde, c.mftr);
    validate(c.link);
}

namespace detail
{

using boost::property_tree::ptree;

inline double parse_double(const std::string &field, const std::string &text)
{
    std::size_t used = 0;
    double v = 0.0;
    try
    {
        v = std::stod(text, &used);
    }
    catch (const std::exception &)
    {
        throw config_error(field, "not a number: '" + text + "'");
    }
    while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used])))
        ++used;
    if (used != text.size())
        throw config_error(field, "not a number: '" + text + "'");
    return v;
}

inline std::optional<std::string> lookup(const ptree &tree, const std::string &field)
{
    if (auto v = tree.get_optional<std::string>(ptree::path_type(field, '.')))
        return *v;
    return std::nullopt;
}

inline double required(const ptree &tree, const std::string &field)
{
    auto v = lookup(tree, field);
    if (!v)
        throw config_error(field, "missing key");
    return parse_double(field, *v);
}

inline double optional(const ptree &tree, const std::string &field, double fallback)
{
    auto v = lookup(tree, field);
    return v ? parse_double(field, *v) : fallback;
}

inline int as_int(const std::string &field, double v)
{
    if (v != std::floor(v) || std::abs(v) > 1e9)
        throw config_error(field, "must be an integer");
    return static_cast<int>(v);
}

} // namespace detail

/// Parses the sectioned key = value scenario format. Values are given in the
/// engineering units (GHz, MHz, dBm, km/h, ms) and converted to SI.
inline ScenarioConfig parse_config(std::istream &in)
{
    using detail::optional;
    using detail::required;
    detail::ptree tree;
    try
    {
        boost::property_tree::ini_parser::read_ini(in, tree);
    }
    catch (const boost::property_tree::ini_parser_error &e)
    {
        throw config_error("config", "line " + std::to_string(e.line()) + ": " + e.message());
    }

    ScenarioConfig c;
    auto &p = c.mftr;
    p.K = required(tree, "mftr.K");
    p.Delta = required(tree, "mftr.Delta");
    p.mu = detail::as_int("mftr.mu", required(tree, "mftr.mu"));
    p.m = required(tree, "mftr.m");
    if (auto u = detail::lookup(tree, "mftr.U"))
    {
        std::string text = *u;
        std::replace(text.begin(), text.end(), ',', ' ');
        std::istringstream ss(text);
        std::string item;
        while (ss >> item)
            p.U.push_back(detail::parse_double("mftr.U", item));
    }
    if (auto f = detail::lookup(tree, "mftr.sigma_formula"))
    {
        if (*f == "consistent")
            p.sigma_formula = SigmaFormula::consistent;
        else if (*f == "paper_literal")
            p.sigma_formula = SigmaFormula::paper_literal;
        else
            throw config_error("mftr.sigma_formula", "expected consistent or paper_literal");
    }

    auto &g = c.geometry;
    g.h_t = required(tree, "geometry.h_t");
    g.h_r = required(tree, "geometry.h_r");
    g.h_e = required(tree, "geometry.h_e");
    g.d0 = required(tree, "geometry.d0");
    g.R_earth = optional(tree, "geometry.R_earth", 6.371e6);
    g.f_c = required(tree, "radio.f_c_ghz") * 1e9;
    g.f_d = required(tree, "radio.f_d_hz");
    g.f_s = required(tree, "radio.f_s_mhz") * 1e6;
    g.P_t_dbm = required(tree, "radio.P_t_dbm");
    g.P_w_dbm = required(tree, "radio.P_w_dbm");
    g.G_t_db = required(tree, "radio.G_t_db");
    g.G_r_db = required(tree, "radio.G_r_db");
    g.v = required(tree, "radio.v_kmh") / 3.6;
    if (auto mode = detail::lookup(tree, "radio.doppler_mode"))
    {
        if (*mode == "shared")
            g.doppler_mode = DopplerMode::shared;
        else if (*mode == "jakes")
            g.doppler_mode = DopplerMode::jakes;
        else
            throw config_error("radio.doppler_mode", "expected shared or jakes");
    }

    auto &s = c.sde;
    s.C_phi = required(tree, "sde.C_phi");
    s.C_tau = required(tree, "sde.C_tau");
    s.T_c = required(tree, "sde.T_c_ms") * 1e-3;
    s.dt = optional(tree, "sde.dt_s", s.T_c / 100.0);

    auto &l = c.link;
    l.n_subcarriers = detail::as_int("link.n_subcarriers", optional(tree, "link.n_subcarriers", l.n_subcarriers));
    l.n_guard = detail::as_int("link.n_guard", optional(tree, "link.n_guard", l.n_guard));
    l.cp_len = detail::as_int("link.cp_len", optional(tree, "link.cp_len", l.cp_len));
    l.qam_order = detail::as_int("link.qam_order", optional(tree, "link.qam_order", l.qam_order));
    l.symbols_per_point =
        detail::as_int("link.symbols_per_point", optional(tree, "link.symbols_per_point", l.symbols_per_point));

    if (auto seed = detail::lookup(tree, "run.seed"))
    {
        try
        {
            std::size_t used = 0;
            c.seed = std::stoull(*seed, &used);
            if (used != seed->size())
                throw std::invalid_argument("trailing characters");
        }
        catch (const std::exception &)
        {
            throw config_error("run.seed", "expected an unsigned 64-bit integer");
        }
    }

    if (p.U.empty())
        p.U.assign(static_cast<std::size_t>(std::max(p.mu, 0)), 0.0);
    validate(c);
    return c;
}

inline ScenarioConfig load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("config", "cannot open '" + path.string() + "'");
    return parse_config(in);
}

/// Scenario of the reference maritime link: 5 GHz carrier, 20 MHz sampling,
/// 8 m / 15 m antennas, 35 m duct, 25 km/h vessel.
inline ScenarioConfig reference_scenario()
{
    ScenarioConfig c;
    c.mftr.U.assign(static_cast<std::size_t>(c.mftr.mu), 0.0);
    return c;
}

/// Same scenario with the harsher macro-parameter set (K=4.225, Delta=0.999, mu=1, m=38.868).
inline ScenarioConfig with_degraded_macro_params(ScenarioConfig c)
{
    c.mftr.K = 4.225;
    c.mftr.Delta = 0.999;
    c.mftr.mu = 1;
    c.mftr.m = 38.868;
    c.mftr.U.assign(1, 0.0);
    return c;
}

} // namespace etvmftr

#endif
