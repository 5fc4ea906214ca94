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

#ifndef ETVMFTR_RUNNER_HPP
#define ETVMFTR_RUNNER_HPP

#include "channel.hpp"
#include "config.hpp"
#include "ensemble.hpp"
#include "large_scale.hpp"
#include "link.hpp"
#include "sde.hpp"
#include "stats.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/crc.hpp>
#include <nlohmann/json.hpp>

namespace etvmftr::runner
{

inline constexpr const char *tool_version = "1.0.0";

namespace fs = std::filesystem;

struct CommonOptions
{
    fs::path config;
    std::optional<std::uint64_t> seed;
    fs::path out_dir = ".";
};

inline std::string num(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline ScenarioConfig load_scenario(const CommonOptions &o)
{
    auto cfg = load_config(o.config);
    if (o.seed)
        cfg.seed = *o.seed;
    return cfg;
}

inline fs::path resolve_output(const CommonOptions &o, const fs::path &p)
{
    return p.is_absolute() ? p : o.out_dir / p;
}

inline std::ofstream open_csv(const fs::path &path)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

// CRC-32 of the raw config bytes, hex encoded.
inline std::string config_hash(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    boost::crc_32_type crc;
    crc.process_bytes(bytes.data(), bytes.size());
    char buf[16];
    std::snprintf(buf, sizeof buf, "%08x", crc.checksum());
    return buf;
}

struct RunManifest
{
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string subcommand;
    std::vector<fs::path> outputs;
    std::string tool_version = runner::tool_version;
    double wall_time_s = 0.0;
};

inline void write_manifest(const RunManifest &m, const fs::path &path)
{
    nlohmann::json j;
    j["config_hash"] = m.config_hash;
    j["seed"] = m.seed;
    j["subcommand"] = m.subcommand;
    j["outputs"] = nlohmann::json::array();
    for (const auto &o : m.outputs)
        j["outputs"].push_back(o.string());
    j["tool_version"] = m.tool_version;
    j["wall_time_s"] = m.wall_time_s;
    auto out = open_csv(path);
    out << j.dump(2) << '\n';
}

// ---- pathloss --------------------------------------------------------------

inline void write_pathloss(const ScenarioConfig &cfg, double d_start, double d_stop, double d_step,
                           const fs::path &path)
{
    if (!(d_start > 0.0) || !(d_step > 0.0) || d_stop < d_start)
        throw config_error("pathloss", "need 0 < d-start <= d-stop and d-step > 0");
    if (d_stop > cfg.geometry.d_los())
        throw config_error("pathloss", "d-stop " + num(d_stop) + " m exceeds the radio horizon " +
                                           num(cfg.geometry.d_los()) + " m");
    auto out = open_csv(path);
    out << "d,regime,L_dB\n";
    const auto n = static_cast<std::size_t>(std::floor((d_stop - d_start) / d_step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double d = d_start + static_cast<double>(i) * d_step;
        const auto s = path_loss(d, cfg.geometry);
        out << num(d) << ',' << to_string(s.regime) << ',' << num(s.gain_db) << '\n';
    }
}

// ---- sde-validate ----------------------------------------------------------

inline void write_sde_samples(const ScenarioConfig &cfg, std::size_t n, const fs::path &path,
                              const EnsembleOptions &opt = {})
{
    const auto s = collect_stationary_samples(cfg, n, opt);
    auto out = open_csv(path);
    out << "zeta,X,Y,tau_i,abs_Z\n";
    for (std::size_t i = 0; i < n; ++i)
        out << num(s.zeta[i]) << ',' << num(s.x[i]) << ',' << num(s.y[i]) << ',' << num(s.tau[i]) << ','
            << num(s.abs_z[i]) << '\n';
}

// ---- channel-dump ----------------------------------------------------------

/// Tap set of realization 0 after evolving the state from t = 0 to t.
inline TapSet channel_snapshot(const ScenarioConfig &cfg, double t, double d)
{
    if (!(t >= 0.0))
        throw config_error("channel-dump", "t must be >= 0");
    if (!(d > 0.0) || d > cfg.geometry.d_los())
        throw config_error("channel-dump", "d must lie in (0, d_LOS]");
    const auto dp = derive_secondary_params(cfg.mftr);
    StreamBank bank(cfg.seed, StreamDomain::channel_dump, 0, cfg.mftr.mu);
    RngStream doppler_rng(cfg.seed, stream_id(StreamDomain::channel_dump, 0, 0, Process::doppler));
    auto st = init_state(cfg.mftr, cfg.sde, bank);
    const auto dop = draw_dopplers(cfg.mftr.mu, cfg.geometry.f_d, cfg.geometry.doppler_mode, doppler_rng);
    const auto steps = std::llround(t / cfg.sde.dt);
    for (long long k = 0; k < steps; ++k)
        step_inplace(st, cfg.mftr, cfg.sde, cfg.sde.dt, bank);
    return build_tapset(st, cfg.mftr, dp, cfg.geometry, d, t, dop);
}

inline void write_channel_dump(const ScenarioConfig &cfg, double t, double d, const fs::path &path)
{
    const auto ts = channel_snapshot(cfg, t, d);
    auto out = open_csv(path);
    out << "delay_samples,re,im\n";
    for (const auto &tap : ts.taps)
        out << tap.delay_samples << ',' << num(tap.gain.real()) << ',' << num(tap.gain.imag()) << '\n';
}

// ---- link-sweep ------------------------------------------------------------

inline LinkTrace write_link_sweep(const ScenarioConfig &cfg, double d_start, double d_stop, std::size_t points,
                                  const fs::path &path, const std::optional<fs::path> &envelope_path = {},
                                  unsigned threads = 0)
{
    if (!(d_start > 0.0) || d_stop < d_start || points == 0)
        throw config_error("link-sweep", "need 0 < d-start <= d-stop and points >= 1");
    if (d_stop > cfg.geometry.d_los())
        throw config_error("link-sweep", "d-stop " + num(d_stop) + " m exceeds the radio horizon " +
                                             num(cfg.geometry.d_los()) + " m");
    const auto distances = linspace(d_start, d_stop, points);
    auto trace = run_link_over_distance(cfg, distances, threads);
    auto out = open_csv(path);
    out << "d,regime,snr_db,ber,n_bits,bit_errors,null_subcarriers,max_excess_delay\n";
    for (const auto &r : trace.rows)
        out << num(r.d) << ',' << to_string(r.regime) << ',' << num(r.snr_db) << ',' << num(r.ber) << ',' << r.n_bits
            << ',' << r.bit_errors << ',' << r.null_subcarriers << ',' << r.max_excess_delay << '\n';
    if (envelope_path)
    {
        auto env = open_csv(*envelope_path);
        env << "point,symbol,d,envelope\n";
        for (const auto &e : trace.envelope)
            env << e.point << ',' << e.symbol << ',' << num(e.d) << ',' << num(e.envelope) << '\n';
    }
    return trace;
}

// ---- validate --------------------------------------------------------------

inline std::vector<stats::QqReport> write_validate(const ScenarioConfig &cfg, std::size_t n, const fs::path &path,
                                                   const fs::path &qq_path, const EnsembleOptions &opt = {})
{
    const auto samples = collect_stationary_samples(cfg, n, opt);
    auto reports = stationary_reports(samples, cfg);
    auto out = open_csv(path);
    out << "variable,law,n_samples,r_squared,mse\n";
    for (const auto &r : reports)
        out << r.variable << ',' << stats::describe(r.law) << ',' << r.n_samples << ',' << num(r.r_squared) << ','
            << num(r.mse) << '\n';
    auto qq = open_csv(qq_path);
    qq << "variable,p,empirical,theoretical\n";
    for (const auto &r : reports)
        for (std::size_t i = 0; i < r.probs.size(); ++i)
            qq << r.variable << ',' << num(r.probs[i]) << ',' << num(r.empirical[i]) << ',' << num(r.theoretical[i])
               << '\n';
    return reports;
}

inline fs::path qq_path_for(const fs::path &report)
{
    auto p = report;
    p.replace_filename(report.stem().string() + "_qq" + report.extension().string());
    return p;
}

// ---- envelope PDF ----------------------------------------------------------

inline void write_pdf(std::span<const double> samples, int bins, const fs::path &path)
{
    const auto pdf = stats::empirical_pdf(samples, bins);
    auto out = open_csv(path);
    out << "envelope,density\n";
    for (std::size_t i = 0; i < pdf.centers.size(); ++i)
        out << num(pdf.centers[i]) << ',' << num(pdf.density[i]) << '\n';
}

// ---- reproduce-paper -------------------------------------------------------

struct ReproduceOptions
{
    std::size_t validate_samples = 1'000'000;
    std::size_t sweep_points = 200;
    double d_start = 200.0;
    double d_stop = 20000.0;
    std::size_t pdf_samples = 100'000;
    int pdf_bins = 60;
};

/// Statistical table, SNR/BER sweeps and envelope PDFs for the configured
/// macro-parameters and for the degraded set (K=4.225, Delta=0.999, mu=1, m=38.868).
inline std::vector<fs::path> reproduce(const ScenarioConfig &cfg, const fs::path &out_dir,
                                       const ReproduceOptions &opt = {})
{
    std::vector<fs::path> outputs;
    const auto table = out_dir / "stationary_stats.csv";
    write_validate(cfg, opt.validate_samples, table, qq_path_for(table));
    outputs.push_back(table);
    outputs.push_back(qq_path_for(table));

    const CompositeOptions pdf_design{1000, cfg.sde.T_c};
    const std::pair<const char *, ScenarioConfig> sets[] = {{"", cfg}, {"_degraded", with_degraded_macro_params(cfg)}};
    for (const auto &[suffix, c] : sets)
    {
        const auto sweep = out_dir / (std::string("link_sweep") + suffix + ".csv");
        write_link_sweep(c, opt.d_start, opt.d_stop, opt.sweep_points, sweep);
        outputs.push_back(sweep);
        const auto env = composite_envelope(c, opt.pdf_samples, pdf_design);
        const auto pdf = out_dir / (std::string("envelope_pdf") + suffix + ".csv");
        write_pdf(env, opt.pdf_bins, pdf);
        outputs.push_back(pdf);
    }
    return outputs;
}

} // namespace etvmftr::runner

#endif
