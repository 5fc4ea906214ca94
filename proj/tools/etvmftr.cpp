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

// Command-line front end. Exit codes: 0 success, 1 runtime failure,
// 2 usage or configuration error.

#include <etvmftr/runner.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>

namespace
{

using namespace etvmftr;
namespace fs = std::filesystem;

void add_common(CLI::App *sub, runner::CommonOptions &o)
{
    sub->add_option("--config", o.config, "scenario INI file")->required();
    sub->add_option("--seed", o.seed, "override the [run] seed");
    sub->add_option("--out-dir", o.out_dir, "directory for outputs and the manifest");
}

void warn_cp(const ScenarioConfig &cfg, std::int64_t max_excess)
{
    if (max_excess > cfg.link.cp_len)
        std::fprintf(stderr, "warning: max excess delay %lld samples exceeds the cyclic prefix (%d samples)\n",
                     static_cast<long long>(max_excess), cfg.link.cp_len);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ETVMFTR maritime channel simulator"};
    app.set_version_flag("--version", runner::tool_version);
    app.require_subcommand(1);

    runner::CommonOptions pl_o, sv_o, cd_o, ls_o, va_o, rp_o;

    auto *pl = app.add_subcommand("pathloss", "large-scale loss over a distance grid");
    add_common(pl, pl_o);
    double pl_start = 200.0, pl_stop = 20000.0, pl_step = 100.0;
    fs::path pl_out = "pathloss.csv";
    pl->add_option("--d-start", pl_start, "first distance [m]");
    pl->add_option("--d-stop", pl_stop, "last distance [m]");
    pl->add_option("--d-step", pl_step, "distance step [m]");
    pl->add_option("--out", pl_out, "CSV output");

    auto *sv = app.add_subcommand("sde-validate", "stationary SDE samples");
    add_common(sv, sv_o);
    std::size_t sv_n = 100000;
    fs::path sv_out = "sde_samples.csv";
    sv->add_option("--samples", sv_n, "samples per variable")->check(CLI::PositiveNumber);
    sv->add_option("--out", sv_out, "CSV output");

    auto *cd = app.add_subcommand("channel-dump", "tap set at one time and distance");
    add_common(cd, cd_o);
    double cd_t = 0.0, cd_d = 1000.0;
    fs::path cd_out = "channel.csv";
    cd->add_option("--t", cd_t, "time [s]");
    cd->add_option("--d", cd_d, "distance [m]");
    cd->add_option("--out", cd_out, "CSV output");

    auto *ls = app.add_subcommand("link-sweep", "OFDM/16-QAM SNR and BER versus distance");
    add_common(ls, ls_o);
    double ls_start = 200.0, ls_stop = 20000.0;
    std::size_t ls_points = 200;
    unsigned ls_threads = 0;
    fs::path ls_out = "link_sweep.csv";
    std::optional<fs::path> ls_env;
    ls->add_option("--d-start", ls_start, "first distance [m]");
    ls->add_option("--d-stop", ls_stop, "last distance [m]");
    ls->add_option("--points", ls_points, "number of distances")->check(CLI::PositiveNumber);
    ls->add_option("--threads", ls_threads, "worker threads (0 = hardware)");
    ls->add_option("--out", ls_out, "CSV output");
    ls->add_option("--envelope-out", ls_env, "per-symbol small-scale envelope CSV");

    auto *va = app.add_subcommand("validate", "Q-Q agreement of the stationary laws");
    add_common(va, va_o);
    std::size_t va_n = 1000000;
    fs::path va_out = "validate.csv";
    va->add_option("--samples", va_n, "samples per variable")->check(CLI::PositiveNumber);
    va->add_option("--out", va_out, "report CSV (Q-Q pairs go to <stem>_qq.csv)");

    auto *rp = app.add_subcommand("reproduce-paper", "statistical table, link sweeps and envelope PDFs");
    add_common(rp, rp_o);
    runner::ReproduceOptions rp_opt;
    rp->add_option("--samples", rp_opt.validate_samples, "samples per variable")->check(CLI::PositiveNumber);
    rp->add_option("--points", rp_opt.sweep_points, "link-sweep distances")->check(CLI::PositiveNumber);
    rp->add_option("--pdf-samples", rp_opt.pdf_samples, "envelope samples per set")->check(CLI::PositiveNumber);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App *active = app.get_subcommands().front();
    const std::string name = active->get_name();
    runner::CommonOptions &common = name == "pathloss"       ? pl_o
                                    : name == "sde-validate" ? sv_o
                                    : name == "channel-dump" ? cd_o
                                    : name == "link-sweep"   ? ls_o
                                    : name == "validate"     ? va_o
                                                             : rp_o;

    const auto t0 = std::chrono::steady_clock::now();
    ScenarioConfig cfg;
    runner::RunManifest manifest;
    try
    {
        if (!fs::exists(common.config))
            throw config_error("config", "file '" + common.config.string() + "' does not exist");
        cfg = runner::load_scenario(common);
        fs::create_directories(common.out_dir);
        manifest.config_hash = runner::config_hash(common.config);
        manifest.seed = cfg.seed;
        manifest.subcommand = name;

        auto out = [&](const fs::path &p)
        {
            const auto r = runner::resolve_output(common, p);
            manifest.outputs.push_back(r);
            return r;
        };

        if (name == "pathloss")
            runner::write_pathloss(cfg, pl_start, pl_stop, pl_step, out(pl_out));
        else if (name == "sde-validate")
            runner::write_sde_samples(cfg, sv_n, out(sv_out));
        else if (name == "channel-dump")
        {
            const auto path = out(cd_out);
            runner::write_channel_dump(cfg, cd_t, cd_d, path);
            warn_cp(cfg, runner::channel_snapshot(cfg, cd_t, cd_d).max_excess_delay());
        }
        else if (name == "link-sweep")
        {
            std::optional<fs::path> env;
            if (ls_env)
                env = out(*ls_env);
            const auto trace = runner::write_link_sweep(cfg, ls_start, ls_stop, ls_points, out(ls_out), env, ls_threads);
            std::int64_t worst = 0;
            for (const auto &r : trace.rows)
                worst = std::max(worst, r.max_excess_delay);
            warn_cp(cfg, worst);
        }
        else if (name == "validate")
        {
            const auto report = out(va_out);
            runner::write_validate(cfg, va_n, report, out(runner::qq_path_for(va_out)));
        }
        else
        {
            for (const auto &p : runner::reproduce(cfg, common.out_dir, rp_opt))
                manifest.outputs.push_back(p);
        }
    }
    catch (const config_error &e)
    {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }

    manifest.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try
    {
        runner::write_manifest(manifest, common.out_dir / (name + ".manifest.json"));
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
