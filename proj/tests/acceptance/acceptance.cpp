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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <etvmftr/etvmftr.hpp>
#include <etvmftr/runner.hpp>

#include <boost/crc.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <vector>

using namespace etvmftr;
namespace fs = std::filesystem;

namespace
{

struct Verdict
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

ScenarioConfig reference_config()
{
    return load_config(fs::path(ETVMFTR_SOURCE_DIR) / "configs" / "reference.ini");
}

// ---- 1. statistical table -------------------------------------------------

Verdict statistical_table(double &runtime_limit)
{
    runtime_limit = 120.0;
    const auto cfg = reference_config();
    const auto samples = collect_stationary_samples(cfg, 1'000'000);
    const auto reports = stationary_reports(samples, cfg);
    const std::map<std::string, double> reference_mse{
        {"zeta", 9.9962e-5}, {"X", 8.5040e-4}, {"Y", 9.2193e-4}, {"abs_Z", 1.6018e-5}};

    Verdict v{true, ""};
    for (const auto &r : reports)
    {
        const bool r2_ok = r.r_squared >= 0.998;
        v.pass = v.pass && r2_ok;
        v.detail += "\n      " + r.variable + ": R2=" + fmt("%.5f", r.r_squared) + (r2_ok ? "" : " (<0.998)") +
                    " MSE=" + fmt("%.4g", r.mse);
        if (auto it = reference_mse.find(r.variable); it != reference_mse.end())
        {
            const bool mse_ok = r.mse <= 10.0 * it->second;
            v.pass = v.pass && mse_ok;
            v.detail += " ref=" + fmt("%.4g", it->second) + " log10 ratio=" + fmt("%+.2f", std::log10(r.mse / it->second)) +
                        (mse_ok ? "" : " (>10x ref)");
        }
        if (r.variable == "tau_i")
        {
            const auto &w = std::get<stats::WeibullLaw>(r.law);
            v.detail += " fitted k=" + fmt("%.4f", w.shape) + " scale=" + fmt("%.4g", w.scale);
        }
    }
    return v;
}

// ---- 2. SDE vs i.i.d. composite --------------------------------------------

Verdict composite_oracle(double &runtime_limit)
{
    runtime_limit = 120.0;
    const auto cfg = reference_config();
    const std::size_t n = 100'000;
    const auto sde_w = sde_composite_power(cfg, n, {10000, 0.02, 0});
    const auto iid_w = static_composite_power(cfg, n);
    std::vector<double> sde_env(sde_w), iid_env(iid_w);
    for (auto &x : sde_env)
        x = std::sqrt(x);
    for (auto &x : iid_env)
        x = std::sqrt(x);
    const auto env = stats::qq_metrics("envelope", sde_env, std::span<const double>(iid_env));
    const auto pow = stats::qq_metrics("power", sde_w, std::span<const double>(iid_w));
    return {env.r_squared >= 0.995,
            "envelope R2=" + fmt("%.5f", env.r_squared) + " (power R2=" + fmt("%.5f", pow.r_squared) +
                ", mean SDE=" + fmt("%.4f", stats::mean(sde_w)) + " iid=" + fmt("%.4f", stats::mean(iid_w)) + ")"};
}

// ---- 3. large-scale analytics ----------------------------------------------

Verdict large_scale_analytics(double &runtime_limit)
{
    runtime_limit = 10.0;
    const auto g = reference_config().geometry;
    const long double lambda = 299792458.0L / 5e9L;
    const long double d_break = 4.0L * 8.0L * 15.0L / lambda;
    bool ok = std::abs(g.d_break() - d_break) / d_break <= 1e-6 && std::abs(g.d_break() - 8005.6) <= 0.5;

    const auto nulls = two_ray_nulls(g);
    std::size_t expected_count = 0;
    for (int k = 1;; ++k)
    {
        const long double d = 2.0L * 8.0L * 15.0L / (k * lambda);
        if (d < g.d0)
            break;
        if (d < d_break)
        {
            ++expected_count;
            const auto idx = expected_count - 1;
            ok = ok && idx < nulls.size() && std::abs(nulls[idx] - d) / d <= 1e-6;
        }
    }
    ok = ok && nulls.size() == expected_count;

    // Regime routing against a brute-force re-evaluation at random distances.
    RngStream rng(2024, stream_id(StreamDomain::test, 0, 0, Process::generic));
    const double d_los = g.d_los();
    std::size_t mismatches = 0;
    const long double pi_l = 3.141592653589793238462643383279502884L;
    for (int i = 0; i < 10000; ++i)
    {
        const double d = d_los * (1.0 - rng.uniform());
        const auto s = path_loss(d, g);
        const long double ld = d;
        const long double fs_gain = std::pow(lambda / (4.0L * pi_l * ld), 2.0L);
        const long double sin_tr = std::sin(2.0L * pi_l * 8.0L * 15.0L / (lambda * ld));
        long double expect = 0.0L;
        Regime regime;
        if (ld < 200.0L)
        {
            regime = Regime::fsl;
            expect = fs_gain;
        }
        else if (ld < d_break)
        {
            regime = Regime::two_ray;
            expect = 4.0L * fs_gain * sin_tr * sin_tr;
        }
        else
        {
            regime = Regime::three_ray;
            const long double b = 2.0L * sin_tr * std::sin(2.0L * pi_l * (35.0L - 15.0L) * (35.0L - 8.0L) / (lambda * ld));
            expect = 4.0L * fs_gain * (1.0L + b) * (1.0L + b);
        }
        const long double tol = 1e-9L * 4.0L * fs_gain * 9.0L;
        if (s.regime != regime || std::abs(static_cast<long double>(s.gain) - expect) > tol)
            ++mismatches;
    }
    ok = ok && mismatches == 0;
    return {ok, "d_break=" + fmt("%.4f", g.d_break()) + " m, " + std::to_string(nulls.size()) +
                    " two-ray nulls (k=1 at " + fmt("%.3f", nulls.front()) + " m), routing mismatches " +
                    std::to_string(mismatches) + "/10000"};
}

// ---- 4. AWGN calibration ---------------------------------------------------

Verdict awgn_calibration(double &runtime_limit)
{
    runtime_limit = 120.0;
    Verdict v{true, ""};
    for (double es_n0 : {6.0, 10.0, 14.0})
    {
        const auto r = simulate_awgn_ber(LinkParams{}, es_n0, 10'000'000, 11);
        const double rel = (r.ber - r.analytic) / r.analytic;
        const bool ok = std::abs(rel) <= 0.10;
        v.pass = v.pass && ok;
        v.detail += fmt("%.0f dB: ", es_n0) + "BER=" + fmt("%.5g", r.ber) + " analytic=" + fmt("%.5g", r.analytic) +
                    " (" + fmt("%+.2f%%", 100.0 * rel) + ", " + std::to_string(r.n_bits) + " bits)  ";
    }
    return v;
}

// ---- 5. link sweep structure -----------------------------------------------

Verdict link_sweep_structure(double &runtime_limit)
{
    runtime_limit = 600.0;
    const auto cfg = reference_config();
    const auto d = linspace(200.0, 20000.0, 200);
    const auto trace = run_link_over_distance(cfg, d);
    const auto &rows = trace.rows;
    const double step = d[1] - d[0];

    Verdict v{true, ""};
    const auto nulls = two_ray_nulls(cfg.geometry); // descending distance, k = 1, 2, ...
    int skipped = 0;
    for (std::size_t k = 0; k < nulls.size(); ++k)
    {
        const double null_d = nulls[k];
        // A sampled sweep can only show a null that is separated from its neighbours by several grid steps.
        const double gap_left = k + 1 < nulls.size() ? null_d - nulls[k + 1] : null_d - d.front();
        const double gap_right = k > 0 ? nulls[k - 1] - null_d : cfg.geometry.d_break() - null_d;
        if (std::min(gap_left, gap_right) < 5.0 * step)
        {
            ++skipped;
            continue;
        }
        // Grid minimum within +-50 m of the analytic null.
        std::size_t at = rows.size();
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (std::abs(rows[i].d - null_d) <= 50.0 && (at == rows.size() || rows[i].snr_db < rows[at].snr_db))
                at = i;
        if (at == rows.size())
        {
            v.pass = false;
            v.detail += "\n      null " + fmt("%.1f", null_d) + " m: no grid point within 50 m";
            continue;
        }
        const double lo = null_d - gap_left / 2.0, hi = null_d + gap_right / 2.0;
        double left_max = -1e300, right_max = -1e300;
        bool local_min = true;
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            if (rows[i].d >= lo && rows[i].d < rows[at].d)
                left_max = std::max(left_max, rows[i].snr_db);
            if (rows[i].d > rows[at].d && rows[i].d <= hi)
                right_max = std::max(right_max, rows[i].snr_db);
            if (rows[i].d >= lo && rows[i].d <= hi && rows[i].snr_db < rows[at].snr_db)
                local_min = false;
        }
        const double depth = std::min(left_max, right_max) - rows[at].snr_db;
        const bool depth_ok = local_min && depth >= 20.0;
        const bool ber_ok = std::abs(rows[at].ber - 0.5) <= 0.15;
        v.pass = v.pass && depth_ok && ber_ok;
        v.detail += "\n      null " + fmt("%.1f", null_d) + " m: min at " + fmt("%.1f", rows[at].d) +
                    " m SNR=" + fmt("%.1f", rows[at].snr_db) + " dB depth=" + fmt("%.1f", depth) + " dB" +
                    (depth_ok ? "" : " (need >= 20, local minimum)") + " BER=" + fmt("%.3f", rows[at].ber) +
                    (ber_ok ? "" : " (need 0.5 +- 0.15)");
    }
    std::size_t high = 0, high_bad = 0;
    double worst = 0.0;
    for (const auto &r : rows)
        if (r.snr_db > 20.0)
        {
            ++high;
            worst = std::max(worst, r.ber);
            if (r.ber >= 1e-3)
                ++high_bad;
        }
    v.pass = v.pass && high_bad == 0;
    v.detail += "\n      " + std::to_string(skipped) + " nulls closer than 5 grid steps to a neighbour not resolvable; " +
                std::to_string(high) + " points with SNR > 20 dB, worst BER " + fmt("%.3g", worst) +
                ", violations " + std::to_string(high_bad);
    return v;
}

// ---- 6. envelope PDFs ------------------------------------------------------

struct Shape
{
    bool unimodal;
    double cv;
    double peak_at;
};

Shape envelope_shape(const ScenarioConfig &cfg)
{
    const auto env = composite_envelope(cfg, 100'000, {1000, cfg.sde.T_c, 0});
    const auto pdf = stats::empirical_pdf(env, 60);
    std::vector<double> f(pdf.density.size());
    for (std::size_t i = 0; i < f.size(); ++i)
    {
        const std::size_t a = i == 0 ? 0 : i - 1, b = std::min(i + 1, f.size() - 1);
        double acc = 0.0;
        for (std::size_t j = a; j <= b; ++j)
            acc += pdf.density[j];
        f[i] = acc / static_cast<double>(b - a + 1);
    }
    const auto peak = static_cast<std::size_t>(std::max_element(f.begin(), f.end()) - f.begin());
    const double tol = 0.05 * f[peak];
    bool unimodal = true;
    double run = 0.0;
    for (std::size_t i = 0; i <= peak; ++i)
    {
        run = std::max(run, f[i]);
        unimodal = unimodal && run - f[i] <= tol;
    }
    run = 0.0;
    for (std::size_t i = f.size(); i-- > peak;)
    {
        run = std::max(run, f[i]);
        unimodal = unimodal && run - f[i] <= tol;
    }
    return {unimodal, std::sqrt(stats::variance(env)) / stats::mean(env), pdf.centers[peak]};
}

Verdict envelope_pdfs(double &runtime_limit)
{
    runtime_limit = 600.0;
    const auto cfg = reference_config();
    const auto a = envelope_shape(cfg);
    const auto b = envelope_shape(with_degraded_macro_params(cfg));
    return {a.unimodal && b.unimodal && b.cv > a.cv,
            std::string("reference set: ") + (a.unimodal ? "unimodal" : "multimodal") + " CV=" + fmt("%.4f", a.cv) +
                " mode=" + fmt("%.3f", a.peak_at) + "; degraded set: " + (b.unimodal ? "unimodal" : "multimodal") +
                " CV=" + fmt("%.4f", b.cv) + " mode=" + fmt("%.3f", b.peak_at)};
}

// ---- 7. determinism --------------------------------------------------------

std::map<std::string, std::uint32_t> csv_hashes(const fs::path &dir)
{
    std::map<std::string, std::uint32_t> out;
    for (const auto &e : fs::directory_iterator(dir))
        if (e.path().extension() == ".csv")
        {
            std::ifstream in(e.path(), std::ios::binary);
            const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
            boost::crc_32_type crc;
            crc.process_bytes(bytes.data(), bytes.size());
            out[e.path().filename().string()] = crc.checksum();
        }
    return out;
}

Verdict determinism(double &runtime_limit)
{
    runtime_limit = 1800.0;
    const fs::path root = fs::temp_directory_path() / "etvmftr_acceptance_determinism";
    fs::remove_all(root);
    const std::string cfg = (fs::path(ETVMFTR_SOURCE_DIR) / "configs" / "reference.ini").string();
    const std::vector<std::pair<std::string, std::string>> runs{
        {"pathloss", ""},
        {"sde-validate", "--samples 20000"},
        {"channel-dump", "--t 0.37 --d 2500"},
        {"link-sweep", "--points 12 --envelope-out envelope.csv"},
        {"validate", "--samples 20000"},
        {"reproduce-paper", "--samples 20000 --points 8 --pdf-samples 5000"}};
    Verdict v{true, ""};
    for (const auto &[sub, extra] : runs)
    {
        std::map<std::string, std::uint32_t> hashes[2];
        for (int rep = 0; rep < 2; ++rep)
        {
            const auto dir = root / sub / std::to_string(rep);
            const std::string cmd = std::string("\"") + ETVMFTR_CLI + "\" " + sub + " --config \"" + cfg +
                                    "\" --seed 17 --out-dir \"" + dir.string() + "\" " + extra + " 2>/dev/null";
            if (std::system(cmd.c_str()) != 0)
            {
                v.pass = false;
                v.detail += sub + ": run failed  ";
                break;
            }
            hashes[rep] = csv_hashes(dir);
        }
        const bool same = !hashes[0].empty() && hashes[0] == hashes[1];
        v.pass = v.pass && same;
        v.detail += sub + ": " + std::to_string(hashes[0].size()) + " CSV " + (same ? "identical" : "DIFFER") + "  ";
    }
    fs::remove_all(root);
    return v;
}

// ---- 8. invariants ---------------------------------------------------------

Verdict invariants(double &runtime_limit)
{
    runtime_limit = 600.0;
    const auto cfg = reference_config();
    const int seeds = 100;
    const std::int64_t steps = 100'000;
    std::vector<std::int64_t> violations(seeds, 0);
    parallel_for(static_cast<std::size_t>(seeds), [&](std::size_t s) {
        StreamBank bank(1000 + s, StreamDomain::test, 0, cfg.mftr.mu);
        auto st = init_state(cfg.mftr, cfg.sde, bank);
        for (std::int64_t k = 0; k < steps; ++k)
        {
            step_inplace(st, cfg.mftr, cfg.sde, cfg.sde.dt, bank);
            bool ok = st.zeta >= 0.0 && st.tau1 >= 0.0;
            for (const auto &c : st.clusters)
                ok = ok && c.tau >= 0.0 && st.tau1 <= c.tau;
            violations[s] += ok ? 0 : 1;
        }
    });
    std::int64_t total = 0;
    for (auto n : violations)
        total += n;
    return {total == 0, std::to_string(seeds * steps) + " steps over " + std::to_string(seeds) + " seeds (mu=" +
                            std::to_string(cfg.mftr.mu) + "), violations " + std::to_string(total)};
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Verdict(double &)>>> criteria{
        {"1 statistical table (N=1e6)", statistical_table},
        {"2 SDE vs i.i.d. composite envelope", composite_oracle},
        {"3 large-scale analytics", large_scale_analytics},
        {"4 AWGN 16-QAM calibration", awgn_calibration},
        {"5 link sweep nulls and BER", link_sweep_structure},
        {"6 envelope PDF shape", envelope_pdfs},
        {"7 determinism", determinism},
        {"8 positivity and ordering invariants", invariants}};

    int failed = 0;
    for (const auto &[name, run] : criteria)
    {
        const auto t0 = std::chrono::steady_clock::now();
        double limit = 0.0;
        Verdict v;
        try
        {
            v = run(limit);
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (limit > 0.0 && secs > limit)
        {
            v.pass = false;
            v.detail += " runtime over " + fmt("%.0f", limit) + " s";
        }
        failed += v.pass ? 0 : 1;
        std::printf("%s  criterion %s [%.1f s]: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), secs, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
