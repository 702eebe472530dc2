// SPDX-License-Identifier: Apache-2.0
//
// mmwlink - link-level simulator for mmWave MIMO-OFDM with low-resolution converters
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

#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmwlink/common.hpp"
#include "mmwlink/harness.hpp"
#include "mmwlink/precoding.hpp"

using Catch::Approx;
using namespace mmwlink;

namespace
{

// A quick configuration for tests that only need the pipeline shape.
LinkConfig small_config()
{
    LinkConfig cfg;
    cfg.m_tx = 4;
    cfg.m_rx = 4;
    cfg.n = 16;
    cfg.num_taps = 2;
    cfg.num_clusters = 4;
    cfg.bits = QuantizerSpec::with_bits(4);
    cfg.trials = 8;
    cfg.seed = 5;
    return cfg;
}

} // namespace

TEST_CASE("link trials are deterministic in (seed, trial index)")
{
    LinkConfig cfg = small_config();
    TrialResult a = run_link_trial(cfg, 3);
    TrialResult b = run_link_trial(cfg, 3);
    CHECK(a.se == b.se);
    REQUIRE(a.sinr.size() == b.sinr.size());
    for (std::size_t k = 0; k < a.sinr.size(); k++)
        CHECK(arma::norm(a.sinr[k] - b.sinr[k]) == 0.0);

    TrialResult c = run_link_trial(cfg, 4);
    CHECK(c.se != a.se);

    CHECK(a.se > 0.0);
    CHECK(std::isfinite(a.se));
}

TEST_CASE("an ideal flat link attains the water-filling capacity")
{
    // Flat channel, infinite resolution, no RF impairments, vanishing
    // noise: training is exact, so the trial's SE must match the breakdown
    // capacity sum log2(1 + p_l sigma_l^2 / sigma_w^2) computed from the
    // true channel directly.
    LinkConfig cfg;
    cfg.m_tx = 4;
    cfg.m_rx = 4;
    cfg.n = 16;
    cfg.num_taps = 1;
    cfg.num_clusters = 4;
    cfg.snr_db = 200.0;
    cfg.sigma_rf_sq_db = -arma::datum::inf;
    cfg.seed = 7;

    TrialResult trial = run_link_trial(cfg, 0);

    const std::uint64_t trial_seed = derive_seed(cfg.seed, 0);
    ChannelRealization channel = generate_channel(cfg.channel_params(), derive_seed(trial_seed, 0));
    const double sigma_w_sq = cfg.sigma_w_sq();
    double capacity = 0.0;
    for (const auto &h : channel.h)
    {
        SvdResult res = svd_precoder(h);
        arma::vec p = water_fill(res.sigma, cfg.p_t, sigma_w_sq);
        for (arma::uword l = 0; l < p.n_elem; l++)
            capacity += std::log2(1.0 + p(l) * res.sigma(l) * res.sigma(l) / sigma_w_sq);
    }
    capacity /= static_cast<double>(cfg.n);

    CHECK(trial.se == Approx(capacity).epsilon(0.01));
}

TEST_CASE("sweep aggregation")
{
    SECTION("one trial: the mean is that trial and the stderr is zero")
    {
        LinkConfig cfg = small_config();
        cfg.trials = 1;
        SweepResult res = run_sweep({cfg});
        REQUIRE(res.rows.size() == 1);
        REQUIRE(res.rows[0].ok);
        CHECK(res.rows[0].mean_se == run_link_trial(cfg, 0).se);
        CHECK(res.rows[0].se_stderr == 0.0);
    }

    SECTION("identical configs produce identical rows")
    {
        LinkConfig cfg = small_config();
        SweepResult res = run_sweep({cfg, cfg});
        REQUIRE(res.rows.size() == 2);
        CHECK(res.rows[0].mean_se == res.rows[1].mean_se);
        CHECK(res.rows[0].se_stderr == res.rows[1].se_stderr);
        CHECK(res.rows[0].p_tot_mw == res.rows[1].p_tot_mw);
    }

    SECTION("row metadata follows the config")
    {
        LinkConfig cfg = small_config();
        cfg.estimator = EstimatorKind::omp;
        cfg.k_factor_db = 3.0;
        SweepResult res = run_sweep({cfg});
        const SweepRow &row = res.rows[0];
        CHECK(row.m_tx == 4);
        CHECK(row.m_rx == 4);
        CHECK(row.bits == QuantizerSpec::with_bits(4));
        CHECK(row.k_factor_db == 3.0);
        CHECK(row.estimator == EstimatorKind::omp);
        CHECK(row.p_tot_mw > 0.0);
        CHECK(row.mean_ee == Approx(row.mean_se / (row.p_tot_mw / 1000.0)));
    }

    SECTION("power columns are NaN without a billable resolution")
    {
        LinkConfig cfg = small_config();
        cfg.bits = QuantizerSpec::infinite();
        SweepResult res = run_sweep({cfg});
        REQUIRE(res.rows[0].ok);
        CHECK(std::isnan(res.rows[0].p_tot_mw));
        CHECK(std::isnan(res.rows[0].mean_ee));

        cfg.power_bits = 4;
        SweepResult priced = run_sweep({cfg});
        CHECK(priced.rows[0].p_tot_mw > 0.0);
        CHECK(std::isfinite(priced.rows[0].mean_ee));
    }

    SECTION("a failing config yields an error row and the sweep continues")
    {
        LinkConfig good = small_config();
        LinkConfig bad = small_config();
        bad.m_tx = 3; // does not divide n = 16
        SweepResult res = run_sweep({good, bad, good});
        REQUIRE(res.rows.size() == 3);
        CHECK(res.rows[0].ok);
        CHECK_FALSE(res.rows[1].ok);
        CHECK_FALSE(res.rows[1].error.empty());
        CHECK(res.rows[2].ok);
        CHECK(res.rows[0].mean_se == res.rows[2].mean_se);
    }

    SECTION("an empty config list is rejected")
    {
        CHECK_THROWS_AS(run_sweep({}), std::invalid_argument);
    }
}

TEST_CASE("standard error shrinks like one over root trials")
{
    LinkConfig cfg = small_config();
    cfg.trials = 100;
    double se_100 = run_sweep({cfg}).rows[0].se_stderr;
    cfg.trials = 400;
    double se_400 = run_sweep({cfg}).rows[0].se_stderr;
    REQUIRE(se_400 > 0.0);
    CHECK(se_100 / se_400 > 1.6);
    CHECK(se_100 / se_400 < 2.5);
}

TEST_CASE("more antennas raise the mean spectral efficiency at 4 bits")
{
    LinkConfig base;
    base.n = 64;
    base.bits = QuantizerSpec::with_bits(4);
    base.k_factor_db = -20.0;
    base.trials = 100;
    base.seed = 11;

    LinkConfig eight = base;
    eight.m_tx = eight.m_rx = 8;
    LinkConfig sixteen = base;
    sixteen.m_tx = sixteen.m_rx = 16;

    SweepResult res = run_sweep({eight, sixteen}, 0);
    REQUIRE(res.rows[0].ok);
    REQUIRE(res.rows[1].ok);
    INFO("8x8 SE " << res.rows[0].mean_se << " +- " << res.rows[0].se_stderr << ", 16x16 SE " << res.rows[1].mean_se);
    CHECK(res.rows[1].mean_se > res.rows[0].mean_se);
}

TEST_CASE("averaged mismatch-variance mode")
{
    LinkConfig cfg = small_config();
    cfg.error_var_mode = ErrorVarMode::averaged;

    SweepResult res = run_sweep({cfg});
    REQUIRE(res.rows[0].ok);
    CHECK(res.rows[0].mean_se > 0.0);
    CHECK(std::isfinite(res.rows[0].mean_se));

    // Same bytes regardless of the worker count.
    SweepResult res4 = run_sweep({cfg}, 4);
    CHECK(csv_string(res) == csv_string(res4));
}

TEST_CASE("CSV output")
{
    SECTION("header and formatting are pinned")
    {
        SweepRow row;
        row.m_tx = 8;
        row.m_rx = 8;
        row.bits = QuantizerSpec::with_bits(4);
        row.k_factor_db = -20.0;
        row.estimator = EstimatorKind::conventional;
        row.mean_se = 4.0;
        row.se_stderr = 0.5;
        row.p_tot_mw = 500.0;
        row.mean_ee = 8.0;
        SweepResult res;
        res.rows.push_back(row);

        std::string csv = csv_string(res);
        CHECK(csv == "m_tx,m_rx,bits,k_factor_db,estimator,mean_se_bps_hz,se_stderr,p_tot_mw,mean_ee_bps_hz_w\n"
                     "8,8,4,-20.0000,conventional,4.00000,0.500000,500.000,8.00000\n");
    }

    SECTION("no rows means header only")
    {
        CHECK(csv_string(SweepResult{}) ==
              "m_tx,m_rx,bits,k_factor_db,estimator,mean_se_bps_hz,se_stderr,p_tot_mw,mean_ee_bps_hz_w\n");
    }

    SECTION("infinite resolution prints as inf")
    {
        SweepRow row;
        row.m_tx = 2;
        row.m_rx = 2;
        row.bits = QuantizerSpec::infinite();
        row.mean_se = 1.0;
        row.p_tot_mw = arma::datum::nan;
        row.mean_ee = arma::datum::nan;
        SweepResult res;
        res.rows.push_back(row);
        std::string csv = csv_string(res);
        CHECK(csv.find("2,2,inf,") != std::string::npos);
        CHECK(csv.find("nan") != std::string::npos);
    }

    SECTION("error rows are omitted from the body")
    {
        SweepRow good;
        good.m_tx = 2;
        good.m_rx = 2;
        SweepRow bad;
        bad.ok = false;
        bad.error = "boom";
        SweepResult res;
        res.rows = {good, bad, good};
        std::string csv = csv_string(res);
        std::size_t lines = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
        CHECK(lines == 3); // header + two good rows
        CHECK(csv.find("boom") == std::string::npos);
    }

    SECTION("write_csv round-trips through a file and flags bad paths")
    {
        LinkConfig cfg = small_config();
        cfg.trials = 2;
        SweepResult res = run_sweep({cfg});
        const char *path = "test_harness_roundtrip.csv";
        write_csv(res, path);
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        CHECK(buf.str() == csv_string(res));
        std::remove(path);

        CHECK_THROWS_AS(write_csv(res, "/nonexistent/dir/out.csv"), io_error);
    }

    SECTION("bytes are identical across thread counts")
    {
        LinkConfig cfg = small_config();
        cfg.trials = 12;
        std::string one = csv_string(run_sweep({cfg}, 1));
        std::string four = csv_string(run_sweep({cfg}, 4));
        CHECK(one == four);
    }
}
