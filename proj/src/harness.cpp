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

#include "mmwlink/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "mmwlink/common.hpp"
#include "mmwlink/estimators.hpp"
#include "mmwlink/metrics.hpp"
#include "mmwlink/precoding.hpp"

namespace mmwlink
{

namespace
{

// The SINR formula of stream_sinr, evaluated from the stored per-stream
// statistics (used when re-scoring with trial-averaged mismatch variances).
arma::vec sinr_from_stats(const arma::vec &desired, const arma::vec &interference, const arma::vec &error_var,
                          const arma::vec &q_norm_sq, double base_noise_sq, bool *degenerate)
{
    arma::vec sinr(desired.n_elem, arma::fill::zeros);
    for (arma::uword mu = 0; mu < desired.n_elem; mu++)
    {
        double denom = interference(mu) + (error_var(mu) + base_noise_sq) * q_norm_sq(mu);
        if (denom > 0.0)
            sinr(mu) = desired(mu) / denom;
        else if (degenerate != nullptr)
            *degenerate = true;
    }
    return sinr;
}

void append_fmt(std::string &out, double value)
{
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%#.6g", value);
    out += buf;
}

} // namespace

TrialResult run_link_trial(const LinkConfig &config, arma::uword trial_index)
{
    config.validate();

    const double sigma_w_sq = config.sigma_w_sq();
    const ChannelParams params = config.channel_params();
    const std::uint64_t trial_seed = derive_seed(config.seed, trial_index);

    ChannelRealization channel = generate_channel(params, derive_seed(trial_seed, 0));
    Rng training_rng(derive_seed(trial_seed, 1));

    const ImpairmentPowers impairments =
        make_impairment_powers(config.sigma_rf_sq(), config.bits, config.m_tx, sigma_w_sq);

    const PilotGrid grid = build_pilot_grid(config.n, config.m_tx);
    const std::vector<arma::cx_vec> received =
        simulate_training(channel, grid, impairments, sigma_w_sq, config.bits, training_rng);
    ChannelEstimate estimate = ls_estimate_interpolate(received, grid);
    if (config.estimator == EstimatorKind::omp)
    {
        const BeamspaceDictionary dict =
            build_dictionary(params.tx_geometry, params.rx_geometry, config.omp_oversampling);
        estimate = omp_estimate(estimate, dict, config.omp_max_paths, config.omp_residual_tol);
    }
    else
    {
        estimate = conventional(std::move(estimate));
    }

    const PrecoderSet est_precoders = design_precoders(estimate.h_tilde, config.p_t, sigma_w_sq);
    const PrecoderSet ideal_precoders = design_precoders(channel.h, config.p_t, sigma_w_sq);

    TrialResult res;
    const std::size_t n = channel.h.size();
    res.sinr.resize(n);
    res.error_var.resize(n);
    res.desired.resize(n);
    res.interference.resize(n);
    res.q_norm_sq.resize(n);
    for (std::size_t k = 0; k < n; k++)
    {
        const arma::cx_mat gain_est =
            channel_gain_matrix(est_precoders.q[k], channel.h[k], est_precoders.f[k], est_precoders.p[k]);
        const arma::cx_mat gain_ideal =
            channel_gain_matrix(ideal_precoders.q[k], channel.h[k], ideal_precoders.f[k], ideal_precoders.p[k]);

        res.error_var[k] = estimation_error_variance(gain_est, gain_ideal);

        const arma::uword l = gain_est.n_rows;
        arma::vec q_norms(l);
        for (arma::uword mu = 0; mu < l; mu++)
            q_norms(mu) = arma::norm(est_precoders.q[k].col(mu));

        res.sinr[k] = stream_sinr(gain_est, res.error_var[k], sigma_w_sq, impairments.sigma_d_sq,
                                  impairments.sigma_q_rx_sq, q_norms, &res.degenerate);

        const arma::mat gain_sq = arma::square(arma::abs(gain_est));
        res.desired[k] = gain_sq.diag();
        res.interference[k] = arma::sum(gain_sq, 1) - gain_sq.diag();
        res.q_norm_sq[k] = arma::square(q_norms);
    }
    res.se = spectral_efficiency(res.sinr);
    return res;
}

SweepResult run_sweep(const std::vector<LinkConfig> &configs, unsigned threads)
{
    if (configs.empty())
        throw std::invalid_argument("run_sweep: empty config list");

    SweepResult out;
    out.rows.reserve(configs.size());
    for (const LinkConfig &config : configs)
    {
        SweepRow row;
        row.m_tx = config.m_tx;
        row.m_rx = config.m_rx;
        row.bits = config.bits;
        row.k_factor_db = config.k_factor_db;
        row.estimator = config.estimator;
        try
        {
            config.validate();

            std::vector<TrialResult> trials(config.trials);
            parallel_for(config.trials, threads,
                         [&](arma::uword t) { trials[t] = run_link_trial(config, t); });

            if (config.error_var_mode == ErrorVarMode::averaged)
            {
                // Replace each trial's mismatch variances by the average
                // across trials, then re-score SINR and SE.
                const std::size_t n = trials.front().error_var.size();
                std::vector<arma::vec> avg(n);
                for (std::size_t k = 0; k < n; k++)
                {
                    avg[k] = trials.front().error_var[k];
                    for (arma::uword t = 1; t < config.trials; t++)
                        avg[k] += trials[t].error_var[k];
                    avg[k] /= static_cast<double>(config.trials);
                }
                const ImpairmentPowers impairments = make_impairment_powers(
                    config.sigma_rf_sq(), config.bits, config.m_tx, config.sigma_w_sq());
                const double base_noise_sq =
                    config.sigma_w_sq() + impairments.sigma_d_sq + impairments.sigma_q_rx_sq;
                for (arma::uword t = 0; t < config.trials; t++)
                {
                    TrialResult &tr = trials[t];
                    for (std::size_t k = 0; k < n; k++)
                        tr.sinr[k] = sinr_from_stats(tr.desired[k], tr.interference[k], avg[k], tr.q_norm_sq[k],
                                                     base_noise_sq, &tr.degenerate);
                    tr.se = spectral_efficiency(tr.sinr);
                }
            }

            arma::vec se(config.trials);
            for (arma::uword t = 0; t < config.trials; t++)
                se(t) = trials[t].se;
            row.mean_se = arma::mean(se);
            row.se_stderr =
                config.trials > 1 ? arma::stddev(se) / std::sqrt(static_cast<double>(config.trials)) : 0.0;

            if (auto bits = config.effective_power_bits())
            {
                row.p_tot_mw = total_power_mw(config.power, config.m_tx, config.m_rx, *bits);
                row.mean_ee = energy_efficiency(row.mean_se, row.p_tot_mw);
            }
            else
            {
                row.p_tot_mw = arma::datum::nan;
                row.mean_ee = arma::datum::nan;
            }
        }
        catch (const std::exception &e)
        {
            row.ok = false;
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

std::string csv_string(const SweepResult &result)
{
    std::string out = "m_tx,m_rx,bits,k_factor_db,estimator,mean_se_bps_hz,se_stderr,p_tot_mw,mean_ee_bps_hz_w\n";
    for (const SweepRow &row : result.rows)
    {
        if (!row.ok)
            continue;
        out += std::to_string(row.m_tx);
        out += ',';
        out += std::to_string(row.m_rx);
        out += ',';
        out += to_string(row.bits);
        out += ',';
        append_fmt(out, row.k_factor_db);
        out += ',';
        out += to_string(row.estimator);
        out += ',';
        append_fmt(out, row.mean_se);
        out += ',';
        append_fmt(out, row.se_stderr);
        out += ',';
        append_fmt(out, row.p_tot_mw);
        out += ',';
        append_fmt(out, row.mean_ee);
        out += '\n';
    }
    return out;
}

void write_csv(const SweepResult &result, const std::string &path)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw io_error("cannot open '" + path + "' for writing");
    const std::string body = csv_string(result);
    file.write(body.data(), static_cast<std::streamsize>(body.size()));
    file.flush();
    if (!file.good())
        throw io_error("write failure on '" + path + "'");
}

} // namespace mmwlink
