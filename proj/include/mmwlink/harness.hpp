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
//
// Monte Carlo harness: runs link trials, aggregates sweeps, emits CSV.
// Trials are deterministic in (seed, trial_index) and may execute on any
// number of worker threads without changing a single output byte.

#ifndef MMWLINK_HARNESS_HPP
#define MMWLINK_HARNESS_HPP

#include <string>
#include <vector>

#include "mmwlink/config.hpp"

namespace mmwlink
{

// Outcome of one link trial. Besides the SINRs and the SE, the per-stream
// link statistics (desired power, interference power, combiner column
// norms, mismatch variance) are kept so a sweep can re-evaluate the SINR
// with trial-averaged mismatch variances.
struct TrialResult
{
    double se = 0.0;
    bool degenerate = false;             // some stream had a zero SINR denominator
    std::vector<arma::vec> sinr;         // per subcarrier, one entry per stream
    std::vector<arma::vec> error_var;    // precoder-mismatch variance
    std::vector<arma::vec> desired;      // |diagonal gain|^2
    std::vector<arma::vec> interference; // off-diagonal gain power per stream
    std::vector<arma::vec> q_norm_sq;    // squared combiner column norms
};

// One aggregated sweep point. A config that failed carries ok = false and
// the error text instead of numbers. Power and EE are NaN for
// infinite-resolution runs without a power_bits setting.
struct SweepRow
{
    arma::uword m_tx = 0;
    arma::uword m_rx = 0;
    QuantizerSpec bits = QuantizerSpec::infinite();
    double k_factor_db = 0.0;
    EstimatorKind estimator = EstimatorKind::conventional;
    double mean_se = 0.0;
    double se_stderr = 0.0;
    double p_tot_mw = 0.0;
    double mean_ee = 0.0;
    bool ok = true;
    std::string error;
};

struct SweepResult
{
    std::vector<SweepRow> rows;
};

// Full pipeline for one trial: channel generation, pilot training, LS
// estimation + interpolation, the configured estimator, per-subcarrier SVD
// precoding with water-filling, and the stream metrics.
TrialResult run_link_trial(const LinkConfig &config, arma::uword trial_index);

// Runs every config over its trials (parallel across trials; threads = 0
// means hardware concurrency) and aggregates one row per config, in input
// order. A failing config yields an error row; the sweep continues.
SweepResult run_sweep(const std::vector<LinkConfig> &configs, unsigned threads = 1);

// CSV with the fixed header
//   m_tx,m_rx,bits,k_factor_db,estimator,mean_se_bps_hz,se_stderr,p_tot_mw,mean_ee_bps_hz_w
// and 6-significant-digit floats; `bits` prints `inf` for infinite
// resolution. Error rows carry no numbers and are skipped.
std::string csv_string(const SweepResult &result);
void write_csv(const SweepResult &result, const std::string &path);

} // namespace mmwlink

#endif
