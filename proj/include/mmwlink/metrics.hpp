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
// Link-quality metrics: effective channel gain after precoding/combining,
// precoder mismatch variance, per-stream SINR, spectral efficiency and
// energy efficiency.

#ifndef MMWLINK_METRICS_HPP
#define MMWLINK_METRICS_HPP

#include <armadillo>
#include <vector>

namespace mmwlink
{

// Per-subcarrier gain matrices and stream statistics for one link trial.
struct StreamMetrics
{
    std::vector<arma::cx_mat> gain;      // effective gain, l_max x l_max per subcarrier
    std::vector<arma::vec> error_var;    // precoder-mismatch variance per stream
    std::vector<arma::vec> sinr;         // effective SINR per stream
    double se = 0.0;                     // bits/s/Hz
    double ee = 0.0;                     // bits/s/Hz/W
};

// Effective gain of the combined link: q^H * true_h * f * diag(sqrt(p)).
// With precoders from the true channel this is diag(sigma) * diag(sqrt(p)).
arma::cx_mat channel_gain_matrix(const arma::cx_mat &q, const arma::cx_mat &true_h, const arma::cx_mat &f,
                                 const arma::vec &p);

// Mismatch between the gain matrix under estimated precoders and the ideal
// one: with e = gain_est - gain_ideal, returns diag((1/l_max) * e * e^H),
// i.e. the scaled squared row norms of the mismatch.
arma::vec estimation_error_variance(const arma::cx_mat &gain_est, const arma::cx_mat &gain_ideal);

// Per-stream effective SINR:
//   SINR_mu = |G_{mu,mu}|^2 / ( sum_{nu != mu} |G_{mu,nu}|^2 + sigma_tot^2 * q_col_norms_mu^2 )
// with sigma_tot^2 = error_var_mu + sigma_w_sq + sigma_d_sq + sigma_q_rx_sq.
// q_col_norms holds the Euclidean norm of each combiner column. A stream
// whose denominator is exactly zero scores SINR = 0; if `degenerate` is
// non-null it is set when that happens.
arma::vec stream_sinr(const arma::cx_mat &gain, const arma::vec &error_var, double sigma_w_sq, double sigma_d_sq,
                      double sigma_q_rx_sq, const arma::vec &q_col_norms, bool *degenerate = nullptr);

// (1/N) * sum over subcarriers and streams of log2(1 + SINR).
double spectral_efficiency(const std::vector<arma::vec> &sinr);

// se / (p_tot_mw / 1000): bits/s/Hz per watt.
double energy_efficiency(double se, double p_tot_mw);

} // namespace mmwlink

#endif
