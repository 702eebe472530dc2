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

#include "mmwlink/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace mmwlink
{

arma::cx_mat channel_gain_matrix(const arma::cx_mat &q, const arma::cx_mat &true_h, const arma::cx_mat &f,
                                 const arma::vec &p)
{
    if (q.n_rows != true_h.n_rows || f.n_rows != true_h.n_cols)
        throw std::invalid_argument("channel_gain_matrix: channel/precoder dimensions do not match");

    if (p.n_elem != f.n_cols)
        throw std::invalid_argument("channel_gain_matrix: power vector does not match stream count");

    if (p.min() < 0.0)
        throw std::invalid_argument("channel_gain_matrix: negative stream power");

    arma::cx_mat g = q.t() * true_h * f;
    g.each_row() %= arma::conv_to<arma::cx_rowvec>::from(arma::sqrt(p).t());
    return g;
}

arma::vec estimation_error_variance(const arma::cx_mat &gain_est, const arma::cx_mat &gain_ideal)
{
    if (gain_est.n_rows != gain_ideal.n_rows || gain_est.n_cols != gain_ideal.n_cols)
        throw std::invalid_argument("estimation_error_variance: gain matrices differ in size");

    arma::cx_mat err = gain_est - gain_ideal;
    arma::vec row_power = arma::sum(arma::square(arma::abs(err)), 1);
    return row_power / static_cast<double>(err.n_rows);
}

arma::vec stream_sinr(const arma::cx_mat &gain, const arma::vec &error_var, double sigma_w_sq, double sigma_d_sq,
                      double sigma_q_rx_sq, const arma::vec &q_col_norms, bool *degenerate)
{
    const arma::uword l = gain.n_rows;
    if (gain.n_cols != l)
        throw std::invalid_argument("stream_sinr: gain matrix must be square");

    if (error_var.n_elem != l || q_col_norms.n_elem != l)
        throw std::invalid_argument("stream_sinr: vector lengths do not match gain size");

    if (sigma_w_sq < 0.0 || sigma_d_sq < 0.0 || sigma_q_rx_sq < 0.0 || error_var.min() < 0.0)
        throw std::invalid_argument("stream_sinr: variances must be non-negative");

    arma::mat gain_sq = arma::square(arma::abs(gain));
    arma::vec sinr(l, arma::fill::zeros);
    for (arma::uword mu = 0; mu < l; mu++)
    {
        double desired = gain_sq(mu, mu);
        double interference = arma::accu(gain_sq.row(mu)) - desired;
        double sigma_tot_sq = error_var(mu) + sigma_w_sq + sigma_d_sq + sigma_q_rx_sq;
        double denom = interference + sigma_tot_sq * q_col_norms(mu) * q_col_norms(mu);
        if (denom > 0.0)
        {
            sinr(mu) = desired / denom;
        }
        else if (degenerate != nullptr)
        {
            *degenerate = true;
        }
    }
    return sinr;
}

double spectral_efficiency(const std::vector<arma::vec> &sinr)
{
    if (sinr.empty())
        throw std::invalid_argument("spectral_efficiency: no subcarriers");

    double sum = 0.0;
    for (const auto &v : sinr)
    {
        if (!v.is_finite() || (v.n_elem > 0 && v.min() < 0.0))
            throw std::invalid_argument("spectral_efficiency: SINR entries must be finite and non-negative");
        sum += arma::accu(arma::log2(1.0 + v));
    }
    return sum / static_cast<double>(sinr.size());
}

double energy_efficiency(double se, double p_tot_mw)
{
    if (!(p_tot_mw > 0.0))
        throw std::domain_error("energy_efficiency: total power must be positive");

    return se / (p_tot_mw / 1000.0);
}

} // namespace mmwlink
