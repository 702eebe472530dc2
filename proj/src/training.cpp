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

#include "mmwlink/training.hpp"

namespace mmwlink
{

PilotGrid build_pilot_grid(arma::uword n, arma::uword m_tx)
{
    if (n < 1 || m_tx < 1)
        throw config_error("pilot grid needs positive subcarrier and antenna counts");
    if (n % m_tx != 0)
        throw config_error("number of transmit antennas must divide the number of subcarriers");

    PilotGrid grid;
    grid.num_subcarriers = n;
    grid.num_tx = m_tx;
    grid.occupancy.resize(m_tx);
    const arma::uword per_antenna = n / m_tx;
    for (arma::uword t = 0; t < m_tx; ++t)
    {
        arma::uvec tones(per_antenna);
        for (arma::uword k = 0; k < per_antenna; ++k)
            tones(k) = t + k * m_tx;
        grid.occupancy[t] = tones;
    }
    return grid;
}

std::vector<arma::cx_vec> simulate_training(const ChannelRealization &channel, const PilotGrid &grid,
                                            const ImpairmentPowers &impairments, double sigma_w_sq,
                                            const QuantizerSpec &spec, Rng &rng)
{
    const arma::uword n_sub = grid.num_subcarriers;
    if (channel.h.size() != n_sub)
        throw std::invalid_argument("channel and pilot grid disagree on the subcarrier count");
    const arma::uword m_rx = channel.h.front().n_rows;
    const arma::uword m_tx = channel.h.front().n_cols;
    if (m_tx != grid.num_tx)
        throw std::invalid_argument("channel and pilot grid disagree on the antenna count");

    std::vector<arma::cx_vec> received(n_sub);
    for (arma::uword n = 0; n < n_sub; ++n)
    {
        arma::cx_vec pilot(m_tx, arma::fill::zeros);
        pilot(grid.antenna_for_tone(n)) = grid.symbol;

        const arma::cx_vec d = rng.cnormal_vec(m_tx, impairments.sigma_d_sq);
        const arma::cx_vec w = rng.cnormal_vec(m_rx, sigma_w_sq);
        const arma::cx_vec y = channel.h[n] * (pilot + d) + w;
        received[n] = aqnm_apply(y, spec, impairments.sigma_q_rx_sq, rng);
    }
    return received;
}

ChannelEstimate ls_estimate_interpolate(const std::vector<arma::cx_vec> &received, const PilotGrid &grid)
{
    const arma::uword n_sub = grid.num_subcarriers;
    if (received.size() != n_sub)
        throw std::invalid_argument("received vector count does not match the pilot grid");
    const arma::uword m_rx = received.front().n_elem;
    const arma::uword m_tx = grid.num_tx;

    ChannelEstimate estimate;
    estimate.method_tag = EstimatorKind::conventional;
    estimate.h_tilde.assign(n_sub, arma::cx_mat(m_rx, m_tx, arma::fill::zeros));

    for (arma::uword t = 0; t < m_tx; ++t)
    {
        const arma::uvec &tones = grid.occupancy[t];
        if (tones.n_elem == 0)
            throw std::runtime_error("antenna column has no pilot tones; cannot estimate");

        // Raw LS columns at this antenna's pilot tones.
        arma::cx_mat pilots(m_rx, tones.n_elem);
        for (arma::uword k = 0; k < tones.n_elem; ++k)
            pilots.col(k) = received[tones(k)] / grid.symbol;

        // Fill: hold before the first pilot, interpolate between pilots,
        // hold after the last one.
        arma::uword k = 0;
        for (arma::uword n = 0; n < n_sub; ++n)
        {
            while (k + 1 < tones.n_elem && tones(k + 1) <= n)
                ++k;
            arma::cx_vec value;
            if (n <= tones(0))
                value = pilots.col(0);
            else if (n >= tones(tones.n_elem - 1))
                value = pilots.col(tones.n_elem - 1);
            else
            {
                const double lambda = static_cast<double>(n - tones(k)) / static_cast<double>(tones(k + 1) - tones(k));
                value = (1.0 - lambda) * pilots.col(k) + lambda * pilots.col(k + 1);
            }
            estimate.h_tilde[n].col(t) = value;
        }
    }
    return estimate;
}

} // namespace mmwlink
