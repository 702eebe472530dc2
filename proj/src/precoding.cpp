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

#include "mmwlink/precoding.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace mmwlink
{

SvdResult svd_precoder(const arma::cx_mat &h_bar)
{
    if (h_bar.n_rows == 0 || h_bar.n_cols == 0)
        throw std::invalid_argument("svd_precoder: empty channel matrix");

    if (!h_bar.is_finite())
        throw std::runtime_error("svd_precoder: channel matrix has non-finite entries");

    SvdResult res;
    if (!arma::svd_econ(res.q, res.sigma, res.f, h_bar))
        throw std::runtime_error("svd_precoder: SVD failed to converge");

    // LAPACK leaves a unit-modulus phase ambiguity per singular-vector pair.
    // Rotate both vectors of each pair so the largest-magnitude entry of the
    // right singular vector is real positive; ties inside a column cannot
    // occur in generic inputs and resolve to the first index otherwise.
    for (arma::uword l = 0; l < res.f.n_cols; l++)
    {
        arma::uword ix = arma::abs(res.f.col(l)).index_max();
        std::complex<double> pivot = res.f(ix, l);
        double mag = std::abs(pivot);
        if (mag > 0.0)
        {
            std::complex<double> rot = std::conj(pivot) / mag;
            res.f.col(l) *= rot;
            res.q.col(l) *= rot;
        }
    }
    return res;
}

arma::vec water_fill(const arma::vec &sigma, double total_power, double noise_power)
{
    if (sigma.n_elem == 0)
        throw std::invalid_argument("water_fill: empty singular value vector");

    if (total_power <= 0.0)
        throw std::invalid_argument("water_fill: total power must be positive");

    if (noise_power <= 0.0)
        throw std::invalid_argument("water_fill: noise power must be positive");

    if (sigma.min() < 0.0)
        throw std::invalid_argument("water_fill: singular values must be non-negative");

    if (sigma.max() <= 0.0)
        throw std::domain_error("water_fill: all singular values are zero (degenerate channel)");

    arma::uword n = sigma.n_elem;

    // Inverse channel-to-noise floors; zero-gain streams get +inf so they
    // never enter the active set.
    arma::vec floors(n);
    for (arma::uword l = 0; l < n; l++)
    {
        double s2 = sigma(l) * sigma(l);
        floors(l) = (s2 > 0.0) ? noise_power / s2 : arma::datum::inf;
    }

    arma::uvec order = arma::sort_index(floors, "ascend");
    arma::vec sorted = floors(order);

    // Walk the breakpoints: the water level with the k lowest floors active
    // is mu_k = (P + sum_{i<k} v_i) / k. The active set is the largest k
    // with mu_k > v_{k-1} (sorted); mu_k is then exact.
    double cumulative = 0.0;
    double level = 0.0;
    arma::uword active = 0;
    for (arma::uword k = 1; k <= n; k++)
    {
        if (!std::isfinite(sorted(k - 1)))
            break;
        cumulative += sorted(k - 1);
        double candidate = (total_power + cumulative) / static_cast<double>(k);
        if (candidate > sorted(k - 1))
        {
            level = candidate;
            active = k;
        }
        else
        {
            break;
        }
    }

    arma::vec p(n, arma::fill::zeros);
    for (arma::uword i = 0; i < active; i++)
        p(order(i)) = level - sorted(i);
    return p;
}

PrecoderSet design_precoders(const std::vector<arma::cx_mat> &h_bar, double total_power, double noise_power)
{
    if (h_bar.empty())
        throw std::invalid_argument("design_precoders: no subcarriers");

    PrecoderSet set;
    set.q.reserve(h_bar.size());
    set.f.reserve(h_bar.size());
    set.sigma.reserve(h_bar.size());
    set.p.reserve(h_bar.size());
    for (const auto &h : h_bar)
    {
        SvdResult svd = svd_precoder(h);
        set.q.push_back(std::move(svd.q));
        set.f.push_back(std::move(svd.f));
        set.p.push_back(water_fill(svd.sigma, total_power, noise_power));
        set.sigma.push_back(std::move(svd.sigma));
    }
    return set;
}

std::vector<arma::cx_vec> simulate_data_transmission(const ChannelRealization &channel, const PrecoderSet &precoders,
                                                     const ImpairmentPowers &impairments, double sigma_w_sq,
                                                     const QuantizerSpec &spec,
                                                     const std::vector<arma::cx_vec> &symbols, Rng &rng)
{
    const std::size_t n = channel.h.size();
    if (precoders.f.size() != n || precoders.q.size() != n || precoders.p.size() != n)
        throw std::invalid_argument("simulate_data_transmission: precoder set does not match subcarrier count");

    if (symbols.size() != n)
        throw std::invalid_argument("simulate_data_transmission: symbol vector count does not match subcarrier count");

    std::vector<arma::cx_vec> received(n);
    for (std::size_t k = 0; k < n; k++)
    {
        const arma::cx_mat &h = channel.h[k];
        const arma::cx_mat &f = precoders.f[k];
        if (symbols[k].n_elem != f.n_cols)
            throw std::invalid_argument("simulate_data_transmission: symbol vector has wrong stream count");

        arma::cx_vec x_bar = f * (arma::sqrt(precoders.p[k]) % symbols[k]);
        x_bar += rng.cnormal_vec(h.n_cols, impairments.sigma_d_sq);

        arma::cx_vec y = precoders.q[k].t() * (h * x_bar + rng.cnormal_vec(h.n_rows, sigma_w_sq));
        received[k] = aqnm_apply(y, spec, impairments.sigma_q_rx_sq, rng);
    }
    return received;
}

} // namespace mmwlink
