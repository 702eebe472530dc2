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

#include "mmwlink/estimators.hpp"

#include "mmwlink/common.hpp"

namespace mmwlink
{

ChannelEstimate conventional(ChannelEstimate estimate)
{
    estimate.method_tag = EstimatorKind::conventional;
    return estimate;
}

BeamspaceDictionary build_dictionary(const ArrayGeometry &tx_geometry, const ArrayGeometry &rx_geometry,
                                     double oversampling)
{
    if (oversampling < 1.0)
        throw config_error("dictionary oversampling must be at least 1");

    auto make_grid = [oversampling](const ArrayGeometry &geometry, arma::cx_mat &atoms, arma::vec &angles)
    {
        const arma::uword count = static_cast<arma::uword>(
            std::ceil(oversampling * static_cast<double>(geometry.num_elements)));
        atoms.set_size(geometry.num_elements, count);
        angles.set_size(count);
        const double norm = 1.0 / std::sqrt(static_cast<double>(geometry.num_elements));
        for (arma::uword k = 0; k < count; ++k)
        {
            const double sin_angle = -1.0 + 2.0 * static_cast<double>(k) / static_cast<double>(count);
            angles(k) = std::asin(sin_angle);
            atoms.col(k) = norm * ula_steering(angles(k), geometry);
        }
    };

    BeamspaceDictionary dict;
    make_grid(tx_geometry, dict.tx_atoms, dict.tx_grid_angles);
    make_grid(rx_geometry, dict.rx_atoms, dict.rx_grid_angles);
    return dict;
}

ChannelEstimate omp_estimate(const ChannelEstimate &estimate, const BeamspaceDictionary &dict,
                             arma::uword max_paths, double residual_tol)
{
    if (dict.tx_atoms.n_cols == 0 || dict.rx_atoms.n_cols == 0)
        throw config_error("beamspace dictionary is empty");
    if (residual_tol < 0.0)
        throw std::domain_error("residual tolerance must be non-negative");

    const arma::uword n_sub = estimate.h_tilde.size();
    const arma::uword m_rx = estimate.h_tilde.front().n_rows;
    const arma::uword m_tx = estimate.h_tilde.front().n_cols;
    const arma::uword d_rx = dict.rx_atoms.n_cols;
    const arma::uword d_tx = dict.tx_atoms.n_cols;
    if (max_paths > std::min(d_rx, d_tx))
        throw std::domain_error("max_paths exceeds the dictionary size");

    // Stack vec(H_tilde[n]) as columns; one shared support serves all of them.
    arma::cx_mat target(m_rx * m_tx, n_sub);
    for (arma::uword n = 0; n < n_sub; ++n)
        target.col(n) = arma::vectorise(estimate.h_tilde[n]);

    const double input_norm = arma::norm(target, "fro");
    ChannelEstimate refined;
    refined.method_tag = EstimatorKind::omp;
    refined.h_tilde.assign(n_sub, arma::cx_mat(m_rx, m_tx, arma::fill::zeros));
    if (input_norm == 0.0)
        return refined;

    arma::cx_mat residual = target;
    std::vector<std::pair<arma::uword, arma::uword>> support; // (rx_idx, tx_idx)
    arma::cx_mat basis(m_rx * m_tx, 0);                       // vec(a_rx a_tx^H) per selected pair
    arma::cx_mat coeffs;                                      // support x n_sub

    for (arma::uword iter = 0; iter < max_paths; ++iter)
    {
        if (arma::norm(residual, "fro") <= residual_tol * input_norm)
            break;

        // Correlation of every atom pair with the residual, summed over
        // subcarriers: corr(i,j) += |a_rx(i)^H R[n] a_tx(j)|^2.
        arma::mat corr(d_rx, d_tx, arma::fill::zeros);
        for (arma::uword n = 0; n < n_sub; ++n)
        {
            const arma::cx_mat res_n = arma::reshape(residual.col(n), m_rx, m_tx);
            const arma::cx_mat c = dict.rx_atoms.t() * res_n * dict.tx_atoms;
            corr += arma::square(arma::abs(c));
        }
        for (const auto &[i, j] : support)
            corr(i, j) = -1.0; // already selected

        // Argmax with ties broken toward the lowest flattened (rx-major) index.
        arma::uword best_i = 0, best_j = 0;
        double best_val = -1.0;
        for (arma::uword i = 0; i < d_rx; ++i)
            for (arma::uword j = 0; j < d_tx; ++j)
                if (corr(i, j) > best_val)
                {
                    best_val = corr(i, j);
                    best_i = i;
                    best_j = j;
                }
        if (best_val <= 0.0)
            break; // residual orthogonal to the dictionary

        support.emplace_back(best_i, best_j);
        basis.insert_cols(basis.n_cols, arma::vectorise(dict.rx_atoms.col(best_i) * dict.tx_atoms.col(best_j).t()));

        // Refit all subcarriers on the enlarged support at once.
        coeffs = arma::solve(basis, target);
        residual = target - basis * coeffs;
    }

    if (!support.empty())
        for (arma::uword n = 0; n < n_sub; ++n)
            refined.h_tilde[n] = arma::reshape(basis * coeffs.col(n), m_rx, m_tx);
    return refined;
}

} // namespace mmwlink
