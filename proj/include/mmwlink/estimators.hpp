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
// Channel estimate refinement. The conventional baseline passes the raw
// LS estimate through unchanged. The OMP estimator exploits the angular
// sparsity of the mmWave channel: path angles are shared by all
// subcarriers, so a joint (simultaneous) OMP selects one angular support
// for the whole band and refits the per-subcarrier coefficients on it.

#ifndef MMWLINK_ESTIMATORS_HPP
#define MMWLINK_ESTIMATORS_HPP

#include <armadillo>

#include "mmwlink/channel.hpp"
#include "mmwlink/training.hpp"

namespace mmwlink
{

// Unit-norm ULA steering atoms on a uniform grid in sin-angle space.
struct BeamspaceDictionary
{
    arma::cx_mat tx_atoms;     // M_Tx x D_tx
    arma::cx_mat rx_atoms;     // M_Rx x D_rx
    arma::vec tx_grid_angles;  // radians, length D_tx
    arma::vec rx_grid_angles;  // radians, length D_rx
};

// Baseline: H_bar[n] = H_tilde[n].
ChannelEstimate conventional(ChannelEstimate estimate);

// Grids of ceil(oversampling * M) points covering sin(angle) in [-1, 1);
// atoms are steering vectors scaled to unit Euclidean norm.
BeamspaceDictionary build_dictionary(const ArrayGeometry &tx_geometry, const ArrayGeometry &rx_geometry,
                                     double oversampling);

// Simultaneous OMP over (rx, tx) atom pairs. Greedy selection maximizes
// the residual correlation summed over subcarriers; after each selection
// the coefficients are refit per subcarrier by least squares on the whole
// support. Stops when the stacked residual Frobenius norm drops to
// residual_tol times the input norm, or after max_paths selections, or
// when no atom correlates with the residual. Ties break toward the lowest
// grid index.
ChannelEstimate omp_estimate(const ChannelEstimate &estimate, const BeamspaceDictionary &dict,
                             arma::uword max_paths, double residual_tol);

} // namespace mmwlink

#endif
