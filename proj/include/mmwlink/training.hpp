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
// Training phase: comb pilot transmission through the impaired link,
// followed by per-tone least-squares estimation and linear interpolation
// across subcarriers.

#ifndef MMWLINK_TRAINING_HPP
#define MMWLINK_TRAINING_HPP

#include <armadillo>
#include <complex>
#include <vector>

#include "mmwlink/channel.hpp"
#include "mmwlink/common.hpp"
#include "mmwlink/quantization.hpp"

namespace mmwlink
{

// Comb pilot pattern: antenna t (0-based) occupies tones {t, t+M_Tx, ...},
// so the antennas' tone sets are disjoint and together cover the band.
struct PilotGrid
{
    arma::uword num_subcarriers = 0;
    arma::uword num_tx = 0;
    std::complex<double> symbol{1.0, 0.0};  // unit-power pilot value
    std::vector<arma::uvec> occupancy;      // per antenna, sorted tone indices

    arma::uword antenna_for_tone(arma::uword tone) const { return tone % num_tx; }
};

enum class EstimatorKind
{
    conventional,
    omp,
};

struct ChannelEstimate
{
    std::vector<arma::cx_mat> h_tilde; // N matrices, M_Rx x M_Tx
    EstimatorKind method_tag = EstimatorKind::conventional;
};

// Throws config_error unless m_tx divides n (the comb would be ragged).
PilotGrid build_pilot_grid(arma::uword n, arma::uword m_tx);

// Received pilot symbols after the impaired link and the ADC:
//   y[n]   = H[n] (phi[n] + d[n]) + w[n]
//   y_q[n] = (1 - Upsilon) y[n] + w_q[n]
// with d ~ CN(0, sigma_d^2 I), w ~ CN(0, sigma_w_sq I) drawn fresh per tone
// and w_q of per-entry variance sigma_q_rx_sq.
std::vector<arma::cx_vec> simulate_training(const ChannelRealization &channel, const PilotGrid &grid,
                                            const ImpairmentPowers &impairments, double sigma_w_sq,
                                            const QuantizerSpec &spec, Rng &rng);

// Per-tone LS estimate y_q[n] / phi at each antenna's pilot tones, then
// complex linear interpolation along the subcarrier axis per (rx, tx)
// entry, with constant extrapolation beyond the first and last pilot.
ChannelEstimate ls_estimate_interpolate(const std::vector<arma::cx_vec> &received, const PilotGrid &grid);

} // namespace mmwlink

#endif
