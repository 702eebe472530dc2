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
// SVD precoding and water-filling. The channel estimate is decomposed per
// subcarrier into spatial streams; transmit power is loaded on the streams
// to maximize the sum rate under a per-subcarrier total power constraint.

#ifndef MMWLINK_PRECODING_HPP
#define MMWLINK_PRECODING_HPP

#include <armadillo>
#include <vector>

#include "mmwlink/channel.hpp"
#include "mmwlink/common.hpp"
#include "mmwlink/quantization.hpp"

namespace mmwlink
{

// Compact SVD h = q * diag(sigma) * f^H with min(M_Rx, M_Tx) columns,
// singular values sorted non-increasing.
struct SvdResult
{
    arma::cx_mat q;  // M_Rx x l_max, orthonormal columns (combiner)
    arma::vec sigma; // l_max singular values
    arma::cx_mat f;  // M_Tx x l_max, orthonormal columns (precoder)
};

// Per-subcarrier precoders, combiners, singular values and power loading.
struct PrecoderSet
{
    std::vector<arma::cx_mat> q;
    std::vector<arma::cx_mat> f;
    std::vector<arma::vec> sigma;
    std::vector<arma::vec> p;
};

// The phase of each singular-vector pair is pinned by making the
// largest-magnitude entry of the right singular vector real positive, so
// identical inputs give identical decompositions across runs.
SvdResult svd_precoder(const arma::cx_mat &h_bar);

// Water-filling: maximize sum log2(1 + p_l sigma_l^2 / noise_power) under
// sum(p) = total_power, p >= 0. Exact sorted-breakpoint solution, no
// iteration. Streams with sigma_l = 0 receive nothing; all-zero sigma is a
// degenerate channel and throws.
arma::vec water_fill(const arma::vec &sigma, double total_power, double noise_power);

// svd_precoder + water_fill for every subcarrier.
PrecoderSet design_precoders(const std::vector<arma::cx_mat> &h_bar, double total_power, double noise_power);

// Data phase through the true channel:
//   x_bar[n] = F[n] P[n]^(1/2) x[n] + d[n]
//   y[n]     = Q[n]^H (H[n] x_bar[n] + w[n])
// followed by the ADC under the AQNM. Symbols are one vector of l_max
// entries per subcarrier.
std::vector<arma::cx_vec> simulate_data_transmission(const ChannelRealization &channel, const PrecoderSet &precoders,
                                                     const ImpairmentPowers &impairments, double sigma_w_sq,
                                                     const QuantizerSpec &spec,
                                                     const std::vector<arma::cx_vec> &symbols, Rng &rng);

} // namespace mmwlink

#endif
