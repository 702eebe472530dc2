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
// Frequency-selective Rician MIMO channel. A clustered tapped-delay-line
// model: one deterministic LOS ray (rank one, frequency flat) mixed with a
// set of NLOS clusters spread over the delay taps according to the power
// delay profile. The Rician K-factor steers the power split between the
// two parts, and the per-subcarrier response is the DFT of the taps.

#ifndef MMWLINK_CHANNEL_HPP
#define MMWLINK_CHANNEL_HPP

#include <armadillo>
#include <cstdint>
#include <vector>

namespace mmwlink
{

struct ArrayGeometry
{
    arma::uword num_elements = 1;
    double element_spacing = 0.5; // in wavelengths

    void validate() const; // throws config_error
};

struct ChannelParams
{
    double k_factor_db = 0.0;
    arma::uword num_taps = 8;
    arma::uword num_clusters = 8;
    ArrayGeometry tx_geometry;
    ArrayGeometry rx_geometry;
    arma::uword num_subcarriers = 64;
    arma::vec power_delay_profile; // linear tap powers, must sum to 1

    // Exponentially decaying profile, renormalized to unit sum.
    static arma::vec exponential_pdp(arma::uword num_taps, double decay_db_per_tap = 3.0);

    void validate() const; // throws config_error
};

// One realization: per-subcarrier matrices plus the generation metadata
// needed to reproduce or analyze it (drawn LOS angles, time-domain taps).
struct ChannelRealization
{
    std::vector<arma::cx_mat> h;    // N matrices, each M_Rx x M_Tx
    std::uint64_t seed = 0;
    ChannelParams params;
    double los_aod_rad = 0.0;
    double los_aoa_rad = 0.0;
    std::vector<arma::cx_mat> taps; // time-domain taps the response was built from
};

// ULA response: entry m is exp(-i * 2*pi * spacing * m * sin(angle)).
// The angle must lie in [-pi/2, pi/2]; out-of-range values are rejected,
// not clamped.
arma::cx_vec ula_steering(double angle_rad, const ArrayGeometry &geometry);

// Deterministic in (params, seed). Entries are normalized so that the
// average per-entry power over realizations is 1.
ChannelRealization generate_channel(const ChannelParams &params, std::uint64_t seed);

// Sample estimate of R_H = E[H[n] H[n]^H], averaged over `num_samples`
// independent realizations and all subcarriers. Realization i uses seed
// derive_seed(seed, i).
arma::cx_mat channel_correlation(const ChannelParams &params, arma::uword num_samples, std::uint64_t seed);

} // namespace mmwlink

#endif
