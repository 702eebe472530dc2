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
// Link configuration and the flat key = value config/grid file formats.

#ifndef MMWLINK_CONFIG_HPP
#define MMWLINK_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mmwlink/channel.hpp"
#include "mmwlink/power.hpp"
#include "mmwlink/quantization.hpp"
#include "mmwlink/training.hpp"

namespace mmwlink
{

// How the precoder-mismatch variance enters the SINR: per trial (default)
// or averaged across all trials of a sweep point first.
enum class ErrorVarMode
{
    per_trial,
    averaged,
};

// Everything one simulation point needs. Defaults give a desk-scale run:
// 64 subcarriers, 200 trials, 0 dB SNR, ideal converters.
struct LinkConfig
{
    arma::uword m_tx = 8;
    arma::uword m_rx = 8;
    arma::uword n = 64; // subcarriers; m_tx must divide n
    double snr_db = 0.0;
    double k_factor_db = -20.0;
    QuantizerSpec bits = QuantizerSpec::infinite();
    double sigma_rf_sq_db = -25.0; // RF impairment power; -inf disables it
    EstimatorKind estimator = EstimatorKind::conventional;
    arma::uword trials = 200;
    std::uint64_t seed = 1;
    double p_t = 1.0; // per-subcarrier total transmit power

    // Channel shape (everything but the dimensions and K-factor, which the
    // link fields above already carry).
    arma::uword num_taps = 8;
    arma::uword num_clusters = 8;
    double tap_decay_db = 3.0;  // power-delay-profile decay per tap
    double tx_spacing = 0.5;    // element spacing in wavelengths
    double rx_spacing = 0.5;

    // Beamspace estimator knobs.
    double omp_oversampling = 2.0;
    arma::uword omp_max_paths = 8;
    double omp_residual_tol = 0.1;

    ErrorVarMode error_var_mode = ErrorVarMode::per_trial;

    // Resolution to price the converters at when `bits` is infinite (an
    // ideal converter has no power figure). Unset leaves power/EE undefined
    // for such runs.
    std::optional<int> power_bits;

    PowerModelParams power;

    double sigma_w_sq() const; // 10^(-snr_db/10), unit signal power
    double sigma_rf_sq() const;
    ChannelParams channel_params() const;
    void validate() const; // throws config_error

    // Converter resolution the power model should use, or nullopt when the
    // run is infinite-resolution and no power_bits was given.
    std::optional<int> effective_power_bits() const;
};

// One axis-product sweep: the base config with lists for the swept axes.
// Expansion order is antennas, then bits, then K-factor, then estimator
// (innermost), matching the row order of the emitted CSV.
struct GridSpec
{
    LinkConfig base;
    std::vector<std::pair<arma::uword, arma::uword>> antennas; // (m_tx, m_rx)
    std::vector<QuantizerSpec> bits;
    std::vector<double> k_factors_db;
    std::vector<EstimatorKind> estimators;
};

// Parse `key = value` lines ('#' starts a comment) on top of `base`.
// Unknown keys, malformed numbers and out-of-range values raise
// config_error naming the offending line.
LinkConfig parse_config(const std::string &text, const LinkConfig &base = LinkConfig{});
LinkConfig load_config(const std::string &path, const LinkConfig &base = LinkConfig{});

// Same format; the keys `antennas` (MxN tokens), `bits`, `k_factor_db` and
// `estimator` additionally accept comma-separated lists. Missing axes
// default to the base config's single value.
GridSpec parse_grid(const std::string &text, const LinkConfig &base = LinkConfig{});
GridSpec load_grid(const std::string &path, const LinkConfig &base = LinkConfig{});

// Cartesian expansion of the grid in the documented axis order.
std::vector<LinkConfig> expand_grid(const GridSpec &grid);

// Canonical names used in config files and the CSV (`conventional`, `omp`;
// `inf` or a positive integer for bits).
std::string to_string(EstimatorKind kind);
std::string to_string(const QuantizerSpec &bits);

} // namespace mmwlink

#endif
