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

#include "mmwlink/channel.hpp"

#include "mmwlink/common.hpp"

namespace mmwlink
{

namespace
{

// Cluster angles stay inside a typical sector, away from endfire.
const double kSectorHalfWidth = arma::datum::pi / 3.0;

double draw_sector_angle(Rng &rng) { return kSectorHalfWidth * (2.0 * rng.uniform() - 1.0); }

} // namespace

void ArrayGeometry::validate() const
{
    if (num_elements < 1)
        throw config_error("array must have at least one element");
    if (element_spacing <= 0.0)
        throw config_error("element spacing must be positive");
}

arma::vec ChannelParams::exponential_pdp(arma::uword num_taps, double decay_db_per_tap)
{
    arma::vec pdp(num_taps);
    for (arma::uword l = 0; l < num_taps; ++l)
        pdp(l) = db_to_linear(-decay_db_per_tap * static_cast<double>(l));
    return pdp / arma::accu(pdp);
}

void ChannelParams::validate() const
{
    tx_geometry.validate();
    rx_geometry.validate();
    if (num_taps < 1 || num_clusters < 1 || num_subcarriers < 1)
        throw config_error("num_taps, num_clusters and num_subcarriers must be positive");
    if (num_taps > num_subcarriers)
        throw config_error("num_taps must not exceed num_subcarriers");
    if (power_delay_profile.n_elem != num_taps)
        throw config_error("power_delay_profile length must equal num_taps");
    if (arma::any(power_delay_profile < 0.0))
        throw config_error("power_delay_profile entries must be non-negative");
    if (std::abs(arma::accu(power_delay_profile) - 1.0) > 1e-12)
        throw config_error("power_delay_profile must sum to 1");
}

arma::cx_vec ula_steering(double angle_rad, const ArrayGeometry &geometry)
{
    geometry.validate();
    if (!(angle_rad >= -arma::datum::pi / 2.0 && angle_rad <= arma::datum::pi / 2.0))
        throw std::domain_error("steering angle must lie in [-pi/2, pi/2]");

    arma::cx_vec a(geometry.num_elements);
    const double phase_step = -2.0 * arma::datum::pi * geometry.element_spacing * std::sin(angle_rad);
    for (arma::uword m = 0; m < geometry.num_elements; ++m)
        a(m) = std::polar(1.0, phase_step * static_cast<double>(m));
    return a;
}

ChannelRealization generate_channel(const ChannelParams &params, std::uint64_t seed)
{
    params.validate();
    Rng rng(seed);

    const arma::uword n_sub = params.num_subcarriers;
    const arma::uword n_taps = params.num_taps;
    const arma::uword m_rx = params.rx_geometry.num_elements;
    const arma::uword m_tx = params.tx_geometry.num_elements;

    ChannelRealization real;
    real.seed = seed;
    real.params = params;

    // LOS ray: one angle pair per realization, rank-one response.
    real.los_aod_rad = draw_sector_angle(rng);
    real.los_aoa_rad = draw_sector_angle(rng);
    const arma::cx_mat h_los =
        ula_steering(real.los_aoa_rad, params.rx_geometry) * ula_steering(real.los_aod_rad, params.tx_geometry).t();

    // NLOS clusters: rank-one rays with CN(0,1) gains, assigned to delay
    // taps round-robin. Cluster weights follow the PDP, split evenly among
    // the clusters sharing a tap; if some taps end up empty the realized
    // total is renormalized so the NLOS part keeps unit average power.
    struct Cluster
    {
        double aod, aoa;
        std::complex<double> gain;
    };
    std::vector<Cluster> clusters(params.num_clusters);
    for (auto &c : clusters)
    {
        c.aod = draw_sector_angle(rng);
        c.aoa = draw_sector_angle(rng);
        c.gain = rng.cnormal();
    }

    arma::uvec clusters_per_tap(n_taps, arma::fill::zeros);
    for (arma::uword c = 0; c < clusters.size(); ++c)
        clusters_per_tap(c % n_taps) += 1;

    double realized_power = 0.0;
    for (arma::uword l = 0; l < n_taps; ++l)
        if (clusters_per_tap(l) > 0)
            realized_power += params.power_delay_profile(l);

    const double k_lin = db_to_linear(params.k_factor_db);
    const double los_scale = std::sqrt(k_lin / (1.0 + k_lin));
    const double nlos_scale = std::sqrt(1.0 / (1.0 + k_lin));

    real.taps.assign(n_taps, arma::cx_mat(m_rx, m_tx, arma::fill::zeros));
    for (arma::uword c = 0; c < clusters.size(); ++c)
    {
        const arma::uword tap = c % n_taps;
        const double weight = std::sqrt(params.power_delay_profile(tap) /
                                        (static_cast<double>(clusters_per_tap(tap)) * realized_power));
        real.taps[tap] += (nlos_scale * weight * clusters[c].gain) *
                          ula_steering(clusters[c].aoa, params.rx_geometry) *
                          ula_steering(clusters[c].aod, params.tx_geometry).t();
    }
    real.taps[0] += los_scale * h_los;

    // Per-subcarrier response: N-point DFT of the taps.
    real.h.assign(n_sub, arma::cx_mat(m_rx, m_tx, arma::fill::zeros));
    for (arma::uword n = 0; n < n_sub; ++n)
        for (arma::uword l = 0; l < n_taps; ++l)
        {
            const double phase = -2.0 * arma::datum::pi * static_cast<double>(n) * static_cast<double>(l) /
                                 static_cast<double>(n_sub);
            real.h[n] += std::polar(1.0, phase) * real.taps[l];
        }

    return real;
}

arma::cx_mat channel_correlation(const ChannelParams &params, arma::uword num_samples, std::uint64_t seed)
{
    params.validate();
    if (num_samples < 1)
        throw std::domain_error("num_samples must be at least 1");

    const arma::uword m_rx = params.rx_geometry.num_elements;
    arma::cx_mat r_h(m_rx, m_rx, arma::fill::zeros);
    for (arma::uword i = 0; i < num_samples; ++i)
    {
        const ChannelRealization real = generate_channel(params, derive_seed(seed, i));
        for (const auto &h_n : real.h)
            r_h += h_n * h_n.t();
    }
    r_h /= static_cast<double>(num_samples * params.num_subcarriers);
    // Force exact Hermitian symmetry of the sample average.
    return 0.5 * (r_h + r_h.t());
}

} // namespace mmwlink
