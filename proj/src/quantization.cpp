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

#include "mmwlink/quantization.hpp"

namespace mmwlink
{

double inverse_coding_gain(int bits)
{
    if (bits < 2)
        throw std::domain_error("quantizer resolution must be at least 2 bits (inverse coding "
                                "gain would reach 1)");
    const double nb = static_cast<double>(bits);
    return 0.5 * arma::datum::pi * std::sqrt(3.0) / (nb * nb);
}

double dac_noise_power(const QuantizerSpec &spec, arma::uword m_tx)
{
    if (m_tx < 1)
        throw std::domain_error("m_tx must be at least 1");
    const double ups = spec.gain_inverse();
    return ups * (1.0 - ups) / static_cast<double>(m_tx);
}

double adc_noise_power(const QuantizerSpec &spec, double signal_power)
{
    if (signal_power < 0.0)
        throw std::domain_error("signal power must be non-negative");
    const double ups = spec.gain_inverse();
    return ups * (1.0 - ups) * signal_power;
}

ImpairmentPowers make_impairment_powers(double sigma_rf_sq, const QuantizerSpec &spec, arma::uword m_tx,
                                        double sigma_w_sq)
{
    if (sigma_rf_sq < 0.0 || sigma_w_sq < 0.0)
        throw std::domain_error("noise powers must be non-negative");
    ImpairmentPowers p;
    p.sigma_rf_sq = sigma_rf_sq;
    p.sigma_q_tx_sq = dac_noise_power(spec, m_tx);
    p.sigma_d_sq = p.sigma_rf_sq + p.sigma_q_tx_sq;
    p.sigma_q_rx_sq = adc_noise_power(spec, 1.0 + sigma_w_sq);
    return p;
}

arma::cx_vec aqnm_apply(const arma::cx_vec &signal, const QuantizerSpec &spec, double noise_power, Rng &rng)
{
    if (noise_power < 0.0)
        throw std::domain_error("noise power must be non-negative");
    return (1.0 - spec.gain_inverse()) * signal + rng.cnormal_vec(signal.n_elem, noise_power);
}

} // namespace mmwlink
