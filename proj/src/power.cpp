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

#include "mmwlink/power.hpp"

#include "mmwlink/common.hpp"

namespace mmwlink
{

void PowerModelParams::validate() const
{
    if (eta_pa <= 0.0 || eta_pa > 1.0)
        throw config_error("eta_pa must be in (0, 1]");
    if (p_lo_mw < 0.0 || p_lna_mw < 0.0 || fom_dac_fj < 0.0 || fom_adc_fj < 0.0)
        throw config_error("powers and figures of merit must be non-negative");
    if (f_s_hz <= 0.0)
        throw config_error("sampling rate must be positive");
}

double pa_output_power_dbm(const PowerModelParams &params, arma::uword m_tx)
{
    if (m_tx < 1)
        throw std::domain_error("m_tx must be at least 1");
    return params.eirp_dbm - 20.0 * std::log10(static_cast<double>(m_tx));
}

double pa_input_power_dbm(const PowerModelParams &params, arma::uword m_tx)
{
    if (m_tx < 1)
        throw std::domain_error("m_tx must be at least 1");
    return params.p_in_bb_dbm - 10.0 * std::log10(static_cast<double>(m_tx)) - params.il_mix_db;
}

double pa_dc_power_mw(const PowerModelParams &params, arma::uword m_tx)
{
    const double p_out_dbm = pa_output_power_dbm(params, m_tx);
    const double p_in_dbm = pa_input_power_dbm(params, m_tx);
    if (p_out_dbm < p_in_dbm)
        throw std::domain_error("PA output power below input power; EIRP / M_Tx / P_in,BB "
                                "combination is outside the model domain");
    return (dbm_to_mw(p_out_dbm) - dbm_to_mw(p_in_dbm)) / params.eta_pa;
}

double converter_power_mw(int bits, double f_s_hz, double fom_fj)
{
    if (bits < 1)
        throw std::domain_error("converter power requires a finite resolution of at least 1 bit");
    // 2^bits steps * f_s [Hz] * FoM [fJ/step] = W * 1e-15; report mW
    return std::ldexp(1.0, bits) * f_s_hz * fom_fj * 1e-12;
}

double tx_power_mw(const PowerModelParams &params, arma::uword m_tx, int bits)
{
    const double p_dac = converter_power_mw(bits, params.f_s_hz, params.fom_dac_fj);
    return static_cast<double>(m_tx) * (pa_dc_power_mw(params, m_tx) + params.p_lo_mw + 2.0 * p_dac);
}

double rx_power_mw(const PowerModelParams &params, arma::uword m_rx, int bits)
{
    if (m_rx < 1)
        throw std::domain_error("m_rx must be at least 1");
    const double p_adc = converter_power_mw(bits, params.f_s_hz, params.fom_adc_fj);
    return static_cast<double>(m_rx) * (params.p_lna_mw + params.p_lo_mw + 2.0 * p_adc);
}

double total_power_mw(const PowerModelParams &params, arma::uword m_tx, arma::uword m_rx, int bits)
{
    return tx_power_mw(params, m_tx, bits) + rx_power_mw(params, m_rx, bits);
}

} // namespace mmwlink
