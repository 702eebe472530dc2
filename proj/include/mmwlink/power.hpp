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
// Transceiver power consumption model. The transmit chain is M_Tx parallel
// branches of DAC pair + mixer + PA, the receive chain M_Rx branches of
// LNA + mixer + ADC pair. The PA output backs off with the array size so
// that the radiated EIRP stays constant.

#ifndef MMWLINK_POWER_HPP
#define MMWLINK_POWER_HPP

#include <armadillo>

namespace mmwlink
{

struct PowerModelParams
{
    double eirp_dbm = 30.0;    // target EIRP
    double eta_pa = 0.2;       // PA power-added efficiency, in (0, 1]
    double p_in_bb_dbm = 0.0;  // power delivered by the baseband circuitry
    double il_mix_db = 6.0;    // mixer insertion loss
    double p_lo_mw = 10.0;     // mixer / LO drive power per chain
    double p_lna_mw = 11.0;    // LNA DC power per chain
    double fom_dac_fj = 65.0;  // DAC figure of merit, fJ per conversion step
    double fom_adc_fj = 67.6;  // ADC figure of merit, fJ per conversion step
    double f_s_hz = 806.4e6;   // converter sampling rate

    void validate() const; // throws config_error
};

// Per-PA output power: EIRP - 20 log10(M_Tx)  [dBm]
double pa_output_power_dbm(const PowerModelParams &params, arma::uword m_tx);

// Per-PA input power: P_in,BB - 10 log10(M_Tx) - IL_mix  [dBm]
double pa_input_power_dbm(const PowerModelParams &params, arma::uword m_tx);

// DC power drawn by one PA: (10^(Pout/10) - 10^(Pin/10)) / eta_PA  [mW].
// Throws std::domain_error when the parameter combination would make the PA
// gain negative (Pout below Pin).
double pa_dc_power_mw(const PowerModelParams &params, arma::uword m_tx);

// One DAC or ADC: 2^bits * f_s * FoM  [mW]. Finite bits only; an infinite-
// resolution converter has no meaningful power figure and is rejected.
double converter_power_mw(int bits, double f_s_hz, double fom_fj);

// Full chains. Each transmit branch carries one PA, one mixer and a DAC
// pair (I/Q); each receive branch one LNA, one mixer and an ADC pair.
double tx_power_mw(const PowerModelParams &params, arma::uword m_tx, int bits);
double rx_power_mw(const PowerModelParams &params, arma::uword m_rx, int bits);
double total_power_mw(const PowerModelParams &params, arma::uword m_tx, arma::uword m_rx, int bits);

} // namespace mmwlink

#endif
