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
// Additive quantization noise model (AQNM). A uniform quantizer with n_b
// bits is approximated as a linear gain (1 - Upsilon) plus independent
// Gaussian noise, with Upsilon(n_b) = (pi*sqrt(3)/2) * n_b^-2. The same
// model covers DACs on the transmit side and ADCs on the receive side.

#ifndef MMWLINK_QUANTIZATION_HPP
#define MMWLINK_QUANTIZATION_HPP

#include <armadillo>

#include "mmwlink/common.hpp"

namespace mmwlink
{

// Inverse coding gain Upsilon(n_b) for a finite resolution. Resolutions of
// 0 or 1 bit are rejected: there Upsilon >= 1 and the linear-gain model
// breaks down (the modeled signal gain would vanish or flip sign).
double inverse_coding_gain(int bits);

// Converter resolution. "infinite" is a first-class value with Upsilon = 0,
// so ideal baselines run through the same code path as quantized links.
class QuantizerSpec
{
  public:
    static QuantizerSpec infinite() { return QuantizerSpec(kInfinite); }
    static QuantizerSpec with_bits(int bits)
    {
        inverse_coding_gain(bits); // validates
        return QuantizerSpec(bits);
    }

    bool is_infinite() const { return bits_ == kInfinite; }

    // Finite resolution in bits; only meaningful when !is_infinite().
    int bits() const
    {
        if (is_infinite())
            throw std::domain_error("quantizer has infinite resolution; no finite bit count");
        return bits_;
    }

    double gain_inverse() const { return is_infinite() ? 0.0 : inverse_coding_gain(bits_); }

    bool operator==(const QuantizerSpec &other) const { return bits_ == other.bits_; }

  private:
    static constexpr int kInfinite = -1;
    explicit QuantizerSpec(int bits) : bits_(bits) {}
    int bits_;
};

// Noise powers of the impairment chain. sigma_d_sq aggregates the transmit
// side: RF impairments plus DAC quantization noise.
struct ImpairmentPowers
{
    double sigma_rf_sq = 0.0;   // RF chain impairments (PA, LO phase noise)
    double sigma_q_tx_sq = 0.0; // DAC quantization noise
    double sigma_d_sq = 0.0;    // = sigma_rf_sq + sigma_q_tx_sq
    double sigma_q_rx_sq = 0.0; // ADC quantization noise
};

// DAC noise power per transmit antenna: (1/M_Tx) * Upsilon * (1 - Upsilon)
double dac_noise_power(const QuantizerSpec &spec, arma::uword m_tx);

// ADC noise power: Upsilon * (1 - Upsilon) * signal_power, where
// signal_power is the per-antenna received power the ADC sees (1 + sigma_w^2
// for a unit-gain channel with unit pilot power).
double adc_noise_power(const QuantizerSpec &spec, double signal_power);

// Assemble all impairment powers for one link configuration. The ADC term
// uses the nominal received power 1 + sigma_w_sq.
ImpairmentPowers make_impairment_powers(double sigma_rf_sq, const QuantizerSpec &spec, arma::uword m_tx,
                                        double sigma_w_sq);

// Quantize a vector under the AQNM: (1 - Upsilon) * signal + w_q with w_q
// circularly symmetric Gaussian of per-entry variance noise_power.
arma::cx_vec aqnm_apply(const arma::cx_vec &signal, const QuantizerSpec &spec, double noise_power, Rng &rng);

} // namespace mmwlink

#endif
