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

#ifndef MMWLINK_COMMON_HPP
#define MMWLINK_COMMON_HPP

#include <armadillo>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>

namespace mmwlink
{

// Configuration problems (bad file keys, inconsistent dimensions requested by
// the user). The CLI maps these to exit code 1.
class config_error : public std::runtime_error
{
  public:
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

// Filesystem problems while reading configs or writing results. Exit code 3.
class io_error : public std::runtime_error
{
  public:
    explicit io_error(const std::string &msg) : std::runtime_error(msg) {}
};

// dB / dBm conversions. All power-model code goes through these so the
// scaling convention lives in exactly one place.
inline double db_to_linear(double x_db) { return std::pow(10.0, 0.1 * x_db); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }
inline double dbm_to_mw(double x_dbm) { return std::pow(10.0, 0.1 * x_dbm); }
inline double mw_to_dbm(double x_mw) { return 10.0 * std::log10(x_mw); }

// Derive an independent sub-stream seed from a base seed. Trials, and the
// phases within a trial, each get their own stream so that results do not
// depend on execution order or thread count. splitmix64 finalizer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Deterministic random source. The uniform doubles are built directly from
// mt19937_64 output bits and the Gaussians via Box-Muller, so a given seed
// produces the same stream on every platform.
class Rng
{
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1)
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Circularly symmetric complex Gaussian, unit variance (E|z|^2 = 1)
    std::complex<double> cnormal()
    {
        const double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        return {r * std::cos(2.0 * arma::datum::pi * u2), r * std::sin(2.0 * arma::datum::pi * u2)};
    }

    // Real standard normal
    double normal()
    {
        if (have_spare_)
        {
            have_spare_ = false;
            return spare_;
        }
        const auto z = cnormal() * std::sqrt(2.0);
        spare_ = z.imag();
        have_spare_ = true;
        return z.real();
    }

    // Vector / matrix of CN(0, variance) entries
    arma::cx_vec cnormal_vec(arma::uword n, double variance = 1.0);
    arma::cx_mat cnormal_mat(arma::uword n_rows, arma::uword n_cols, double variance = 1.0);

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Run fn(0) .. fn(count-1) on up to `threads` worker threads (0 = hardware
// concurrency). Each index is processed exactly once; callers write results
// into per-index slots so the outcome is independent of scheduling.
void parallel_for(arma::uword count, unsigned threads, const std::function<void(arma::uword)> &fn);

} // namespace mmwlink

#endif
