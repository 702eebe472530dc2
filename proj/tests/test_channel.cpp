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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "mmwlink/channel.hpp"
#include "mmwlink/common.hpp"

using Catch::Approx;
using namespace mmwlink;

namespace
{
ChannelParams small_params(arma::uword m_tx, arma::uword m_rx, arma::uword n, double k_db, arma::uword taps = 4,
                           arma::uword clusters = 4)
{
    ChannelParams p;
    p.k_factor_db = k_db;
    p.num_taps = taps;
    p.num_clusters = clusters;
    p.tx_geometry = {m_tx, 0.5};
    p.rx_geometry = {m_rx, 0.5};
    p.num_subcarriers = n;
    p.power_delay_profile = ChannelParams::exponential_pdp(taps);
    return p;
}
} // namespace

TEST_CASE("ULA steering vector")
{
    ArrayGeometry g{4, 0.5};

    SECTION("boresight gives an all-ones response")
    {
        arma::cx_vec a = ula_steering(0.0, g);
        REQUIRE(a.n_elem == 4);
        CHECK(arma::norm(a - arma::cx_vec(4, arma::fill::ones)) < 1e-14);
    }

    SECTION("30 degrees with half-wavelength spacing steps by -pi/2")
    {
        arma::cx_vec a = ula_steering(arma::datum::pi / 6.0, ArrayGeometry{2, 0.5});
        CHECK(std::abs(a(0) - std::complex<double>(1.0, 0.0)) < 1e-14);
        CHECK(std::abs(a(1) - std::complex<double>(0.0, -1.0)) < 1e-14);
    }

    SECTION("single element is trivially flat")
    {
        CHECK(std::abs(ula_steering(0.7, ArrayGeometry{1, 0.5})(0) - 1.0) < 1e-15);
    }

    SECTION("entries are unit modulus and the squared norm is M")
    {
        arma::cx_vec a = ula_steering(-0.9, ArrayGeometry{16, 0.5});
        for (arma::uword m = 0; m < a.n_elem; m++)
            CHECK(std::abs(a(m)) == Approx(1.0).epsilon(1e-14));
        CHECK(arma::dot(arma::abs(a), arma::abs(a)) == Approx(16.0).epsilon(1e-12));
    }

    SECTION("angles outside [-pi/2, pi/2] are rejected, not clamped")
    {
        CHECK_THROWS_AS(ula_steering(1.6, g), std::domain_error);
        CHECK_THROWS_AS(ula_steering(-2.0, g), std::domain_error);
    }
}

TEST_CASE("channel parameter validation")
{
    ChannelParams p = small_params(2, 2, 16, 0.0);
    CHECK_NOTHROW(p.validate());

    SECTION("power delay profile must sum to one")
    {
        p.power_delay_profile(0) += 0.5;
        CHECK_THROWS_AS(p.validate(), config_error);
    }

    SECTION("more taps than subcarriers is rejected")
    {
        ChannelParams q = small_params(2, 2, 4, 0.0, 8, 8);
        CHECK_THROWS_AS(q.validate(), config_error);
    }

    SECTION("profile length must match the tap count")
    {
        p.power_delay_profile = ChannelParams::exponential_pdp(3);
        CHECK_THROWS_AS(p.validate(), config_error);
    }

    SECTION("exponential profile decays 3 dB per tap and sums to 1")
    {
        arma::vec pdp = ChannelParams::exponential_pdp(6, 3.0);
        REQUIRE(pdp.n_elem == 6);
        CHECK(arma::accu(pdp) == Approx(1.0).epsilon(1e-14));
        for (arma::uword l = 0; l + 1 < pdp.n_elem; l++)
            CHECK(pdp(l + 1) / pdp(l) == Approx(std::pow(10.0, -0.3)).epsilon(1e-12));
    }
}

TEST_CASE("channel generation is deterministic in (params, seed)")
{
    ChannelParams p = small_params(4, 4, 16, 3.0);
    ChannelRealization a = generate_channel(p, 99);
    ChannelRealization b = generate_channel(p, 99);
    ChannelRealization c = generate_channel(p, 100);

    double diff = 0.0;
    double other = 0.0;
    for (arma::uword n = 0; n < p.num_subcarriers; n++)
    {
        diff += arma::norm(a.h[n] - b.h[n], "fro");
        other += arma::norm(a.h[n] - c.h[n], "fro");
    }
    CHECK(diff == 0.0);
    CHECK(other > 0.0);
}

TEST_CASE("large K-factor collapses the channel to rank one")
{
    ChannelParams p = small_params(4, 4, 8, 200.0);
    ChannelRealization real = generate_channel(p, 7);
    for (arma::uword n = 0; n < p.num_subcarriers; n += 3)
    {
        arma::vec s = arma::svd(real.h[n]);
        CHECK(s(1) < 1e-6 * s(0));
    }
}

TEST_CASE("single tap gives a frequency-flat response")
{
    ChannelParams p = small_params(3, 2, 16, -5.0, 1, 4);
    ChannelRealization real = generate_channel(p, 11);
    for (arma::uword n = 1; n < p.num_subcarriers; n++)
        CHECK(arma::norm(real.h[n] - real.h[0], "fro") < 1e-14);
}

TEST_CASE("Rayleigh limit has unit average entry power")
{
    ChannelParams p = small_params(1, 1, 8, -200.0);
    const int trials = 100000;
    double acc = 0.0;
    for (int t = 0; t < trials; t++)
    {
        ChannelRealization real = generate_channel(p, derive_seed(1234, static_cast<std::uint64_t>(t)));
        // One subcarrier per realization keeps the samples independent.
        acc += std::norm(real.h[0](0, 0));
    }
    CHECK(acc / trials == Approx(1.0).margin(0.02));
}

TEST_CASE("Rician power split matches K/(1+K)")
{
    const double k_db = 0.0; // K = 1: LOS carries half the power
    ChannelParams p = small_params(2, 2, 8, k_db);
    const int trials = 10000;
    double los_power = 0.0;
    double total_power = 0.0;
    const double k_lin = db_to_linear(k_db);
    const double los_scale = std::sqrt(k_lin / (1.0 + k_lin));
    for (int t = 0; t < trials; t++)
    {
        ChannelRealization real = generate_channel(p, derive_seed(777, static_cast<std::uint64_t>(t)));
        arma::cx_mat los = los_scale * ula_steering(real.los_aoa_rad, p.rx_geometry) *
                           ula_steering(real.los_aod_rad, p.tx_geometry).t();
        for (const auto &h : real.h)
        {
            los_power += std::pow(arma::norm(los, "fro"), 2);
            total_power += std::pow(arma::norm(h, "fro"), 2);
        }
    }
    CHECK(los_power / total_power == Approx(k_lin / (1.0 + k_lin)).margin(0.02));
}

TEST_CASE("subcarrier response equals the DFT of the stored taps")
{
    ChannelParams p = small_params(2, 2, 4, 2.0, 2, 3);
    ChannelRealization real = generate_channel(p, 55);
    for (arma::uword n = 0; n < 4; n++)
    {
        arma::cx_mat oracle(2, 2, arma::fill::zeros);
        for (arma::uword l = 0; l < 2; l++)
        {
            double phase = -2.0 * arma::datum::pi * static_cast<double>(n * l) / 4.0;
            oracle += std::complex<double>(std::cos(phase), std::sin(phase)) * real.taps[l];
        }
        CHECK(arma::norm(real.h[n] - oracle, "fro") < 1e-12);
    }
}

TEST_CASE("channel correlation matrix")
{
    SECTION("scalar link concentrates at the unit entry power")
    {
        ChannelParams p = small_params(1, 1, 8, -200.0);
        arma::cx_mat r = channel_correlation(p, 10000, 31);
        CHECK(r(0, 0).real() == Approx(1.0).margin(0.02));
        CHECK(std::abs(r(0, 0).imag()) < 1e-12);
    }

    SECTION("Hermitian and positive semidefinite with sensible trace")
    {
        ChannelParams p = small_params(3, 4, 8, 2.0);
        arma::cx_mat r = channel_correlation(p, 500, 77);
        CHECK(arma::norm(r - r.t(), "fro") < 1e-12);
        arma::vec eig = arma::eig_sym(r);
        CHECK(eig.min() > -1e-12);
        CHECK(arma::accu(arma::real(r.diag())) == Approx(3.0 * 4.0).epsilon(0.1));
    }

    SECTION("LOS-only channel aligns with the receive steering vector")
    {
        ChannelParams p = small_params(2, 4, 8, 200.0);
        ChannelRealization real = generate_channel(p, derive_seed(5, 0));
        arma::cx_mat r = channel_correlation(p, 1, 5);
        arma::cx_vec a_rx = ula_steering(real.los_aoa_rad, p.rx_geometry);
        arma::cx_mat oracle = static_cast<double>(p.tx_geometry.num_elements) * (a_rx * a_rx.t());
        CHECK(arma::norm(r - oracle, "fro") < 1e-3 * arma::norm(oracle, "fro"));
    }
}
