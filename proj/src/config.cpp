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

#include "mmwlink/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mmwlink/common.hpp"

namespace mmwlink
{

namespace
{

struct KeyValue
{
    std::string key;
    std::string value;
    int line = 0;
};

std::string trim(const std::string &s)
{
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const KeyValue &kv, const std::string &what)
{
    throw config_error("line " + std::to_string(kv.line) + ": key '" + kv.key + "': " + what);
}

std::vector<KeyValue> tokenize(const std::string &text)
{
    std::vector<KeyValue> out;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw))
    {
        line_no++;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        std::string line = trim(raw);
        if (line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line_no) + ": expected 'key = value', got '" + line + "'");
        KeyValue kv;
        kv.key = trim(line.substr(0, eq));
        kv.value = trim(line.substr(eq + 1));
        kv.line = line_no;
        if (kv.key.empty())
            throw config_error("line " + std::to_string(line_no) + ": empty key");
        if (kv.value.empty())
            throw config_error("line " + std::to_string(line_no) + ": key '" + kv.key + "': empty value");
        out.push_back(std::move(kv));
    }
    return out;
}

double parse_double(const KeyValue &kv, const std::string &token)
{
    const char *begin = token.c_str();
    char *end = nullptr;
    double v = std::strtod(begin, &end);
    if (end != begin + token.size() || token.empty())
        fail(kv, "'" + token + "' is not a number");
    return v;
}

std::uint64_t parse_unsigned(const KeyValue &kv, const std::string &token)
{
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        fail(kv, "'" + token + "' is not a non-negative integer");
    errno = 0;
    char *end = nullptr;
    unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (errno == ERANGE)
        fail(kv, "'" + token + "' is out of range");
    return static_cast<std::uint64_t>(v);
}

arma::uword parse_uword(const KeyValue &kv, const std::string &token)
{
    return static_cast<arma::uword>(parse_unsigned(kv, token));
}

QuantizerSpec parse_bits_token(const KeyValue &kv, const std::string &token)
{
    if (token == "inf" || token == "infinite")
        return QuantizerSpec::infinite();
    std::uint64_t b = parse_unsigned(kv, token);
    if (b > 1024)
        fail(kv, "'" + token + "' bits is unreasonably large");
    try
    {
        return QuantizerSpec::with_bits(static_cast<int>(b));
    }
    catch (const std::domain_error &e)
    {
        fail(kv, e.what());
    }
}

EstimatorKind parse_estimator_token(const KeyValue &kv, const std::string &token)
{
    if (token == "conventional")
        return EstimatorKind::conventional;
    if (token == "omp")
        return EstimatorKind::omp;
    fail(kv, "'" + token + "' is not an estimator (conventional, omp)");
}

ErrorVarMode parse_error_var_mode(const KeyValue &kv, const std::string &token)
{
    if (token == "per_trial")
        return ErrorVarMode::per_trial;
    if (token == "averaged")
        return ErrorVarMode::averaged;
    fail(kv, "'" + token + "' is not an error_var_mode (per_trial, averaged)");
}

std::pair<arma::uword, arma::uword> parse_antennas_token(const KeyValue &kv, const std::string &token)
{
    std::size_t x = token.find('x');
    if (x == std::string::npos)
        fail(kv, "'" + token + "' is not an antenna pair (expected e.g. 8x8)");
    return {parse_uword(kv, trim(token.substr(0, x))), parse_uword(kv, trim(token.substr(x + 1)))};
}

std::vector<std::string> split_list(const KeyValue &kv, const std::string &value)
{
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= value.size())
    {
        std::size_t comma = value.find(',', pos);
        std::string token = trim(comma == std::string::npos ? value.substr(pos) : value.substr(pos, comma - pos));
        if (token.empty())
            fail(kv, "empty list element");
        out.push_back(std::move(token));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

// Applies one scalar key. Returns false if the key is not recognized.
bool apply_scalar(LinkConfig &cfg, const KeyValue &kv)
{
    const std::string &k = kv.key;
    const std::string &v = kv.value;
    if (k == "m_tx")
        cfg.m_tx = parse_uword(kv, v);
    else if (k == "m_rx")
        cfg.m_rx = parse_uword(kv, v);
    else if (k == "n")
        cfg.n = parse_uword(kv, v);
    else if (k == "snr_db")
        cfg.snr_db = parse_double(kv, v);
    else if (k == "k_factor_db")
        cfg.k_factor_db = parse_double(kv, v);
    else if (k == "bits")
        cfg.bits = parse_bits_token(kv, v);
    else if (k == "sigma_rf_sq_db")
        cfg.sigma_rf_sq_db = parse_double(kv, v);
    else if (k == "estimator")
        cfg.estimator = parse_estimator_token(kv, v);
    else if (k == "trials")
        cfg.trials = parse_uword(kv, v);
    else if (k == "seed")
        cfg.seed = parse_unsigned(kv, v);
    else if (k == "p_t")
        cfg.p_t = parse_double(kv, v);
    else if (k == "num_taps")
        cfg.num_taps = parse_uword(kv, v);
    else if (k == "num_clusters")
        cfg.num_clusters = parse_uword(kv, v);
    else if (k == "tap_decay_db")
        cfg.tap_decay_db = parse_double(kv, v);
    else if (k == "tx_spacing")
        cfg.tx_spacing = parse_double(kv, v);
    else if (k == "rx_spacing")
        cfg.rx_spacing = parse_double(kv, v);
    else if (k == "omp_oversampling")
        cfg.omp_oversampling = parse_double(kv, v);
    else if (k == "omp_max_paths")
        cfg.omp_max_paths = parse_uword(kv, v);
    else if (k == "omp_residual_tol")
        cfg.omp_residual_tol = parse_double(kv, v);
    else if (k == "error_var_mode")
        cfg.error_var_mode = parse_error_var_mode(kv, v);
    else if (k == "power_bits")
    {
        std::uint64_t b = parse_unsigned(kv, v);
        if (b > 1024)
            fail(kv, "'" + v + "' bits is unreasonably large");
        cfg.power_bits = static_cast<int>(b);
    }
    else if (k == "eirp_dbm")
        cfg.power.eirp_dbm = parse_double(kv, v);
    else if (k == "eta_pa")
        cfg.power.eta_pa = parse_double(kv, v);
    else if (k == "p_in_bb_dbm")
        cfg.power.p_in_bb_dbm = parse_double(kv, v);
    else if (k == "il_mix_db")
        cfg.power.il_mix_db = parse_double(kv, v);
    else if (k == "p_lo_mw")
        cfg.power.p_lo_mw = parse_double(kv, v);
    else if (k == "p_lna_mw")
        cfg.power.p_lna_mw = parse_double(kv, v);
    else if (k == "fom_dac_fj")
        cfg.power.fom_dac_fj = parse_double(kv, v);
    else if (k == "fom_adc_fj")
        cfg.power.fom_adc_fj = parse_double(kv, v);
    else if (k == "f_s_hz")
        cfg.power.f_s_hz = parse_double(kv, v);
    else
        return false;
    return true;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad())
        throw io_error("read failure on '" + path + "'");
    return buf.str();
}

} // namespace

double LinkConfig::sigma_w_sq() const
{
    return db_to_linear(-snr_db);
}

double LinkConfig::sigma_rf_sq() const
{
    return db_to_linear(sigma_rf_sq_db);
}

ChannelParams LinkConfig::channel_params() const
{
    ChannelParams params;
    params.k_factor_db = k_factor_db;
    params.num_taps = num_taps;
    params.num_clusters = num_clusters;
    params.tx_geometry = {m_tx, tx_spacing};
    params.rx_geometry = {m_rx, rx_spacing};
    params.num_subcarriers = n;
    params.power_delay_profile = ChannelParams::exponential_pdp(num_taps, tap_decay_db);
    return params;
}

std::optional<int> LinkConfig::effective_power_bits() const
{
    if (!bits.is_infinite())
        return bits.bits();
    return power_bits;
}

void LinkConfig::validate() const
{
    if (m_tx < 1 || m_rx < 1)
        throw config_error("antenna counts must be at least 1");
    if (n < 1)
        throw config_error("subcarrier count must be at least 1");
    if (n % m_tx != 0)
        throw config_error("m_tx must divide n (comb pilots need a whole number of combs)");
    if (trials < 1)
        throw config_error("trials must be at least 1");
    if (!std::isfinite(snr_db))
        throw config_error("snr_db must be finite");
    if (!std::isfinite(k_factor_db))
        throw config_error("k_factor_db must be finite");
    if (std::isnan(sigma_rf_sq_db) || sigma_rf_sq_db == arma::datum::inf)
        throw config_error("sigma_rf_sq_db must be finite or -inf");
    if (!(p_t > 0.0) || !std::isfinite(p_t))
        throw config_error("p_t must be positive and finite");
    if (!(omp_oversampling >= 1.0) || !std::isfinite(omp_oversampling))
        throw config_error("omp_oversampling must be at least 1");
    if (omp_max_paths < 1)
        throw config_error("omp_max_paths must be at least 1");
    if (!(omp_residual_tol >= 0.0) || !(omp_residual_tol < 1.0))
        throw config_error("omp_residual_tol must lie in [0, 1)");
    if (power_bits && *power_bits < 1)
        throw config_error("power_bits must be at least 1");
    channel_params().validate();
    power.validate();
}

LinkConfig parse_config(const std::string &text, const LinkConfig &base)
{
    LinkConfig cfg = base;
    for (const KeyValue &kv : tokenize(text))
    {
        if (!apply_scalar(cfg, kv))
            fail(kv, "unknown key");
    }
    cfg.validate();
    return cfg;
}

LinkConfig load_config(const std::string &path, const LinkConfig &base)
{
    return parse_config(read_file(path), base);
}

GridSpec parse_grid(const std::string &text, const LinkConfig &base)
{
    GridSpec grid;
    grid.base = base;
    for (const KeyValue &kv : tokenize(text))
    {
        if (kv.key == "antennas")
        {
            for (const std::string &token : split_list(kv, kv.value))
                grid.antennas.push_back(parse_antennas_token(kv, token));
        }
        else if (kv.key == "bits")
        {
            for (const std::string &token : split_list(kv, kv.value))
                grid.bits.push_back(parse_bits_token(kv, token));
        }
        else if (kv.key == "k_factor_db")
        {
            for (const std::string &token : split_list(kv, kv.value))
                grid.k_factors_db.push_back(parse_double(kv, token));
        }
        else if (kv.key == "estimator")
        {
            for (const std::string &token : split_list(kv, kv.value))
                grid.estimators.push_back(parse_estimator_token(kv, token));
        }
        else if (!apply_scalar(grid.base, kv))
        {
            fail(kv, "unknown key");
        }
    }
    return grid;
}

GridSpec load_grid(const std::string &path, const LinkConfig &base)
{
    return parse_grid(read_file(path), base);
}

std::vector<LinkConfig> expand_grid(const GridSpec &grid)
{
    auto antennas = grid.antennas;
    if (antennas.empty())
        antennas.push_back({grid.base.m_tx, grid.base.m_rx});
    auto bits = grid.bits;
    if (bits.empty())
        bits.push_back(grid.base.bits);
    auto k_factors = grid.k_factors_db;
    if (k_factors.empty())
        k_factors.push_back(grid.base.k_factor_db);
    auto estimators = grid.estimators;
    if (estimators.empty())
        estimators.push_back(grid.base.estimator);

    std::vector<LinkConfig> out;
    out.reserve(antennas.size() * bits.size() * k_factors.size() * estimators.size());
    for (const auto &[m_tx, m_rx] : antennas)
        for (const auto &b : bits)
            for (double k : k_factors)
                for (EstimatorKind est : estimators)
                {
                    LinkConfig cfg = grid.base;
                    cfg.m_tx = m_tx;
                    cfg.m_rx = m_rx;
                    cfg.bits = b;
                    cfg.k_factor_db = k;
                    cfg.estimator = est;
                    out.push_back(std::move(cfg));
                }
    return out;
}

std::string to_string(EstimatorKind kind)
{
    return kind == EstimatorKind::omp ? "omp" : "conventional";
}

std::string to_string(const QuantizerSpec &bits)
{
    return bits.is_infinite() ? "inf" : std::to_string(bits.bits());
}

} // namespace mmwlink
