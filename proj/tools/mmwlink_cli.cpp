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
// Command-line front end. Subcommands:
//   simulate --config <file> --out <csv>   run one configuration
//   sweep    --grid <file>   --out <csv>   run a parameter grid
//   power    --bits <n> --mtx <n> --mrx <n> [--config <file>]
//                                          print the power breakdown
//
// Exit codes: 0 success, 1 configuration error, 2 runtime/numeric error,
// 3 I/O error.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "mmwlink/config.hpp"
#include "mmwlink/harness.hpp"

namespace
{

struct Overrides
{
    std::uint64_t seed = 0;
    arma::uword trials = 0;
    unsigned threads = 0; // 0 = hardware concurrency
    bool seed_set = false;
    bool trials_set = false;
};

void add_override_options(CLI::App *cmd, Overrides &ov)
{
    cmd->add_option("--seed", ov.seed, "Override the base random seed")->each([&ov](const std::string &) {
        ov.seed_set = true;
    });
    cmd->add_option("--trials", ov.trials, "Override the Monte Carlo trial count")
        ->each([&ov](const std::string &) { ov.trials_set = true; });
    cmd->add_option("--threads", ov.threads, "Worker threads (0 = hardware concurrency)");
}

void apply_overrides(mmwlink::LinkConfig &config, const Overrides &ov)
{
    if (ov.seed_set)
        config.seed = ov.seed;
    if (ov.trials_set)
        config.trials = ov.trials;
}

// Writes the CSV and reports failed rows on stderr. Returns the number of
// rows that produced numbers.
std::size_t emit(const mmwlink::SweepResult &result, const std::string &out_path)
{
    std::size_t ok = 0;
    for (const mmwlink::SweepRow &row : result.rows)
    {
        if (row.ok)
        {
            ok++;
            continue;
        }
        std::fprintf(stderr, "warning: %llux%llu bits=%s K=%g %s failed: %s\n",
                     static_cast<unsigned long long>(row.m_tx), static_cast<unsigned long long>(row.m_rx),
                     mmwlink::to_string(row.bits).c_str(), row.k_factor_db,
                     mmwlink::to_string(row.estimator).c_str(), row.error.c_str());
    }
    mmwlink::write_csv(result, out_path);
    return ok;
}

int run_simulate(const std::string &config_path, const std::string &out_path, const Overrides &ov)
{
    mmwlink::LinkConfig config = mmwlink::load_config(config_path);
    apply_overrides(config, ov);
    config.validate();
    mmwlink::SweepResult result = mmwlink::run_sweep({config}, ov.threads);
    return emit(result, out_path) > 0 ? 0 : 2;
}

int run_sweep_cmd(const std::string &grid_path, const std::string &out_path, const Overrides &ov)
{
    mmwlink::GridSpec grid = mmwlink::load_grid(grid_path);
    std::vector<mmwlink::LinkConfig> configs = mmwlink::expand_grid(grid);
    for (mmwlink::LinkConfig &config : configs)
        apply_overrides(config, ov);
    mmwlink::SweepResult result = mmwlink::run_sweep(configs, ov.threads);
    return emit(result, out_path) > 0 ? 0 : 2;
}

int run_power(int bits, unsigned long long m_tx, unsigned long long m_rx, const std::string &config_path)
{
    mmwlink::PowerModelParams params;
    if (!config_path.empty())
        params = mmwlink::load_config(config_path).power;
    params.validate();

    const auto mt = static_cast<arma::uword>(m_tx);
    const auto mr = static_cast<arma::uword>(m_rx);
    std::printf("PA output power    %12.6g dBm per PA\n", mmwlink::pa_output_power_dbm(params, mt));
    std::printf("PA input power     %12.6g dBm per PA\n", mmwlink::pa_input_power_dbm(params, mt));
    std::printf("PA DC power        %12.6g mW  per PA\n", mmwlink::pa_dc_power_mw(params, mt));
    std::printf("DAC power          %12.6g mW  per converter\n",
                mmwlink::converter_power_mw(bits, params.f_s_hz, params.fom_dac_fj));
    std::printf("ADC power          %12.6g mW  per converter\n",
                mmwlink::converter_power_mw(bits, params.f_s_hz, params.fom_adc_fj));
    std::printf("Transmitter total  %12.6g mW  (%llu chains)\n", mmwlink::tx_power_mw(params, mt, bits), m_tx);
    std::printf("Receiver total     %12.6g mW  (%llu chains)\n", mmwlink::rx_power_mw(params, mr, bits), m_rx);
    std::printf("Link total         %12.6g mW\n", mmwlink::total_power_mw(params, mt, mr, bits));
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"mmwlink: link-level Monte Carlo simulator for mmWave MIMO-OFDM\n"
                 "with fully digital beamforming and low-resolution converters"};
    app.require_subcommand(1);

    Overrides ov;

    std::string sim_config, sim_out;
    CLI::App *sim = app.add_subcommand("simulate", "Run one configuration and write a one-row CSV");
    sim->add_option("--config", sim_config, "Configuration file (key = value)")->required();
    sim->add_option("--out", sim_out, "Output CSV path")->required();
    add_override_options(sim, ov);

    std::string sweep_grid, sweep_out;
    CLI::App *swp = app.add_subcommand("sweep", "Run a parameter grid and write one CSV row per point");
    swp->add_option("--grid", sweep_grid, "Grid file (key = value; list-valued axes)")->required();
    swp->add_option("--out", sweep_out, "Output CSV path")->required();
    add_override_options(swp, ov);

    int power_bits = 0;
    unsigned long long power_mtx = 0;
    unsigned long long power_mrx = 0;
    std::string power_config;
    CLI::App *pow = app.add_subcommand("power", "Print the power-consumption breakdown of one link");
    pow->add_option("--bits", power_bits, "Converter resolution in bits")->required();
    pow->add_option("--mtx", power_mtx, "Transmit antenna count")->required()->check(CLI::PositiveNumber);
    pow->add_option("--mrx", power_mrx, "Receive antenna count")->required()->check(CLI::PositiveNumber);
    pow->add_option("--config", power_config, "Optional config file supplying the hardware constants");

    try
    {
        app.parse(argc, argv);
        if (sim->parsed())
            return run_simulate(sim_config, sim_out, ov);
        if (swp->parsed())
            return run_sweep_cmd(sweep_grid, sweep_out, ov);
        return run_power(power_bits, power_mtx, power_mrx, power_config);
    }
    catch (const CLI::ParseError &e)
    {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    catch (const mmwlink::config_error &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    catch (const mmwlink::io_error &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
