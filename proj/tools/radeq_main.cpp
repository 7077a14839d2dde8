// SPDX-License-Identifier: Apache-2.0
//
// radeq - link-level simulator and optimizer for resolution-adaptive
// quantized massive MU-MIMO uplink equalization
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

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "radeq/commands.hpp"
#include "radeq/common.hpp"
#include "radeq/config.hpp"
#include "radeq/montecarlo.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitNumerical = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"radeq - quantized massive MU-MIMO uplink simulator and "
               "power optimizer"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out_dir;

  auto* opt_config =
      app.add_option("--config", config_path,
                     "Run configuration file ([section] key = value)");
  auto* opt_seed =
      app.add_option("--seed", seed, "Master seed override (non-negative)");
  auto* opt_workers = app.add_option(
      "--workers", workers, "Worker thread count, 0 = all hardware threads");
  auto* opt_out =
      app.add_option("--out", out_dir, "Output directory override");
  auto* opt_verbose = app.add_flag(
      "--verbose", "Per-probe search diagnostics on standard error");

  auto* sub_power = app.add_subcommand(
      "power", "Tabulate the ADC and equalizer power models over the grid");
  auto* sub_ber = app.add_subcommand(
      "ber", "Estimate uncoded BER at the configured SNR points");
  auto* sub_pareto = app.add_subcommand(
      "pareto", "Sweep resolutions and emit the loss/power Pareto envelope");
  auto* sub_compare = app.add_subcommand(
      "compare", "Compare fixed worst-case baseline against adaptation");

  CLI11_PARSE(app, argc, argv);

  try {
    radeq::RunConfig cfg = opt_config->count() > 0
                               ? radeq::load_run_config(config_path)
                               : radeq::parse_run_config_text("");
    if (opt_seed->count() > 0) {
      cfg.master_seed = seed;
    }
    if (opt_out->count() > 0) {
      cfg.out_dir = out_dir;
    }
    if (opt_verbose->count() > 0) {
      cfg.verbose = true;
    }
    radeq::validate_run_config(cfg);
    if (opt_workers->count() > 0) {
      if (workers < 0) {
        throw radeq::ConfigError("--workers must be >= 0");
      }
      radeq::set_worker_count(workers);
    }

    if (sub_power->parsed()) {
      radeq::cmd_power(cfg);
    } else if (sub_ber->parsed()) {
      radeq::cmd_ber(cfg);
    } else if (sub_pareto->parsed()) {
      radeq::cmd_pareto(cfg);
    } else if (sub_compare->parsed()) {
      radeq::cmd_compare(cfg);
    }
    return 0;
  } catch (const radeq::InfeasibleError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const radeq::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const radeq::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
