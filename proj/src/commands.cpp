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

#include "radeq/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "radeq/csv.hpp"

namespace radeq {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::filesystem::path path = std::filesystem::path(cfg.out_dir) / name;
  std::ofstream out(path);
  if (!out) {
    throw ConfigError("cannot open output file '" + path.string() + "'");
  }
  return out;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j = ordered_json::object();
  for (const auto& [key, value] : resolved_config(cfg)) {
    j[key] = value;
  }
  return j;
}

ordered_json power_constants_json(const PowerConstants& pc) {
  ordered_json j = ordered_json::object();
  j["adc_fom_fj"] = pc.adc_fom_j * 1e15;
  j["eq_fit_slope_w"] = pc.eq_fit_slope_w;
  j["eq_fit_offset_w"] = pc.eq_fit_offset_w;
  return j;
}

std::string bits_str(int bits) {
  return bits == kInfBits ? std::string("inf") : std::to_string(bits);
}

std::ostream* diag_stream(const RunConfig& cfg) {
  return cfg.verbose ? &std::cerr : nullptr;
}

}  // namespace

void cmd_power(const RunConfig& cfg) {
  std::ofstream out = open_output(cfg, "power.csv");
  write_csv_header(out, "power", resolved_config(cfg));
  write_csv_row(out, {"q", "k", "b_prime", "u", "p_adc_w", "p_eq_w",
                      "p_total_w"});
  for (int q : cfg.sweep.adc_bits) {
    for (int k : cfg.sweep.eq_bits) {
      for (int b_prime : cfg.sweep.b_primes) {
        for (int u : cfg.u_list) {
          std::string p_adc = "n/a", p_eq = "n/a", p_total = "n/a";
          if (q != kInfBits) {
            p_adc = format_double(adc_power(q, b_prime, cfg.system.f_s,
                                            cfg.power));
            if (k != kInfBits) {
              PowerBreakdown p = total_power(q, k, b_prime, u,
                                             cfg.system.f_s, cfg.power);
              p_eq = format_double(p.p_eq_w);
              p_total = format_double(p.p_total_w);
            }
          }
          write_csv_row(out, {bits_str(q), bits_str(k),
                              std::to_string(b_prime), std::to_string(u),
                              p_adc, p_eq, p_total});
        }
      }
    }
  }
}

void cmd_ber(const RunConfig& cfg) {
  TrialRunner runner(cfg.system, cfg.master_seed);
  ProbePolicy policy;
  policy.mode = ProbePolicy::Mode::kPrecision;
  policy.target_ber = cfg.search.target_ber;
  policy.rel_precision = cfg.search.rel_precision;
  policy.min_bits = cfg.ber_min_bits;
  policy.max_trials = cfg.ber_max_trials;

  std::ofstream out = open_output(cfg, "ber.csv");
  write_csv_header(out, "ber", resolved_config(cfg));
  write_csv_row(out, {"snr_db", "ber", "std_err", "trials"});
  for (double snr : cfg.ber_snr_db) {
    BerEstimate est = runner.run_adaptive(snr, policy);
    if (std::ostream* diag = diag_stream(cfg)) {
      (*diag) << "# ber probe snr_db=" << snr << " ber=" << est.ber
              << " trials=" << est.trials << '\n';
    }
    write_csv_row(out, {format_double(snr), format_double(est.ber),
                        format_double(est.std_err),
                        std::to_string(est.trials)});
  }
}

void cmd_pareto(const RunConfig& cfg) {
  std::ofstream out = open_output(cfg, "pareto.csv");
  write_csv_header(out, "pareto", resolved_config(cfg));
  write_csv_row(out, {"u", "q", "k", "b_prime", "snr_loss_db", "p_adc_w",
                      "p_eq_w", "p_total_w"});

  ordered_json summary;
  summary["command"] = "pareto";
  summary["config"] = config_json(cfg);
  summary["power_constants"] = power_constants_json(cfg.power);
  summary["results"] = ordered_json::array();

  for (int u : cfg.u_list) {
    SystemConfig base = cfg.system;
    base.u = u;
    SweepResult swept = sweep(base, cfg.sweep, cfg.search, cfg.power,
                              cfg.master_seed, diag_stream(cfg));
    std::vector<ParetoPoint> envelope = pareto_envelope(swept.candidates);
    for (const ParetoPoint& p : envelope) {
      write_csv_row(out, {std::to_string(p.u), std::to_string(p.q),
                          std::to_string(p.k), std::to_string(p.b_prime),
                          format_double(p.snr_loss_db),
                          format_double(p.power.p_adc_w),
                          format_double(p.power.p_eq_w),
                          format_double(p.power.p_total_w)});
    }

    ordered_json ju;
    ju["u"] = u;
    ju["reference_min_snr_db"] = swept.reference_min_snr_db;
    ju["candidates"] = swept.candidates.size();
    ju["excluded"] = swept.entries.size() - swept.candidates.size();
    ju["envelope_size"] = envelope.size();
    summary["results"].push_back(ju);
  }

  std::ofstream json_out = open_output(cfg, "pareto.json");
  json_out << summary.dump(2) << '\n';
}

void cmd_compare(const RunConfig& cfg) {
  std::vector<SystemConfig> scenarios;
  for (int u : cfg.u_list) {
    SystemConfig sc = cfg.system;
    sc.u = u;
    scenarios.push_back(sc);
  }
  BaselineSpec baseline =
      select_baseline(scenarios, cfg.sweep.adc_bits, cfg.sweep.eq_bits,
                      cfg.constraint_db, cfg.search, cfg.power,
                      cfg.master_seed, diag_stream(cfg));

  // One sweep per U, reused across every allowed-loss block.
  std::vector<std::vector<ParetoPoint>> envelopes;
  for (const SystemConfig& sc : scenarios) {
    SweepResult swept = sweep(sc, cfg.sweep, cfg.search, cfg.power,
                              cfg.master_seed, diag_stream(cfg));
    envelopes.push_back(pareto_envelope(swept.candidates));
  }

  std::ofstream out = open_output(cfg, "compare.csv");
  write_csv_header(out, "compare", resolved_config(cfg));
  out << "# baseline q = " << baseline.q << ", k = " << baseline.k << '\n';
  write_csv_row(out, {"u", "baseline_w", "adaptive_w", "ratio", "q", "k",
                      "b_prime"});

  ordered_json summary;
  summary["command"] = "compare";
  summary["config"] = config_json(cfg);
  summary["power_constants"] = power_constants_json(cfg.power);
  summary["baseline"] = {{"q", baseline.q},
                         {"k", baseline.k},
                         {"constraint_db", baseline.constraint_db}};
  summary["blocks"] = ordered_json::array();

  for (double allowed : cfg.allowed_loss_db) {
    out << "# allowed_loss_db = " << format_double(allowed) << '\n';
    ordered_json block;
    block["allowed_loss_db"] = allowed;
    block["rows"] = ordered_json::array();
    for (std::size_t i = 0; i < scenarios.size(); ++i) {
      const int u = scenarios[i].u;
      double base_w =
          baseline_power(u, baseline, cfg.system.b, cfg.system.f_s, cfg.power)
              .p_total_w;
      AdaptiveChoice choice = adaptive_power(envelopes[i], allowed);
      double ratio = base_w / choice.power.p_total_w;
      write_csv_row(out, {std::to_string(u), format_double(base_w),
                          format_double(choice.power.p_total_w),
                          format_double(ratio), std::to_string(choice.q),
                          std::to_string(choice.k),
                          std::to_string(choice.b_prime)});
      ordered_json row;
      row["u"] = u;
      row["baseline_w"] = base_w;
      row["adaptive_w"] = choice.power.p_total_w;
      row["ratio"] = ratio;
      row["q"] = choice.q;
      row["k"] = choice.k;
      row["b_prime"] = choice.b_prime;
      block["rows"].push_back(row);
    }
    summary["blocks"].push_back(block);
  }

  std::ofstream json_out = open_output(cfg, "compare.json");
  json_out << summary.dump(2) << '\n';
}

}  // namespace radeq
