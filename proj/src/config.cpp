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

#include "radeq/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "radeq/csv.hpp"
#include "radeq/equalizer.hpp"
#include "radeq/frontend.hpp"

namespace radeq {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return d;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& v, int line) {
  try {
    std::size_t pos = 0;
    long long i = std::stoll(v, &pos);
    if (pos != v.size()) fail(line, "trailing characters in integer '" + v + "'");
    return i;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected an integer, got '" + v + "'");
  }
}

// "inf" is the bypass sentinel for bit depths.
int parse_bits(const std::string& v, int line) {
  if (v == "inf") return kInfBits;
  return static_cast<int>(parse_int(v, line));
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  fail(line, "expected true|false, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_bits_list(const std::string& v, int line) {
  std::vector<int> out;
  for (const std::string& item : split_list(v)) {
    out.push_back(parse_bits(item, line));
  }
  if (out.empty()) fail(line, "empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& v, int line) {
  std::vector<int> out;
  for (const std::string& item : split_list(v)) {
    out.push_back(static_cast<int>(parse_int(item, line)));
  }
  if (out.empty()) fail(line, "empty list");
  return out;
}

std::vector<double> parse_double_list(const std::string& v, int line) {
  std::vector<double> out;
  for (const std::string& item : split_list(v)) {
    out.push_back(parse_double(item, line));
  }
  if (out.empty()) fail(line, "empty list");
  return out;
}

struct Assigner {
  RunConfig& cfg;
  bool b_prime_set = false;
  bool b_prime_list_set = false;
  bool u_list_set = false;

  void assign(const std::string& section, const std::string& key,
              const std::string& value, int line) {
    if (section == "system") {
      if (key == "b") cfg.system.b = static_cast<int>(parse_int(value, line));
      else if (key == "b_prime") {
        cfg.system.b_prime = static_cast<int>(parse_int(value, line));
        b_prime_set = true;
      } else if (key == "u") cfg.system.u = static_cast<int>(parse_int(value, line));
      else if (key == "q") cfg.system.adc_bits = parse_bits(value, line);
      else if (key == "k") cfg.system.eq_bits = parse_bits(value, line);
      else if (key == "f_s") cfg.system.f_s = parse_double(value, line);
      else if (key == "es") cfg.system.es = parse_double(value, line);
      else if (key == "modulation") cfg.system.modulation = parse_modulation(value);
      else if (key == "csi") cfg.system.csi = parse_csi_mode(value);
      else fail(line, "unknown key '" + key + "' in [system]");
    } else if (section == "channel") {
      ChannelModelSpec& ch = cfg.system.channel;
      if (key == "kind") ch.kind = parse_channel_kind(value);
      else if (key == "sector_min_deg") ch.sector_min_deg = parse_double(value, line);
      else if (key == "sector_max_deg") ch.sector_max_deg = parse_double(value, line);
      else if (key == "min_separation_deg") ch.min_separation_deg = parse_double(value, line);
      else if (key == "distance_min_m") ch.distance_min_m = parse_double(value, line);
      else if (key == "distance_max_m") ch.distance_max_m = parse_double(value, line);
      else if (key == "pathloss_exponent") ch.pathloss_exponent = parse_double(value, line);
      else if (key == "wavelength_spacing") ch.wavelength_spacing = parse_double(value, line);
      else fail(line, "unknown key '" + key + "' in [channel]");
    } else if (section == "sweep") {
      if (key == "q_list") cfg.sweep.adc_bits = parse_bits_list(value, line);
      else if (key == "k_list") cfg.sweep.eq_bits = parse_bits_list(value, line);
      else if (key == "b_prime_list") {
        cfg.sweep.b_primes = parse_int_list(value, line);
        b_prime_list_set = true;
      } else if (key == "u_list") {
        cfg.u_list = parse_int_list(value, line);
        u_list_set = true;
      } else fail(line, "unknown key '" + key + "' in [sweep]");
    } else if (section == "search") {
      if (key == "target_ber") cfg.search.target_ber = parse_double(value, line);
      else if (key == "tol_db") cfg.search.tol_db = parse_double(value, line);
      else if (key == "snr_min_db") cfg.search.snr_min_db = parse_double(value, line);
      else if (key == "snr_max_db") cfg.search.snr_max_db = parse_double(value, line);
      else if (key == "grid_step_db") cfg.search.grid_step_db = parse_double(value, line);
      else if (key == "rel_precision") cfg.search.rel_precision = parse_double(value, line);
      else if (key == "min_bits") cfg.search.min_bits = parse_int(value, line);
      else if (key == "max_trials") cfg.search.max_trials = static_cast<long>(parse_int(value, line));
      else fail(line, "unknown key '" + key + "' in [search]");
    } else if (section == "power") {
      if (key == "adc_fom_fj") cfg.power.adc_fom_j = parse_double(value, line) * 1e-15;
      else if (key == "eq_fit_slope_w") cfg.power.eq_fit_slope_w = parse_double(value, line);
      else if (key == "eq_fit_offset_w") cfg.power.eq_fit_offset_w = parse_double(value, line);
      else fail(line, "unknown key '" + key + "' in [power]");
    } else if (section == "seeds") {
      if (key == "master_seed") {
        cfg.master_seed = static_cast<std::uint64_t>(parse_int(value, line));
      } else fail(line, "unknown key '" + key + "' in [seeds]");
    } else if (section == "ber") {
      if (key == "snr_db_list") cfg.ber_snr_db = parse_double_list(value, line);
      else if (key == "min_bits") cfg.ber_min_bits = parse_int(value, line);
      else if (key == "max_trials") cfg.ber_max_trials = static_cast<long>(parse_int(value, line));
      else fail(line, "unknown key '" + key + "' in [ber]");
    } else if (section == "compare") {
      if (key == "allowed_loss_db_list") cfg.allowed_loss_db = parse_double_list(value, line);
      else if (key == "constraint_db") {
        cfg.constraint_db = value == "inf"
                                ? std::numeric_limits<double>::infinity()
                                : parse_double(value, line);
      } else fail(line, "unknown key '" + key + "' in [compare]");
    } else if (section == "output") {
      if (key == "out_dir") cfg.out_dir = value;
      else if (key == "verbose") cfg.verbose = parse_bool(value, line);
      else fail(line, "unknown key '" + key + "' in [output]");
    } else {
      fail(line, "unknown section [" + section + "]");
    }
  }
};

}  // namespace

RunConfig parse_run_config_text(const std::string& text) {
  RunConfig cfg;
  Assigner assigner{cfg};
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        fail(line_no, "malformed section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(line_no, "expected 'key = value'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (section.empty()) fail(line_no, "key outside of any [section]");
    if (key.empty()) fail(line_no, "empty key");
    assigner.assign(section, key, value, line_no);
  }

  // Derived defaults: full array when B' was not given, the [system] values
  // when sweep lists were not given.
  if (!assigner.b_prime_set) cfg.system.b_prime = cfg.system.b;
  if (!assigner.b_prime_list_set) cfg.sweep.b_primes = {cfg.system.b};
  if (!assigner.u_list_set) cfg.u_list = {cfg.system.u};
  if (cfg.sweep.adc_bits.empty()) {
    cfg.sweep.adc_bits = {1, 2, 3, 4, 5, 6, 7, 8};
  }
  if (cfg.sweep.eq_bits.empty()) {
    cfg.sweep.eq_bits = {1, 2, 3, 4, 5, 6};
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config_text(text.str());
}

namespace {

void check_bits(int bits, int max_bits, const std::string& what) {
  if (bits == kInfBits) return;
  if (bits < 1 || bits > max_bits) {
    throw ConfigError(what + " must be in 1.." + std::to_string(max_bits) +
                      " or inf");
  }
}

}  // namespace

void validate_run_config(const RunConfig& cfg) {
  validate(cfg.system);
  check_bits(cfg.system.adc_bits, kMaxAdcBits, "system q");
  check_bits(cfg.system.eq_bits, kMaxEqBits, "system k");
  for (int q : cfg.sweep.adc_bits) check_bits(q, kMaxAdcBits, "sweep q");
  for (int k : cfg.sweep.eq_bits) check_bits(k, kMaxEqBits, "sweep k");
  for (int bp : cfg.sweep.b_primes) {
    if (bp < 1 || bp > cfg.system.b) {
      throw ConfigError("sweep B' values must satisfy 1 <= B' <= B");
    }
  }
  for (int u : cfg.u_list) {
    if (u < 1) throw ConfigError("sweep U values must be >= 1");
    SystemConfig probe = cfg.system;
    probe.u = u;
    validate(probe);
  }
  if (!(cfg.search.target_ber > 0.0 && cfg.search.target_ber < 0.5)) {
    throw ConfigError("target_ber must lie in (0, 0.5)");
  }
  if (!(cfg.search.tol_db > 0.0)) throw ConfigError("tol_db must be positive");
  if (!(cfg.search.grid_step_db > 0.0)) {
    throw ConfigError("grid_step_db must be positive");
  }
  if (cfg.search.snr_max_db <= cfg.search.snr_min_db) {
    throw ConfigError("SNR search range must be nonempty");
  }
  if (cfg.search.min_bits < 1 || cfg.search.max_trials < 1) {
    throw ConfigError("search min_bits and max_trials must be >= 1");
  }
  if (!(cfg.search.rel_precision > 0.0)) {
    throw ConfigError("rel_precision must be positive");
  }
  if (!(cfg.power.adc_fom_j > 0.0)) {
    throw ConfigError("ADC figure of merit must be positive");
  }
  if (cfg.ber_snr_db.empty()) throw ConfigError("ber snr_db_list is empty");
  if (cfg.ber_min_bits < 1 || cfg.ber_max_trials < 1) {
    throw ConfigError("ber min_bits and max_trials must be >= 1");
  }
  if (cfg.allowed_loss_db.empty()) {
    throw ConfigError("compare allowed_loss_db_list is empty");
  }
  if (!(cfg.constraint_db > 0.0)) {
    throw ConfigError("compare constraint_db must be positive");
  }
  if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
}

std::vector<std::pair<std::string, std::string>> resolved_config(
    const RunConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> kv;
  auto add = [&kv](const std::string& key, const std::string& value) {
    kv.emplace_back(key, value);
  };
  auto bits_str = [](int bits) {
    return bits == kInfBits ? std::string("inf") : std::to_string(bits);
  };
  auto int_list_str = [](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  auto bits_list_str = [&bits_str](const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += bits_str(v[i]);
    }
    return s;
  };
  auto double_list_str = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += format_double(v[i]);
    }
    return s;
  };

  add("system.b", std::to_string(cfg.system.b));
  add("system.b_prime", std::to_string(cfg.system.b_prime));
  add("system.u", std::to_string(cfg.system.u));
  add("system.q", bits_str(cfg.system.adc_bits));
  add("system.k", bits_str(cfg.system.eq_bits));
  add("system.f_s", format_double(cfg.system.f_s));
  add("system.es", format_double(cfg.system.es));
  add("system.modulation", modulation_name(cfg.system.modulation));
  add("system.csi", csi_mode_name(cfg.system.csi));
  const ChannelModelSpec& ch = cfg.system.channel;
  add("channel.kind", channel_kind_name(ch.kind));
  add("channel.sector_min_deg", format_double(ch.sector_min_deg));
  add("channel.sector_max_deg", format_double(ch.sector_max_deg));
  add("channel.min_separation_deg", format_double(ch.min_separation_deg));
  add("channel.distance_min_m", format_double(ch.distance_min_m));
  add("channel.distance_max_m", format_double(ch.distance_max_m));
  add("channel.pathloss_exponent", format_double(ch.pathloss_exponent));
  add("channel.wavelength_spacing", format_double(ch.wavelength_spacing));
  add("sweep.q_list", bits_list_str(cfg.sweep.adc_bits));
  add("sweep.k_list", bits_list_str(cfg.sweep.eq_bits));
  add("sweep.b_prime_list", int_list_str(cfg.sweep.b_primes));
  add("sweep.u_list", int_list_str(cfg.u_list));
  add("search.target_ber", format_double(cfg.search.target_ber));
  add("search.tol_db", format_double(cfg.search.tol_db));
  add("search.snr_min_db", format_double(cfg.search.snr_min_db));
  add("search.snr_max_db", format_double(cfg.search.snr_max_db));
  add("search.grid_step_db", format_double(cfg.search.grid_step_db));
  add("search.rel_precision", format_double(cfg.search.rel_precision));
  add("search.min_bits", std::to_string(cfg.search.min_bits));
  add("search.max_trials", std::to_string(cfg.search.max_trials));
  add("power.adc_fom_fj", format_double(cfg.power.adc_fom_j * 1e15));
  add("power.eq_fit_slope_w", format_double(cfg.power.eq_fit_slope_w));
  add("power.eq_fit_offset_w", format_double(cfg.power.eq_fit_offset_w));
  add("seeds.master_seed", std::to_string(cfg.master_seed));
  add("ber.snr_db_list", double_list_str(cfg.ber_snr_db));
  add("ber.min_bits", std::to_string(cfg.ber_min_bits));
  add("ber.max_trials", std::to_string(cfg.ber_max_trials));
  add("compare.allowed_loss_db_list", double_list_str(cfg.allowed_loss_db));
  add("compare.constraint_db", format_double(cfg.constraint_db));
  return kv;
}

}  // namespace radeq
