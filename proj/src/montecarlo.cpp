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

#include "radeq/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <condition_variable>
#include <functional>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "radeq/equalizer.hpp"
#include "radeq/frontend.hpp"
#include "radeq/rng.hpp"

namespace radeq {

namespace {

constexpr long kTrialChunk = 512;

// ----------------------------------------------------------------------
// Persistent worker pool. Work items are dealt through an atomic counter;
// the calling thread participates. run() returns only after every pool
// thread has left the job, so the callable can live on the caller's stack.
// ----------------------------------------------------------------------
class Pool {
 public:
  static Pool& instance() {
    static Pool pool;
    return pool;
  }

  void set_workers(int n) {
    if (n <= 0) {
      n = static_cast<int>(std::thread::hardware_concurrency());
      if (n <= 0) n = 1;
    }
    std::lock_guard<std::mutex> api(api_mutex_);
    if (n == workers_) return;
    stop_threads();
    workers_ = n;
    start_threads(workers_ - 1);
  }

  int workers() {
    std::lock_guard<std::mutex> api(api_mutex_);
    return workers_;
  }

  void run(long n_items, const std::function<void(long)>& fn) {
    std::lock_guard<std::mutex> api(api_mutex_);
    if (workers_ <= 1 || n_items <= 1) {
      for (long i = 0; i < n_items; ++i) fn(i);
      return;
    }
    {
      std::lock_guard<std::mutex> lk(m_);
      job_fn_ = &fn;
      job_n_ = n_items;
      job_next_.store(0, std::memory_order_relaxed);
      job_done_.store(0, std::memory_order_relaxed);
      job_open_ = true;
      ++generation_;
    }
    cv_.notify_all();
    work(fn, n_items);
    std::unique_lock<std::mutex> lk(m_);
    done_cv_.wait(lk, [&] {
      return job_done_.load(std::memory_order_acquire) == job_n_ &&
             active_ == 0;
    });
    job_open_ = false;  // late wakers must not touch the dead job
    job_fn_ = nullptr;
  }

  ~Pool() { stop_threads(); }

 private:
  Pool() : workers_(1) {}

  void start_threads(int count) {
    stop_ = false;
    for (int i = 0; i < count; ++i) {
      threads_.emplace_back([this] { thread_loop(); });
    }
  }

  void stop_threads() {
    {
      std::lock_guard<std::mutex> lk(m_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
    threads_.clear();
  }

  void work(const std::function<void(long)>& fn, long n) {
    for (;;) {
      long i = job_next_.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) break;
      fn(i);
      job_done_.fetch_add(1, std::memory_order_release);
    }
  }

  void thread_loop() {
    std::uint64_t seen = 0;
    std::unique_lock<std::mutex> lk(m_);
    for (;;) {
      cv_.wait(lk, [&] { return stop_ || (generation_ != seen && job_open_); });
      if (stop_) return;
      seen = generation_;
      const std::function<void(long)>* fn = job_fn_;
      long n = job_n_;
      ++active_;
      lk.unlock();
      work(*fn, n);
      lk.lock();
      --active_;
      if (job_done_.load(std::memory_order_acquire) == job_n_ && active_ == 0) {
        done_cv_.notify_all();
      }
    }
  }

  std::mutex api_mutex_;
  std::mutex m_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  std::vector<std::thread> threads_;
  int workers_;
  bool stop_ = false;
  bool job_open_ = false;
  std::uint64_t generation_ = 0;
  const std::function<void(long)>* job_fn_ = nullptr;
  long job_n_ = 0;
  int active_ = 0;
  std::atomic<long> job_next_{0};
  std::atomic<long> job_done_{0};
};

double binomial_std_err(double p, long long bits) {
  if (bits <= 0) return 0.0;
  double v = p * (1.0 - p) / static_cast<double>(bits);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

}  // namespace

void set_worker_count(int workers) { Pool::instance().set_workers(workers); }

int worker_count() { return Pool::instance().workers(); }

void validate(const SystemConfig& cfg) {
  if (cfg.b < 1) throw ConfigError("B must be >= 1");
  if (cfg.b_prime < 1 || cfg.b_prime > cfg.b) {
    throw ConfigError("B' must satisfy 1 <= B' <= B");
  }
  if (cfg.u < 1) throw ConfigError("U must be >= 1");
  if (cfg.adc_bits != kInfBits &&
      (cfg.adc_bits < kMinAdcBits || cfg.adc_bits > kMaxAdcBits)) {
    throw ConfigError("q must be in 1..8 or inf");
  }
  if (cfg.eq_bits != kInfBits && cfg.eq_bits < 1) {
    throw ConfigError("k must be >= 1 or inf");
  }
  if (!(cfg.f_s > 0.0)) throw ConfigError("f_s must be positive");
  if (!(cfg.es > 0.0)) throw ConfigError("Es must be positive");
  validate(cfg.channel);
  if (cfg.channel.kind == ChannelKind::kLosUla) {
    if (cfg.b < cfg.u) throw ConfigError("los-ula requires B >= U");
    double width = cfg.channel.sector_max_deg - cfg.channel.sector_min_deg;
    if (cfg.u * cfg.channel.min_separation_deg > width) {
      throw ConfigError("angular packing infeasible: U * min_separation "
                        "exceeds the sector width");
    }
  }
}

double noise_variance_for_snr(double es, double snr_db) {
  return es * std::pow(10.0, -snr_db / 10.0);
}

TrialRunner::TrialRunner(const SystemConfig& cfg, std::uint64_t master_seed)
    : cfg_(cfg), master_(master_seed) {
  validate(cfg_);
  calib_scale_ =
      1.0 / std::sqrt(calibration_constant(cfg_.channel, cfg_.b, cfg_.u,
                                           master_seed));
  constellation_ = &get_constellation(cfg_.modulation);
  active_ = select_antennas(cfg_.b, cfg_.b_prime);
  bits_per_trial_ = cfg_.u * constellation_->bits_per_symbol;
}

TrialRunner::Counts TrialRunner::run_range(double n0, long begin,
                                           long end) const {
  Counts counts;
  const int b = cfg_.b;
  const int u = cfg_.u;
  const int bps = constellation_->bits_per_symbol;
  const double rho = n0 / cfg_.es;
  const double noise_amp = std::sqrt(n0);

  CxVector s(u), noise(b), y_act(active_.length()), z, s_hat;
  std::vector<int> labels(u);

  for (long t = begin; t < end; ++t) {
    Rng ch_rng(stream_seed(master_, static_cast<std::uint64_t>(t), "channel"));
    ChannelRealization ch =
        apply_power_control(generate_channel(cfg_.channel, b, u, ch_rng));
    ch.h *= calib_scale_;
    ch.active = active_;

    Rng data_rng(stream_seed(master_, static_cast<std::uint64_t>(t), "data"));
    for (int col = 0; col < u; ++col) {
      labels[col] = static_cast<int>(data_rng.uniform_bits(bps));
      s(col) = std::sqrt(cfg_.es * ch.sigma2_u(col)) *
               constellation_->points[labels[col]];
    }

    Rng noise_rng(stream_seed(master_, static_cast<std::uint64_t>(t), "noise"));
    for (int row = 0; row < b; ++row) {
      noise(row) = noise_rng.cgauss();
    }

    // Received vector on the active antennas only; noise is drawn for the
    // full array so that draws pair across different B' settings.
    CxMatrix h_act = active_rows(ch.h, active_);
    y_act.noalias() = h_act * s;
    y_act += noise_amp * noise.segment(active_.first - 1, active_.length());

    if (cfg_.adc_bits == kInfBits) {
      z = y_act;
    } else {
      AdcInputStats stats =
          adc_input_variance(h_act, ch.sigma2_u, cfg_.es, n0);
      double step = optimal_step_size(cfg_.adc_bits,
                                      std::sqrt(0.5 * stats.sigma2_adc));
      z = adc_array(y_act, cfg_.adc_bits, step);
    }

    CxMatrix h_tilde;
    if (cfg_.csi == CsiMode::kPerfect) {
      h_tilde = h_act;
    } else {
      Rng pilot_rng(
          stream_seed(master_, static_cast<std::uint64_t>(t), "pilot"));
      h_tilde = estimate_channel(ch, cfg_.csi, cfg_.es, n0, pilot_rng);
    }

    counts.bits += bits_per_trial_;
    try {
      EqualizerBundle bundle = build_equalizer(h_tilde, rho, cfg_.eq_bits);
      s_hat = equalize(bundle, z);
      for (int col = 0; col < u; ++col) {
        double tx_scale = std::sqrt(cfg_.es * ch.sigma2_u(col));
        int detected = detect_symbol(s_hat(col) / tx_scale, *constellation_);
        counts.bit_errors += bit_errors_between(detected, labels[col]);
      }
    } catch (const DegenerateEqualizerError&) {
      // Unusable (k, channel) combination: score the channel use as BER 1/2
      // so sweeps stay total instead of aborting.
      counts.bit_errors += bits_per_trial_ / 2;
      ++counts.degenerate;
    }
  }
  return counts;
}

BerEstimate TrialRunner::run(double snr_db, long n_trials) const {
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  BerEstimate est;
  Counts total;
  const double n0 = noise_variance_for_snr(cfg_.es, snr_db);
  const long n_chunks = (n_trials + kTrialChunk - 1) / kTrialChunk;
  std::vector<Counts> slots(n_chunks);
  Pool::instance().run(n_chunks, [&](long ci) {
    long begin = ci * kTrialChunk;
    long end = std::min(n_trials, begin + kTrialChunk);
    slots[ci] = run_range(n0, begin, end);
  });
  for (const Counts& c : slots) {
    total.bit_errors += c.bit_errors;
    total.bits += c.bits;
    total.degenerate += c.degenerate;
  }
  est.bit_errors = total.bit_errors;
  est.bits_total = total.bits;
  est.trials = n_trials;
  est.ber = static_cast<double>(total.bit_errors) /
            static_cast<double>(total.bits);
  est.std_err = binomial_std_err(est.ber, total.bits);
  return est;
}

BerEstimate TrialRunner::run_adaptive(double snr_db,
                                      const ProbePolicy& policy) const {
  const double n0 = noise_variance_for_snr(cfg_.es, snr_db);
  const long long min_bits = std::max<long long>(policy.min_bits, 1);
  long round = std::max<long>(
      kTrialChunk,
      static_cast<long>((min_bits + bits_per_trial_ - 1) / bits_per_trial_));
  Counts total;
  long done = 0;
  for (;;) {
    long target = std::min<long>(policy.max_trials,
                                 done == 0 ? round : 2 * done);
    long n_new = target - done;
    const long n_chunks = (n_new + kTrialChunk - 1) / kTrialChunk;
    std::vector<Counts> slots(n_chunks);
    Pool::instance().run(n_chunks, [&](long ci) {
      long begin = done + ci * kTrialChunk;
      long end = std::min(target, begin + kTrialChunk);
      slots[ci] = run_range(n0, begin, end);
    });
    for (const Counts& c : slots) {
      total.bit_errors += c.bit_errors;
      total.bits += c.bits;
      total.degenerate += c.degenerate;
    }
    done = target;

    double ber = static_cast<double>(total.bit_errors) /
                 static_cast<double>(total.bits);
    double se = binomial_std_err(ber, total.bits);
    bool stop = done >= policy.max_trials;
    if (!stop && total.bits >= min_bits) {
      if (se <= policy.rel_precision * policy.target_ber) {
        stop = true;  // precise enough relative to the target
      } else if (policy.mode == ProbePolicy::Mode::kClassify &&
                 std::abs(ber - policy.target_ber) >=
                     policy.classify_margin * se) {
        stop = true;  // clearly on one side of the target
      }
    }
    if (stop) {
      BerEstimate est;
      est.bit_errors = total.bit_errors;
      est.bits_total = total.bits;
      est.trials = done;
      est.ber = ber;
      est.std_err = se;
      return est;
    }
  }
}

BerEstimate run_ber(const SystemConfig& cfg, double snr_db, long n_trials,
                    std::uint64_t master_seed) {
  TrialRunner runner(cfg, master_seed);
  return runner.run(snr_db, n_trials);
}

namespace {

void diag_probe(std::ostream* diag, double snr_db, const BerEstimate& est) {
  if (!diag) return;
  (*diag) << "# probe snr_db=" << snr_db << " ber=" << est.ber
          << " std_err=" << est.std_err << " trials=" << est.trials << '\n';
}

}  // namespace

MinSnrResult min_snr_for_target(const SystemConfig& cfg,
                                const SearchParams& search,
                                std::uint64_t master_seed,
                                std::ostream* diag) {
  if (!(search.target_ber > 0.0 && search.target_ber < 0.5)) {
    throw ConfigError("target_ber must lie in (0, 0.5)");
  }
  if (!(search.tol_db > 0.0) || !(search.grid_step_db > 0.0)) {
    throw ConfigError("tol_db and grid_step_db must be positive");
  }
  if (search.snr_max_db <= search.snr_min_db) {
    throw ConfigError("SNR search range must be nonempty");
  }
  TrialRunner runner(cfg, master_seed);
  ProbePolicy policy;
  policy.mode = ProbePolicy::Mode::kClassify;
  policy.target_ber = search.target_ber;
  policy.rel_precision = search.rel_precision;
  policy.min_bits = search.min_bits;
  policy.max_trials = search.max_trials;

  MinSnrResult result;
  result.floor_ber = 1.0;

  // Coarse walk upward until the target is first met.
  bool have_prev = false;
  double prev_snr = 0.0;
  BerEstimate prev{};
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (double snr = search.snr_min_db; snr <= search.snr_max_db + 1e-9;
       snr += search.grid_step_db) {
    BerEstimate est = runner.run_adaptive(snr, policy);
    diag_probe(diag, snr, est);
    result.floor_ber = std::min(result.floor_ber, est.ber);
    if (have_prev && diag) {
      double combined =
          std::sqrt(prev.std_err * prev.std_err + est.std_err * est.std_err);
      if (est.ber > prev.ber + 3.0 * combined) {
        (*diag) << "# warning: BER not decreasing in SNR between "
                << prev_snr << " and " << snr << " dB (" << prev.ber
                << " -> " << est.ber << ")\n";
      }
    }
    if (est.ber <= search.target_ber) {
      if (!have_prev) {
        // Already below target at the bottom of the search range; the range
        // floor is the best answer the configured window can give.
        if (diag) {
          (*diag) << "# note: target BER already met at the range floor\n";
        }
        result.feasible = true;
        result.min_snr_db = snr;
        return result;
      }
      lo = prev_snr;
      hi = snr;
      bracketed = true;
      break;
    }
    have_prev = true;
    prev_snr = snr;
    prev = est;
  }
  if (!bracketed) {
    result.feasible = false;
    return result;
  }

  while (hi - lo > search.tol_db) {
    double mid = 0.5 * (lo + hi);
    BerEstimate est = runner.run_adaptive(mid, policy);
    diag_probe(diag, mid, est);
    result.floor_ber = std::min(result.floor_ber, est.ber);
    if (est.ber <= search.target_ber) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.feasible = true;
  result.min_snr_db = hi;
  return result;
}

double snr_loss(const SystemConfig& cfg, const SystemConfig& reference,
                const SearchParams& search, std::uint64_t master_seed,
                std::ostream* diag) {
  MinSnrResult own = min_snr_for_target(cfg, search, master_seed, diag);
  if (!own.feasible) {
    throw InfeasibleError("snr_loss: configuration cannot reach the target "
                          "BER (floor " + std::to_string(own.floor_ber) + ")");
  }
  MinSnrResult ref = min_snr_for_target(reference, search, master_seed, diag);
  if (!ref.feasible) {
    throw InfeasibleError("snr_loss: reference cannot reach the target BER");
  }
  return own.min_snr_db - ref.min_snr_db;
}

SystemConfig ideal_reference(const SystemConfig& cfg) {
  SystemConfig ref = cfg;
  ref.adc_bits = kInfBits;
  ref.eq_bits = kInfBits;
  ref.b_prime = ref.b;
  return ref;
}

}  // namespace radeq
