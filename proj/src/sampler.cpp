#include "tempora/sampler.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "tempora/error.hpp"

namespace tempora {

std::string_view to_string(MachineKind kind) {
  switch (kind) {
    case MachineKind::mm: return "mm";
    case MachineKind::hmm: return "hmm";
    case MachineKind::hqmm: return "hqmm";
    case MachineKind::hqmm_proj: return "hqmm-proj";
  }
  return "?";
}

std::optional<MachineKind> parse_machine_kind(std::string_view s) {
  for (auto k : {MachineKind::mm, MachineKind::hmm, MachineKind::hqmm,
                 MachineKind::hqmm_proj}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::string_view measure_description(MachineKind kind) {
  switch (kind) {
    case MachineKind::mm:
      return "a,b ~ Uniform[0,1]";
    case MachineKind::hmm:
      return "nested uniform: a,d ~ U[0,1]; b ~ U[0,1-a]; c ~ U[0,1-a-b]; "
             "e ~ U[0,1-d]; f ~ U[0,1-d-e] (not uniform on the simplex)";
    case MachineKind::hqmm:
      return "dilation |a>,|b> from i.i.d. complex Gaussians in C^4, "
             "Gram-Schmidt (unitarily invariant on orthonormal pairs)";
    case MachineKind::hqmm_proj:
      return "phi ~ Uniform[0,2pi), rank-1 projectors";
  }
  return "";
}

void validate_config(const SweepConfig& cfg) {
  if (cfg.bins == 0) throw Error(ErrorKind::Config, "bins must be positive");
  if (!std::isfinite(cfg.lo) || !std::isfinite(cfg.hi) || !(cfg.lo < cfg.hi)) {
    throw Error(ErrorKind::Config, "range requires finite lo < hi");
  }
  if (cfg.delay && cfg.delay->t_list.empty()) {
    throw Error(ErrorKind::Config, "delay t_list must not be empty");
  }
}

// ---------------------------------------------------------------- Histogram

Histogram::Histogram() : Histogram(0.0, 4.0, 400) {}

Histogram::Histogram(double lo_, double hi_, std::uint32_t bins)
    : lo(lo_),
      hi(hi_),
      counts(bins, 0),
      observed_min(std::numeric_limits<double>::infinity()),
      observed_max(-std::numeric_limits<double>::infinity()) {}

double Histogram::bin_lo(std::uint32_t b) const {
  return lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(bins());
}

double Histogram::bin_hi(std::uint32_t b) const { return bin_lo(b + 1); }

void Histogram::add(double x) {
  ++total;
  observed_min = std::min(observed_min, x);
  observed_max = std::max(observed_max, x);
  if (x < lo) {
    ++underflow;
    return;
  }
  if (!(x < hi)) {
    ++overflow;
    return;
  }
  auto b = static_cast<std::uint64_t>((x - lo) / (hi - lo) * bins());
  if (b >= counts.size()) b = counts.size() - 1;
  ++counts[b];
}

Histogram histogram_merge(const Histogram& h1, const Histogram& h2) {
  if (h1.lo != h2.lo || h1.hi != h2.hi || h1.counts.size() != h2.counts.size()) {
    throw Error(ErrorKind::ShapeMismatch, "histograms differ in range or bins");
  }
  Histogram out = h1;
  for (std::size_t b = 0; b < out.counts.size(); ++b) out.counts[b] += h2.counts[b];
  out.total += h2.total;
  out.underflow += h2.underflow;
  out.overflow += h2.overflow;
  out.observed_min = std::min(h1.observed_min, h2.observed_min);
  out.observed_max = std::max(h1.observed_max, h2.observed_max);
  return out;
}

double SweepSummary::fraction_above_2() const {
  return total ? static_cast<double>(above_2) / static_cast<double>(total) : 0.0;
}

double SweepSummary::fraction_above_2sqrt2() const {
  return total ? static_cast<double>(above_2sqrt2) / static_cast<double>(total)
               : 0.0;
}

// ----------------------------------------------------------------- sampling

namespace {

constexpr int kMaxDilationAttempts = 16;

Vec4C gaussian_vec4(TrialStream& stream) {
  Vec4C v;
  for (auto& z : v) {
    const double re = stream.normal();
    const double im = stream.normal();
    z = cplx(re, im);
  }
  return v;
}

}  // namespace

Machine sample_machine(MachineKind kind, TrialStream& stream) {
  switch (kind) {
    case MachineKind::mm: {
      const double a = stream.uniform();
      const double b = stream.uniform();
      return mm_from_params({a, b});
    }
    case MachineKind::hmm: {
      HmmParams p;
      p.a = stream.uniform();
      p.b = stream.uniform(0.0, 1.0 - p.a);
      p.c = stream.uniform(0.0, std::max(0.0, 1.0 - p.a - p.b));
      p.d = stream.uniform();
      p.e = stream.uniform(0.0, 1.0 - p.d);
      p.f = stream.uniform(0.0, std::max(0.0, 1.0 - p.d - p.e));
      return hmm_from_params(p);
    }
    case MachineKind::hqmm: {
      for (int attempt = 0; attempt < kMaxDilationAttempts; ++attempt) {
        const Vec4C u = gaussian_vec4(stream);
        const Vec4C v = gaussian_vec4(stream);
        try {
          const auto [a, b] = orthonormalize_pair(u, v);
          return kraus_from_dilation({a, b});
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::DegenerateInput) throw;
        }
      }
      throw Error(ErrorKind::Sampling,
                  "dilation sampling degenerate after 16 attempts");
    }
    case MachineKind::hqmm_proj:
      return projective_kraus(
          ProjectiveAngle(stream.uniform(0.0, 2.0 * std::numbers::pi)));
  }
  throw Error(ErrorKind::Config, "unknown machine kind");
}

namespace {

MachineState random_state(bool quantum, TrialStream& stream) {
  if (!quantum) {
    const double p = stream.uniform();
    return ProbVector{p, 1.0 - p};
  }
  Vec2C psi{{cplx(stream.normal(), stream.normal()),
             cplx(stream.normal(), stream.normal())}};
  const double n = std::sqrt(norm_sq(psi));
  return (1.0 / n) * psi;
}

}  // namespace

Trial draw_trial(const SweepConfig& cfg, std::uint64_t trial, bool with_charlie) {
  TrialStream stream(cfg.master_seed, trial);
  const bool quantum = is_quantum(cfg.kind);
  Trial out{
      PartySpec{{sample_machine(cfg.kind, stream), sample_machine(cfg.kind, stream)}},
      PartySpec{{sample_machine(cfg.kind, stream), sample_machine(cfg.kind, stream)}},
      minus_state(quantum),
      std::nullopt};
  if (cfg.random_initial_state) out.state = random_state(quantum, stream);
  if (with_charlie) out.charlie = sample_machine(cfg.kind, stream);
  return out;
}

// ------------------------------------------------------------- parallel run

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TEMPORA_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n > 0) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Trials are grouped into fixed blocks independent of the worker count.
// Floating-point sums are kept per block and reduced in block order, so
// results are bit-identical for any number of workers. Integer counters are
// merged per worker.
constexpr std::uint64_t kBlockSize = 4096;

template <typename WorkerState, typename BlockFn>
std::vector<WorkerState> run_blocks(std::uint64_t count, unsigned workers,
                                    const WorkerState& init, BlockFn&& fn) {
  const std::uint64_t blocks = (count + kBlockSize - 1) / kBlockSize;
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
  std::vector<WorkerState> states(workers, init);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned w) {
    try {
      for (std::uint64_t b = next++; b < blocks; b = next++) {
        const std::uint64_t begin = b * kBlockSize;
        const std::uint64_t end = std::min(count, begin + kBlockSize);
        fn(states[w], b, begin, end);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next = blocks;
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }
  if (failure) std::rethrow_exception(failure);
  return states;
}

struct SweepWorker {
  Histogram histogram;
  std::uint64_t above_2 = 0;
  std::uint64_t above_2sqrt2 = 0;
};

}  // namespace

SweepResult run_sweep(const SweepConfig& cfg, unsigned workers) {
  validate_config(cfg);
  const std::uint64_t blocks = (cfg.count + kBlockSize - 1) / kBlockSize;
  std::vector<double> block_sums(blocks, 0.0);
  const double two_sqrt2 = 2.0 * std::numbers::sqrt2;

  SweepWorker init{Histogram(cfg.lo, cfg.hi, cfg.bins)};
  auto parts = run_blocks(
      cfg.count, resolve_workers(workers), init,
      [&](SweepWorker& w, std::uint64_t block, std::uint64_t begin,
          std::uint64_t end) {
        double sum = 0.0;
        for (std::uint64_t k = begin; k < end; ++k) {
          const Trial trial = draw_trial(cfg, k, false);
          const double s =
              chsh_score(trial.alice, trial.bob, trial.state, cfg.mode,
                         cfg.convention)
                  .score();
          w.histogram.add(s);
          sum += s;
          if (s > 2.0 + kAboveBoundTol) ++w.above_2;
          if (s > two_sqrt2 + kAboveBoundTol) ++w.above_2sqrt2;
        }
        block_sums[block] = sum;
      });

  SweepResult out{Histogram(cfg.lo, cfg.hi, cfg.bins), {}};
  for (const auto& p : parts) {
    out.histogram = histogram_merge(out.histogram, p.histogram);
    out.summary.above_2 += p.above_2;
    out.summary.above_2sqrt2 += p.above_2sqrt2;
  }
  double total_sum = 0.0;
  for (double s : block_sums) total_sum += s;
  out.summary.total = out.histogram.total;
  out.summary.mean =
      cfg.count ? total_sum / static_cast<double>(cfg.count) : 0.0;
  out.summary.observed_max = cfg.count ? out.histogram.observed_max : 0.0;
  return out;
}

namespace {

struct DelayWorker {
  std::vector<double> max_s;
  std::vector<double> min_raw;
  std::vector<std::uint64_t> above_2;
};

}  // namespace

DelayStats run_delay_sweep(const SweepConfig& cfg, unsigned workers) {
  validate_config(cfg);
  if (!cfg.delay) throw Error(ErrorKind::Config, "delay sweep needs a t_list");
  const auto& t_list = cfg.delay->t_list;
  const std::size_t nt = t_list.size();
  const std::uint64_t blocks = (cfg.count + kBlockSize - 1) / kBlockSize;
  std::vector<double> block_sums(blocks * nt, 0.0);

  DelayWorker init{std::vector<double>(nt, 0.0),
                   std::vector<double>(nt, std::numeric_limits<double>::infinity()),
                   std::vector<std::uint64_t>(nt, 0)};
  auto parts = run_blocks(
      cfg.count, resolve_workers(workers), init,
      [&](DelayWorker& w, std::uint64_t block, std::uint64_t begin,
          std::uint64_t end) {
        std::vector<double> sums(nt, 0.0);
        for (std::uint64_t k = begin; k < end; ++k) {
          const Trial trial = draw_trial(cfg, k, true);
          for (std::size_t ti = 0; ti < nt; ++ti) {
            const DelaySpec delay{*trial.charlie, t_list[ti],
                                  cfg.delay->quantum_mode};
            const ChshResult r = delayed_chsh_score(
                trial.alice, trial.bob, trial.state, delay, cfg.mode,
                cfg.convention);
            const double s = r.score();
            sums[ti] += s;
            w.max_s[ti] = std::max(w.max_s[ti], s);
            w.min_raw[ti] = std::min(w.min_raw[ti], r.raw_sum_min);
            if (s > 2.0 + kAboveBoundTol) ++w.above_2[ti];
          }
        }
        std::copy(sums.begin(), sums.end(), block_sums.begin() + block * nt);
      });

  DelayStats out;
  out.count = cfg.count;
  for (std::size_t ti = 0; ti < nt; ++ti) {
    DelayPoint p;
    p.t = t_list[ti];
    double total = 0.0;
    for (std::uint64_t b = 0; b < blocks; ++b) total += block_sums[b * nt + ti];
    std::uint64_t above = 0;
    double min_raw = std::numeric_limits<double>::infinity();
    for (const auto& w : parts) {
      p.max_s = std::max(p.max_s, w.max_s[ti]);
      min_raw = std::min(min_raw, w.min_raw[ti]);
      above += w.above_2[ti];
    }
    if (cfg.count > 0) {
      const auto n = static_cast<double>(cfg.count);
      p.mean_s = total / n;
      p.fraction_above_2 = static_cast<double>(above) / n;
      p.min_raw_sum = min_raw;
    }
    out.points.push_back(p);
  }
  return out;
}

}  // namespace tempora
