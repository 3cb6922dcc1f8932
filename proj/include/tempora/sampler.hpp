#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tempora/chsh.hpp"
#include "tempora/rng.hpp"

namespace tempora {

enum class MachineKind { mm, hmm, hqmm, hqmm_proj };

std::string_view to_string(MachineKind kind);
std::optional<MachineKind> parse_machine_kind(std::string_view s);
inline bool is_quantum(MachineKind k) {
  return k == MachineKind::hqmm || k == MachineKind::hqmm_proj;
}

/// Human-readable description of the sampling measure used for `kind`.
std::string_view measure_description(MachineKind kind);

struct DelayConfig {
  std::vector<std::uint32_t> t_list{0};
  QuantumDelayMode quantum_mode = QuantumDelayMode::vector_sum;
};

struct SweepConfig {
  MachineKind kind = MachineKind::hmm;
  std::uint64_t count = 1'000'000;
  std::uint64_t master_seed = 42;
  std::uint32_t bins = 400;
  double lo = 0.0;
  double hi = 4.0;
  OrderingMode mode = OrderingMode::symmetrized;
  ScoreConvention convention = ScoreConvention::canonical;
  std::optional<DelayConfig> delay;
  /// Draw a random initial state per trial instead of the -1 state.
  bool random_initial_state = false;
};

/// Throws Error(Config) on an unusable configuration.
void validate_config(const SweepConfig& cfg);

/// Fixed-width histogram over [lo, hi) with under/overflow counters.
struct Histogram {
  double lo = 0.0;
  double hi = 4.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
  double observed_min;
  double observed_max;

  Histogram();
  Histogram(double lo, double hi, std::uint32_t bins);

  std::uint32_t bins() const { return static_cast<std::uint32_t>(counts.size()); }
  double bin_lo(std::uint32_t b) const;
  double bin_hi(std::uint32_t b) const;
  void add(double x);
  friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Elementwise sum. Throws Error(ShapeMismatch) unless lo, hi and bin
/// count agree.
Histogram histogram_merge(const Histogram& h1, const Histogram& h2);

/// Scores strictly above the bound by more than this count as above it.
inline constexpr double kAboveBoundTol = 1e-9;

struct SweepSummary {
  std::uint64_t total = 0;
  double mean = 0.0;
  double observed_max = 0.0;
  std::uint64_t above_2 = 0;
  std::uint64_t above_2sqrt2 = 0;

  double fraction_above_2() const;
  double fraction_above_2sqrt2() const;
};

struct SweepResult {
  Histogram histogram;
  SweepSummary summary;
};

struct DelayPoint {
  std::uint32_t t = 0;
  double mean_s = 0.0;
  double max_s = 0.0;
  double fraction_above_2 = 0.0;
  /// Smallest raw four-outcome probability sum seen (vector-sum delays
  /// drop below 1).
  double min_raw_sum = 1.0;
};

struct DelayStats {
  std::uint64_t count = 0;
  std::vector<DelayPoint> points;
};

/// Draws one machine of `kind` from `stream`. Retries Gram-Schmidt up to 16
/// times on degenerate Gaussian draws, then throws Error(Sampling).
Machine sample_machine(MachineKind kind, TrialStream& stream);

/// Machines and state for one trial: Alice bases 1/2, Bob bases 1/2, the
/// initial state, and Charlie when `with_charlie`.
struct Trial {
  PartySpec alice;
  PartySpec bob;
  MachineState state;
  std::optional<Machine> charlie;
};

Trial draw_trial(const SweepConfig& cfg, std::uint64_t trial, bool with_charlie);

/// workers = 0 uses TEMPORA_THREADS, then hardware concurrency. Results do
/// not depend on the worker count.
SweepResult run_sweep(const SweepConfig& cfg, unsigned workers = 0);

/// Requires cfg.delay with a non-empty t_list.
DelayStats run_delay_sweep(const SweepConfig& cfg, unsigned workers = 0);

unsigned resolve_workers(unsigned requested);

}  // namespace tempora
