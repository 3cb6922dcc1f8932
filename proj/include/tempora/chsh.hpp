#pragma once

#include <array>
#include <cstdint>

#include "tempora/machine.hpp"

namespace tempora {

/// One observer's two basis choices; basis[0] is n=1, basis[1] is n=2.
struct PartySpec {
  std::array<Machine, 2> basis;
};

enum class OrderingMode { a_first, b_first, symmetrized };

/// canonical: |C11 + C12 + C21 - C22|.
/// max_relabel: best of the four placements of the single minus sign.
enum class ScoreConvention { canonical, max_relabel };

/// How a quantum delay inserts Charlie between the two measurements.
/// vector_sum applies (C(-1)+C(+1))^t to the post-measurement vector and
/// renormalises the four joint probabilities when they no longer sum to 1;
/// channel evolves the density matrix through rho -> sum_i C_i rho C_i^dagger.
enum class QuantumDelayMode { vector_sum, channel };

struct ChshResult {
  double c11 = 0.0, c12 = 0.0, c21 = 0.0, c22 = 0.0;
  double s_canonical = 0.0;
  double s_max = 0.0;
  OrderingMode mode = OrderingMode::symmetrized;
  ScoreConvention convention = ScoreConvention::max_relabel;
  /// Extremes of the raw four-outcome probability sums over every ordering
  /// evaluated. Both are 1 up to rounding except in vector-sum delays.
  double raw_sum_min = 1.0;
  double raw_sum_max = 1.0;

  double score() const {
    return convention == ScoreConvention::canonical ? s_canonical : s_max;
  }
  std::array<double, 4> correlators() const { return {c11, c12, c21, c22}; }
};

struct DelaySpec {
  Machine charlie;
  std::uint32_t t = 0;
  QuantumDelayMode quantum_mode = QuantumDelayMode::vector_sum;
};

/// (1,1) second(j) first(i) eta.
double joint_prob_classical(const TransitionPair& first,
                            const TransitionPair& second, const ProbVector& eta,
                            Outcome i, Outcome j);

/// || second(j) first(i) psi ||^2.
double joint_prob_quantum(const KrausPair& first, const KrausPair& second,
                          const Vec2C& psi, Outcome i, Outcome j);

/// All four joint probabilities, indexed [index(i)][index(j)], with an
/// optional delay between the measurements.
std::array<std::array<double, 2>, 2> joint_table(const Machine& first,
                                                 const Machine& second,
                                                 const MachineState& state,
                                                 const DelaySpec* delay = nullptr);

/// sum_{i,j} i j p(i,j) for `first` measured before `second`.
double expectation_seq(const Machine& first, const Machine& second,
                       const MachineState& state);

double correlator(const Machine& alice_n, const Machine& bob_m,
                  const MachineState& state,
                  OrderingMode mode = OrderingMode::symmetrized);

/// Scores from four correlators (c11, c12, c21, c22).
double score_canonical(const std::array<double, 4>& c);
double score_max_relabel(const std::array<double, 4>& c);

ChshResult chsh_score(const PartySpec& alice, const PartySpec& bob,
                      const MachineState& state,
                      OrderingMode mode = OrderingMode::symmetrized,
                      ScoreConvention conv = ScoreConvention::max_relabel);

/// As chsh_score, with Charlie's total map applied delay.t times between the
/// two measurements. t = 0 takes the undelayed path. Throws
/// Error(KindMismatch) if the machines and state do not share a kind.
ChshResult delayed_chsh_score(const PartySpec& alice, const PartySpec& bob,
                              const MachineState& state, const DelaySpec& delay,
                              OrderingMode mode = OrderingMode::symmetrized,
                              ScoreConvention conv = ScoreConvention::max_relabel);

struct SpatialResult {
  double c11, c12, c21, c22;
  double s_canonical;
  double s_max;
};

/// Closed-form CHSH for the Bell state |phi+> with observables
/// cos(theta) sigma_z + sin(theta) sigma_x, i.e. spin measurements in the
/// x-z plane, where <A B> = cos(theta_A - theta_B).
SpatialResult spatial_reference_score(double theta_a1, double theta_a2,
                                      double theta_b1, double theta_b2);

}  // namespace tempora
