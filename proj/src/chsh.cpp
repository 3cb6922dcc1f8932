#include "tempora/chsh.hpp"

#include <algorithm>
#include <cmath>

#include "tempora/error.hpp"

namespace tempora {

void validate_machine(const Machine& m) {
  std::visit(
      [](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, TransitionPair>) {
          validate_classical(x);
        } else {
          validate_kraus(x);
        }
      },
      m);
}

void validate_state(const MachineState& s) {
  if (const auto* eta = std::get_if<ProbVector>(&s)) {
    validate_prob_vector(*eta);
  } else {
    validate_pure_state(std::get<Vec2C>(s));
  }
}

MachineState minus_state(bool quantum) {
  if (quantum) return Vec2C{{cplx(1.0), cplx(0.0)}};
  return ProbVector{1.0, 0.0};
}

namespace {

using Table = std::array<std::array<double, 2>, 2>;

// Resolved form of a DelaySpec: the operator to insert and how.
struct Insert {
  enum class Kind { none, classical, quantum_vector, quantum_channel } kind =
      Kind::none;
  Mat2R classical_map;
  Mat2C quantum_map;
  const KrausPair* channel = nullptr;
  std::uint32_t t = 0;
};

Table table_classical(const TransitionPair& first, const TransitionPair& second,
                      const ProbVector& eta, const Insert& ins) {
  Table p{};
  const Vec2R v0 = eta.vec();
  for (Outcome i : kOutcomes) {
    Vec2R v = mat_apply(first[i], v0);
    if (ins.kind == Insert::Kind::classical) v = mat_apply(ins.classical_map, v);
    for (Outcome j : kOutcomes) {
      p[index(i)][index(j)] = total_weight(mat_apply(second[j], v));
    }
  }
  return p;
}

Mat2C apply_channel(const KrausPair& c, const Mat2C& rho) {
  return c.k_minus * rho * adjoint(c.k_minus) + c.k_plus * rho * adjoint(c.k_plus);
}

Table table_quantum(const KrausPair& first, const KrausPair& second,
                    const Vec2C& psi, const Insert& ins) {
  Table p{};
  for (Outcome i : kOutcomes) {
    Vec2C v = mat_apply(first[i], psi);
    if (ins.kind == Insert::Kind::quantum_channel) {
      Mat2C rho{{v.e[0] * std::conj(v.e[0]), v.e[0] * std::conj(v.e[1]),
                 v.e[1] * std::conj(v.e[0]), v.e[1] * std::conj(v.e[1])}};
      for (std::uint32_t s = 0; s < ins.t; ++s) rho = apply_channel(*ins.channel, rho);
      for (Outcome j : kOutcomes) {
        const Mat2C out = second[j] * rho * adjoint(second[j]);
        p[index(i)][index(j)] = out.e[0].real() + out.e[3].real();
      }
      continue;
    }
    if (ins.kind == Insert::Kind::quantum_vector) v = mat_apply(ins.quantum_map, v);
    for (Outcome j : kOutcomes) {
      p[index(i)][index(j)] = norm_sq(mat_apply(second[j], v));
    }
  }
  return p;
}

Table table_of(const Machine& first, const Machine& second,
               const MachineState& state, const Insert& ins) {
  if (const auto* eta = std::get_if<ProbVector>(&state)) {
    return table_classical(std::get<TransitionPair>(first),
                           std::get<TransitionPair>(second), *eta, ins);
  }
  return table_quantum(std::get<KrausPair>(first), std::get<KrausPair>(second),
                       std::get<Vec2C>(state), ins);
}

void require_same_kind(const Machine& a, const Machine& b,
                       const MachineState& state) {
  if (is_quantum(a) != is_quantum(state) || is_quantum(b) != is_quantum(state)) {
    throw Error(ErrorKind::KindMismatch,
                "machines and state must be all classical or all quantum");
  }
}

Insert resolve(const DelaySpec* delay, const MachineState& state) {
  Insert ins;
  if (delay == nullptr || delay->t == 0) return ins;
  if (is_quantum(delay->charlie) != is_quantum(state)) {
    throw Error(ErrorKind::KindMismatch,
                "Charlie must be the same kind as Alice and Bob");
  }
  ins.t = delay->t;
  if (const auto* c = std::get_if<TransitionPair>(&delay->charlie)) {
    ins.kind = Insert::Kind::classical;
    ins.classical_map = power(c->total(), delay->t);
  } else {
    const auto& k = std::get<KrausPair>(delay->charlie);
    if (delay->quantum_mode == QuantumDelayMode::channel) {
      ins.kind = Insert::Kind::quantum_channel;
      ins.channel = &k;
    } else {
      ins.kind = Insert::Kind::quantum_vector;
      ins.quantum_map = power(k.total(), delay->t);
    }
  }
  return ins;
}

struct Expectation {
  double value;
  double raw_sum;
};

Expectation expectation_of(const Table& p, const Insert& ins) {
  const double raw = (p[0][0] + p[0][1]) + (p[1][0] + p[1][1]);
  double e = (p[0][0] - p[0][1]) - (p[1][0] - p[1][1]);
  if (ins.kind == Insert::Kind::quantum_vector &&
      std::abs(raw - 1.0) > kQuantumCompletenessTol) {
    // A vanishing total leaves no outcome statistics; report no correlation.
    e = raw > kZeroBranchTol ? e / raw : 0.0;
  }
  return {e, raw};
}

struct Accum {
  double raw_min = 1.0;
  double raw_max = 1.0;
  bool seen = false;

  void add(double raw) {
    if (!seen) {
      raw_min = raw_max = raw;
      seen = true;
    } else {
      raw_min = std::min(raw_min, raw);
      raw_max = std::max(raw_max, raw);
    }
  }
};

double correlator_impl(const Machine& a, const Machine& b,
                       const MachineState& state, OrderingMode mode,
                       const Insert& ins, Accum& acc) {
  switch (mode) {
    case OrderingMode::a_first: {
      const auto e = expectation_of(table_of(a, b, state, ins), ins);
      acc.add(e.raw_sum);
      return e.value;
    }
    case OrderingMode::b_first: {
      const auto e = expectation_of(table_of(b, a, state, ins), ins);
      acc.add(e.raw_sum);
      return e.value;
    }
    case OrderingMode::symmetrized: {
      const auto ab = expectation_of(table_of(a, b, state, ins), ins);
      const auto ba = expectation_of(table_of(b, a, state, ins), ins);
      acc.add(ab.raw_sum);
      acc.add(ba.raw_sum);
      return 0.5 * (ab.value + ba.value);
    }
  }
  return 0.0;
}

ChshResult score_impl(const PartySpec& alice, const PartySpec& bob,
                      const MachineState& state, OrderingMode mode,
                      ScoreConvention conv, const Insert& ins) {
  for (const auto& a : alice.basis) {
    for (const auto& b : bob.basis) require_same_kind(a, b, state);
  }
  Accum acc;
  ChshResult r;
  r.c11 = correlator_impl(alice.basis[0], bob.basis[0], state, mode, ins, acc);
  r.c12 = correlator_impl(alice.basis[0], bob.basis[1], state, mode, ins, acc);
  r.c21 = correlator_impl(alice.basis[1], bob.basis[0], state, mode, ins, acc);
  r.c22 = correlator_impl(alice.basis[1], bob.basis[1], state, mode, ins, acc);
  const auto c = r.correlators();
  r.s_canonical = score_canonical(c);
  r.s_max = score_max_relabel(c);
  r.mode = mode;
  r.convention = conv;
  r.raw_sum_min = acc.raw_min;
  r.raw_sum_max = acc.raw_max;
  return r;
}

}  // namespace

double joint_prob_classical(const TransitionPair& first,
                            const TransitionPair& second, const ProbVector& eta,
                            Outcome i, Outcome j) {
  return total_weight(mat_apply(second[j], mat_apply(first[i], eta.vec())));
}

double joint_prob_quantum(const KrausPair& first, const KrausPair& second,
                          const Vec2C& psi, Outcome i, Outcome j) {
  return norm_sq(mat_apply(second[j], mat_apply(first[i], psi)));
}

std::array<std::array<double, 2>, 2> joint_table(const Machine& first,
                                                 const Machine& second,
                                                 const MachineState& state,
                                                 const DelaySpec* delay) {
  require_same_kind(first, second, state);
  return table_of(first, second, state, resolve(delay, state));
}

double expectation_seq(const Machine& first, const Machine& second,
                       const MachineState& state) {
  require_same_kind(first, second, state);
  Insert none;
  return expectation_of(table_of(first, second, state, none), none).value;
}

double correlator(const Machine& alice_n, const Machine& bob_m,
                  const MachineState& state, OrderingMode mode) {
  require_same_kind(alice_n, bob_m, state);
  Accum acc;
  return correlator_impl(alice_n, bob_m, state, mode, Insert{}, acc);
}

double score_canonical(const std::array<double, 4>& c) {
  return std::abs(c[0] + c[1] + c[2] - c[3]);
}

double score_max_relabel(const std::array<double, 4>& c) {
  // The last placement is the canonical expression, evaluated identically,
  // so s_canonical <= s_max holds exactly.
  return std::max({std::abs(-c[0] + c[1] + c[2] + c[3]),
                   std::abs(c[0] - c[1] + c[2] + c[3]),
                   std::abs(c[0] + c[1] - c[2] + c[3]),
                   score_canonical(c)});
}

ChshResult chsh_score(const PartySpec& alice, const PartySpec& bob,
                      const MachineState& state, OrderingMode mode,
                      ScoreConvention conv) {
  return score_impl(alice, bob, state, mode, conv, Insert{});
}

ChshResult delayed_chsh_score(const PartySpec& alice, const PartySpec& bob,
                              const MachineState& state, const DelaySpec& delay,
                              OrderingMode mode, ScoreConvention conv) {
  if (is_quantum(delay.charlie) != is_quantum(state)) {
    throw Error(ErrorKind::KindMismatch,
                "Charlie must be the same kind as Alice and Bob");
  }
  return score_impl(alice, bob, state, mode, conv, resolve(&delay, state));
}

SpatialResult spatial_reference_score(double theta_a1, double theta_a2,
                                      double theta_b1, double theta_b2) {
  SpatialResult r{};
  r.c11 = std::cos(theta_a1 - theta_b1);
  r.c12 = std::cos(theta_a1 - theta_b2);
  r.c21 = std::cos(theta_a2 - theta_b1);
  r.c22 = std::cos(theta_a2 - theta_b2);
  const std::array<double, 4> c{r.c11, r.c12, r.c21, r.c22};
  r.s_canonical = score_canonical(c);
  r.s_max = score_max_relabel(c);
  return r;
}

}  // namespace tempora
