#pragma once

#include <optional>

#include "tempora/algebra.hpp"
#include "tempora/outcome.hpp"

namespace tempora {

/// One-bit stochastic generator. Column x of t_minus/t_plus holds
/// p_i(y|x): the probability of emitting i and moving from x to y.
struct TransitionPair {
  Mat2R t_minus;
  Mat2R t_plus;

  const Mat2R& operator[](Outcome o) const {
    return o == Outcome::minus ? t_minus : t_plus;
  }
  Mat2R total() const { return t_minus + t_plus; }
  friend bool operator==(const TransitionPair&, const TransitionPair&) = default;
};

/// Two-parameter Markov chain: a = p(-1|-1), b = p(+1|+1).
struct MarkovParams {
  double a = 1.0;
  double b = 1.0;
};

/// Six-parameter hidden Markov machine. Column -1 of (t_minus, t_plus) is
/// (a, b, c, 1-a-b-c); column +1 is (d, e, f, 1-d-e-f).
struct HmmParams {
  double a = 0.25, b = 0.25, c = 0.25;
  double d = 0.25, e = 0.25, f = 0.25;
};

struct ProbVector {
  double p_minus = 1.0;
  double p_plus = 0.0;

  Vec2R vec() const { return {{p_minus, p_plus}}; }
  static ProbVector from(const Vec2R& v) { return {v.e[0], v.e[1]}; }
};

inline constexpr double kClassicalCompletenessTol = 1e-9;

TransitionPair mm_from_params(const MarkovParams& p);
TransitionPair hmm_from_params(const HmmParams& p);

/// Throws Error(Range) for entries outside [0,1] and Error(Completeness)
/// naming the column and residual when t_minus + t_plus is not
/// column-stochastic.
void validate_classical(const TransitionPair& m);
bool is_valid_classical(const TransitionPair& m) noexcept;

void validate_prob_vector(const ProbVector& eta);

struct ClassicalStep {
  double probability;
  ProbVector state;
};

/// Emits outcome i from state eta. Returns nullopt (a zero branch, not an
/// error) when the outcome has probability <= kZeroBranchTol.
std::optional<ClassicalStep> classical_outcome_step(const TransitionPair& m,
                                                    const ProbVector& eta,
                                                    Outcome i);

/// (1,1) . v
constexpr double total_weight(const Vec2R& v) { return v.e[0] + v.e[1]; }

}  // namespace tempora
