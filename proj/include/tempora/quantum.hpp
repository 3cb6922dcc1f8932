#pragma once

#include <optional>

#include "tempora/algebra.hpp"
#include "tempora/outcome.hpp"

namespace tempora {

/// Two-outcome generalised measurement on one qubit.
struct KrausPair {
  Mat2C k_minus;
  Mat2C k_plus;

  const Mat2C& operator[](Outcome o) const {
    return o == Outcome::minus ? k_minus : k_plus;
  }
  /// K(-1) + K(+1), the operator inserted by a vector-sum delay.
  Mat2C total() const { return k_minus + k_plus; }
  friend bool operator==(const KrausPair&, const KrausPair&) = default;
};

/// Images of the memory basis states under the entangling unitary with the
/// ancilla prepared in |-1>: |-1> -> |a>, |+1> -> |b>.
struct DilationPair {
  Vec4C a;
  Vec4C b;
};

/// Ancilla measurement angle in radians, reduced into [0, 2pi).
class ProjectiveAngle {
 public:
  explicit ProjectiveAngle(double phi);
  double radians() const { return phi_; }

 private:
  double phi_;
};

inline constexpr double kQuantumCompletenessTol = 1e-9;

/// K(i) = |a_i><-1| + |b_i><+1| with |a_i>, |b_i> the ancilla-i blocks.
/// Throws Error(Orthonormality) if the dilation is not orthonormal.
KrausPair kraus_from_dilation(const DilationPair& d);

/// Rank-1 projectors onto cos(phi)|-1> + sin(phi)|+1> (outcome -1) and
/// sin(phi)|-1> - cos(phi)|+1> (outcome +1).
KrausPair projective_kraus(ProjectiveAngle phi);

/// Largest entrywise deviation of sum_i K(i)^dagger K(i) from identity.
double completeness_residual(const KrausPair& k);

/// Throws Error(Completeness) carrying the max residual.
void validate_kraus(const KrausPair& k);
bool is_valid_kraus(const KrausPair& k) noexcept;

/// A = K(+1)^dagger K(+1) - K(-1)^dagger K(-1).
Mat2C observable_of(const KrausPair& k);

struct QuantumStep {
  double probability;
  Vec2C state;
};

/// Born-rule step. nullopt marks a zero branch (probability <= 1e-12).
std::optional<QuantumStep> quantum_outcome_step(const KrausPair& k,
                                                const Vec2C& psi, Outcome i);

void validate_pure_state(const Vec2C& psi);

}  // namespace tempora
