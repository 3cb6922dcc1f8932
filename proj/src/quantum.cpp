#include "tempora/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tempora/error.hpp"

namespace tempora {

ProjectiveAngle::ProjectiveAngle(double phi) {
  if (!std::isfinite(phi)) {
    throw Error(ErrorKind::Range, "projective angle must be finite");
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi_ = std::fmod(phi, two_pi);
  if (phi_ < 0.0) phi_ += two_pi;
  if (phi_ >= two_pi) phi_ = 0.0;
}

KrausPair kraus_from_dilation(const DilationPair& d) {
  const double residual = orthonormality_residual(d.a, d.b);
  if (!(residual <= kOrthonormalTol)) {
    std::ostringstream os;
    os << "dilation states are not orthonormal (residual " << residual << ")";
    throw Error(ErrorKind::Orthonormality, os.str());
  }
  // Ancilla -1 block is amplitudes [0,1], ancilla +1 block is [2,3]. Column
  // -1 of K(i) is |a_i>, column +1 is |b_i>.
  return {Mat2C{{d.a[0], d.b[0], d.a[1], d.b[1]}},
          Mat2C{{d.a[2], d.b[2], d.a[3], d.b[3]}}};
}

KrausPair projective_kraus(ProjectiveAngle phi) {
  const double c = std::cos(phi.radians());
  const double s = std::sin(phi.radians());
  return {Mat2C{{c * c, c * s, c * s, s * s}},
          Mat2C{{s * s, -c * s, -c * s, c * c}}};
}

double completeness_residual(const KrausPair& k) {
  const Mat2C sum =
      adjoint(k.k_minus) * k.k_minus + adjoint(k.k_plus) * k.k_plus;
  return max_abs_diff(sum, Mat2C::identity());
}

void validate_kraus(const KrausPair& k) {
  for (const Mat2C* m : {&k.k_minus, &k.k_plus}) {
    for (const cplx& z : m->e) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw Error(ErrorKind::Completeness, "non-finite Kraus entry");
      }
    }
  }
  const double residual = completeness_residual(k);
  if (!(residual <= kQuantumCompletenessTol)) {
    std::ostringstream os;
    os << "sum of K^dagger K deviates from identity by " << residual;
    throw Error(ErrorKind::Completeness, os.str());
  }
}

bool is_valid_kraus(const KrausPair& k) noexcept {
  try {
    validate_kraus(k);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Mat2C observable_of(const KrausPair& k) {
  return adjoint(k.k_plus) * k.k_plus - adjoint(k.k_minus) * k.k_minus;
}

std::optional<QuantumStep> quantum_outcome_step(const KrausPair& k,
                                                const Vec2C& psi, Outcome i) {
  const Vec2C out = mat_apply(k[i], psi);
  const double p = norm_sq(out);
  if (p <= kZeroBranchTol) return std::nullopt;
  return QuantumStep{p, (1.0 / std::sqrt(p)) * out};
}

void validate_pure_state(const Vec2C& psi) {
  const double n = norm_sq(psi);
  if (!(std::abs(n - 1.0) <= 1e-10)) {
    std::ostringstream os;
    os << "state has squared norm " << n << ", expected 1";
    throw Error(ErrorKind::Validation, os.str());
  }
}

}  // namespace tempora
