#include "tempora/classical.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tempora/error.hpp"

namespace tempora {

namespace {

void require_in(double x, double lo, double hi, const char* name) {
  if (!(x >= lo && x <= hi)) {
    std::ostringstream os;
    os << name << " = " << x << " outside [" << lo << ", " << hi << "]";
    throw Error(ErrorKind::Range, os.str());
  }
}

// Tolerance for sums such as a+b+c <= 1 computed in floating point.
constexpr double kBoundSlack = 1e-12;

}  // namespace

TransitionPair mm_from_params(const MarkovParams& p) {
  require_in(p.a, 0.0, 1.0, "a");
  require_in(p.b, 0.0, 1.0, "b");
  return {Mat2R{{p.a, 1.0 - p.b, 0.0, 0.0}}, Mat2R{{0.0, 0.0, 1.0 - p.a, p.b}}};
}

TransitionPair hmm_from_params(const HmmParams& p) {
  require_in(p.a, 0.0, 1.0, "a");
  require_in(p.b, 0.0, 1.0 - p.a + kBoundSlack, "b");
  require_in(p.c, 0.0, 1.0 - p.a - p.b + kBoundSlack, "c");
  require_in(p.d, 0.0, 1.0, "d");
  require_in(p.e, 0.0, 1.0 - p.d + kBoundSlack, "e");
  require_in(p.f, 0.0, 1.0 - p.d - p.e + kBoundSlack, "f");
  const double g = std::max(0.0, 1.0 - p.a - p.b - p.c);
  const double h = std::max(0.0, 1.0 - p.d - p.e - p.f);
  return {Mat2R{{p.a, p.d, p.b, p.e}}, Mat2R{{p.c, p.f, g, h}}};
}

void validate_classical(const TransitionPair& m) {
  for (const Mat2R* t : {&m.t_minus, &m.t_plus}) {
    for (double x : t->e) {
      if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os << "transition entry " << x << " outside [0, 1]";
        throw Error(ErrorKind::Range, os.str());
      }
    }
  }
  const Mat2R sum = m.total();
  for (std::size_t col = 0; col < 2; ++col) {
    const double residual = sum(0, col) + sum(1, col) - 1.0;
    if (!(std::abs(residual) <= kClassicalCompletenessTol)) {
      std::ostringstream os;
      os << "column " << (col == 0 ? "-1" : "+1") << " of T(-1)+T(+1) sums to "
         << 1.0 + residual << " (residual " << residual << ")";
      throw Error(ErrorKind::Completeness, os.str());
    }
  }
}

bool is_valid_classical(const TransitionPair& m) noexcept {
  try {
    validate_classical(m);
    return true;
  } catch (const Error&) {
    return false;
  }
}

void validate_prob_vector(const ProbVector& eta) {
  if (!(eta.p_minus >= 0.0 && eta.p_plus >= 0.0) ||
      !(std::abs(eta.p_minus + eta.p_plus - 1.0) <= kClassicalCompletenessTol)) {
    std::ostringstream os;
    os << "invalid probability vector (" << eta.p_minus << ", " << eta.p_plus
       << ")";
    throw Error(ErrorKind::Validation, os.str());
  }
}

std::optional<ClassicalStep> classical_outcome_step(const TransitionPair& m,
                                                    const ProbVector& eta,
                                                    Outcome i) {
  const Vec2R next = mat_apply(m[i], eta.vec());
  const double p = total_weight(next);
  if (p <= kZeroBranchTol) return std::nullopt;
  return ClassicalStep{p, ProbVector{next.e[0] / p, next.e[1] / p}};
}

}  // namespace tempora
