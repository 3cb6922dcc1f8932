#include "tempora/algebra.hpp"

#include <algorithm>

#include "tempora/error.hpp"

namespace tempora {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::Completeness: return "CompletenessError";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Orthonormality: return "OrthonormalityError";
    case ErrorKind::KindMismatch: return "KindMismatch";
    case ErrorKind::Sampling: return "SamplingError";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Validation: return "ValidationError";
  }
  return "Error";
}

Mat2C adjoint(const Mat2C& m) {
  return {{std::conj(m.e[0]), std::conj(m.e[2]), std::conj(m.e[1]),
           std::conj(m.e[3])}};
}

Mat2C to_complex(const Mat2R& m) {
  return {{cplx(m.e[0]), cplx(m.e[1]), cplx(m.e[2]), cplx(m.e[3])}};
}

double norm_sq(const Vec2C& v) { return std::norm(v.e[0]) + std::norm(v.e[1]); }

double norm_sq(const Vec4C& v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return s;
}

cplx inner(const Vec4C& u, const Vec4C& v) {
  cplx s{};
  for (std::size_t k = 0; k < 4; ++k) s += std::conj(u[k]) * v[k];
  return s;
}

cplx inner(const Vec2C& u, const Vec2C& v) {
  return std::conj(u.e[0]) * v.e[0] + std::conj(u.e[1]) * v.e[1];
}

double max_abs_diff(const Mat2C& a, const Mat2C& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < 4; ++k) r = std::max(r, std::abs(a.e[k] - b.e[k]));
  return r;
}

double max_abs_diff(const Mat2R& a, const Mat2R& b) {
  double r = 0.0;
  for (std::size_t k = 0; k < 4; ++k) r = std::max(r, std::abs(a.e[k] - b.e[k]));
  return r;
}

std::pair<Vec4C, Vec4C> orthonormalize_pair(const Vec4C& u, const Vec4C& v) {
  const double nu = std::sqrt(norm_sq(u));
  if (!(nu >= kDegeneracyTol)) {
    throw Error(ErrorKind::DegenerateInput, "first vector has near-zero norm");
  }
  Vec4C a;
  for (std::size_t k = 0; k < 4; ++k) a[k] = u[k] / nu;

  const cplx overlap = inner(a, v);
  Vec4C w;
  for (std::size_t k = 0; k < 4; ++k) w[k] = v[k] - overlap * a[k];
  const double nw = std::sqrt(norm_sq(w));
  if (!(nw >= kDegeneracyTol)) {
    throw Error(ErrorKind::DegenerateInput,
                "second vector is parallel to the first or near-zero");
  }
  Vec4C b;
  for (std::size_t k = 0; k < 4; ++k) b[k] = w[k] / nw;

  // Second projection pass: a single pass loses orthogonality when v is
  // nearly parallel to u.
  const cplx residual = inner(a, b);
  for (std::size_t k = 0; k < 4; ++k) b[k] -= residual * a[k];
  const double nb = std::sqrt(norm_sq(b));
  for (auto& z : b) z /= nb;
  return {a, b};
}

double orthonormality_residual(const Vec4C& a, const Vec4C& b) {
  return std::max({std::abs(norm_sq(a) - 1.0), std::abs(norm_sq(b) - 1.0),
                   std::abs(inner(a, b))});
}

}  // namespace tempora
