#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <type_traits>
#include <utility>

namespace tempora {

using cplx = std::complex<double>;

// Basis order everywhere is (|-1>, |+1>). Index 0 is the -1 state.

template <typename T>
struct Vec2 {
  std::array<T, 2> e{};

  constexpr T& operator[](std::size_t i) { return e[i]; }
  constexpr const T& operator[](std::size_t i) const { return e[i]; }
  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

/// Row-major 2x2 matrix: (0,0) (0,1) / (1,0) (1,1).
template <typename T>
struct Mat2 {
  std::array<T, 4> e{};

  constexpr T& operator()(std::size_t r, std::size_t c) { return e[2 * r + c]; }
  constexpr const T& operator()(std::size_t r, std::size_t c) const {
    return e[2 * r + c];
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;

  static constexpr Mat2 identity() { return Mat2{{T(1), T(0), T(0), T(1)}}; }
  static constexpr Mat2 zero() { return Mat2{}; }
};

using Vec2R = Vec2<double>;
using Vec2C = Vec2<cplx>;
using Mat2R = Mat2<double>;
using Mat2C = Mat2<cplx>;

/// Two-qubit amplitudes, ancilla first: (-1,-1), (-1,+1), (+1,-1), (+1,+1).
/// The ancilla projector onto |i> therefore selects the upper (i=-1) or
/// lower (i=+1) half.
using Vec4C = std::array<cplx, 4>;

template <typename T>
constexpr Vec2<T> mat_apply(const Mat2<T>& m, const Vec2<T>& v) {
  return {{m.e[0] * v.e[0] + m.e[1] * v.e[1], m.e[2] * v.e[0] + m.e[3] * v.e[1]}};
}

template <typename T>
constexpr Mat2<T> operator*(const Mat2<T>& a, const Mat2<T>& b) {
  return {{a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
           a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]}};
}

template <typename T>
constexpr Mat2<T> operator+(const Mat2<T>& a, const Mat2<T>& b) {
  return {{a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]}};
}

template <typename T>
constexpr Mat2<T> operator-(const Mat2<T>& a, const Mat2<T>& b) {
  return {{a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]}};
}

template <typename T, typename S>
  requires std::is_convertible_v<S, T>
constexpr Mat2<T> operator*(S s, const Mat2<T>& a) {
  return {{T(s) * a.e[0], T(s) * a.e[1], T(s) * a.e[2], T(s) * a.e[3]}};
}

template <typename T>
constexpr Vec2<T> operator+(const Vec2<T>& a, const Vec2<T>& b) {
  return {{a.e[0] + b.e[0], a.e[1] + b.e[1]}};
}

template <typename T, typename S>
  requires std::is_convertible_v<S, T>
constexpr Vec2<T> operator*(S s, const Vec2<T>& a) {
  return {{T(s) * a.e[0], T(s) * a.e[1]}};
}

Mat2C adjoint(const Mat2C& m);
Mat2C to_complex(const Mat2R& m);

/// Integer matrix power by repeated squaring; power(m, 0) is the identity.
template <typename T>
Mat2<T> power(Mat2<T> m, unsigned t) {
  auto result = Mat2<T>::identity();
  while (t > 0) {
    if (t & 1u) result = result * m;
    m = m * m;
    t >>= 1u;
  }
  return result;
}

double norm_sq(const Vec2C& v);
double norm_sq(const Vec4C& v);
/// <u|v>, conjugate-linear in the first argument.
cplx inner(const Vec4C& u, const Vec4C& v);
cplx inner(const Vec2C& u, const Vec2C& v);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Mat2C& a, const Mat2C& b);
double max_abs_diff(const Mat2R& a, const Mat2R& b);

inline constexpr double kDegeneracyTol = 1e-12;
inline constexpr double kOrthonormalTol = 1e-10;

/// Gram-Schmidt on (u, v): normalise u, project it out of v, normalise.
/// Throws Error(DegenerateInput) when either step would divide by a norm
/// below kDegeneracyTol.
std::pair<Vec4C, Vec4C> orthonormalize_pair(const Vec4C& u, const Vec4C& v);

/// Residual of the three orthonormality conditions (max of the three).
double orthonormality_residual(const Vec4C& a, const Vec4C& b);

}  // namespace tempora
