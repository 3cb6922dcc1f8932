#include <doctest.h>

#include <random>

#include "tempora/algebra.hpp"
#include "tempora/error.hpp"

using namespace tempora;

namespace {

Vec4C basis4(std::size_t k) {
  Vec4C v{};
  v[k] = 1.0;
  return v;
}

Vec4C gaussian4(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec4C v;
  for (auto& z : v) z = cplx(n(rng), n(rng));
  return v;
}

}  // namespace

TEST_CASE("mat_apply basic products") {
  const Vec2R v{{0.3, 0.7}};
  CHECK(mat_apply(Mat2R::identity(), v) == v);
  CHECK(mat_apply(Mat2R{{0, 0, 1, 1}}, Vec2R{{1, 0}}) == Vec2R{{0, 1}});

  const double a = 0.42, b = 0.17;
  const Vec2R out = mat_apply(Mat2R{{a, 1 - b, 1 - a, b}}, Vec2R{{1, 0}});
  CHECK(out[0] == a);
  CHECK(out[1] == 1 - a);
}

TEST_CASE("mat_apply is linear") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  for (int rep = 0; rep < 1000; ++rep) {
    Mat2C m;
    for (auto& z : m.e) z = cplx(n(rng), n(rng));
    const Vec2C u{{cplx(n(rng), n(rng)), cplx(n(rng), n(rng))}};
    const Vec2C v{{cplx(n(rng), n(rng)), cplx(n(rng), n(rng))}};
    const cplx alpha(n(rng), n(rng)), beta(n(rng), n(rng));
    const Vec2C lhs = mat_apply(m, alpha * u + beta * v);
    const Vec2C rhs = alpha * mat_apply(m, u) + beta * mat_apply(m, v);
    CHECK(std::abs(lhs[0] - rhs[0]) <= 1e-12 * (1 + std::abs(lhs[0])));
    CHECK(std::abs(lhs[1] - rhs[1]) <= 1e-12 * (1 + std::abs(lhs[1])));
  }
}

TEST_CASE("power matches repeated multiplication") {
  const Mat2R m{{0.9, 0.2, 0.1, 0.8}};
  Mat2R expected = Mat2R::identity();
  for (unsigned t = 0; t < 9; ++t) {
    CHECK(max_abs_diff(power(m, t), expected) <= 1e-15);
    expected = expected * m;
  }
}

TEST_CASE("orthonormalize_pair leaves an orthonormal pair unchanged") {
  const auto [a, b] = orthonormalize_pair(basis4(0), basis4(3));
  CHECK(a == basis4(0));
  CHECK(b == basis4(3));
}

TEST_CASE("orthonormalize_pair rejects degenerate input") {
  Vec4C twice = basis4(0);
  twice[0] = 2.0;
  CHECK_THROWS_AS(orthonormalize_pair(twice, basis4(0)), Error);
  try {
    orthonormalize_pair(twice, basis4(0));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
  }
  try {
    orthonormalize_pair(Vec4C{}, basis4(1));
    FAIL("zero first vector accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateInput);
  }
}

TEST_CASE("orthonormalize_pair output is orthonormal for random input") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10000; ++rep) {
    const auto [a, b] = orthonormalize_pair(gaussian4(rng), gaussian4(rng));
    CHECK(std::abs(norm_sq(a) - 1.0) <= 1e-10);
    CHECK(std::abs(norm_sq(b) - 1.0) <= 1e-10);
    CHECK(std::abs(inner(a, b)) <= 1e-10);
  }
}

TEST_CASE("orthonormalize_pair stays orthonormal for nearly parallel input") {
  std::mt19937_64 rng(6);
  for (double eps : {1e-4, 1e-8, 1e-10, 1e-11}) {
    const Vec4C u = gaussian4(rng);
    Vec4C v = u;
    const Vec4C d = gaussian4(rng);
    for (std::size_t k = 0; k < 4; ++k) v[k] += eps * d[k];
    const auto [a, b] = orthonormalize_pair(u, v);
    CHECK(orthonormality_residual(a, b) <= 1e-10);
  }
}
