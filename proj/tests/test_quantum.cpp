#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "tempora/error.hpp"
#include "tempora/quantum.hpp"

using namespace tempora;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Vec4C gaussian4(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec4C v;
  for (auto& z : v) z = cplx(n(rng), n(rng));
  return v;
}

Vec2C random_state(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Vec2C v{{cplx(n(rng), n(rng)), cplx(n(rng), n(rng))}};
  return (1.0 / std::sqrt(norm_sq(v))) * v;
}

// K_i = (<i| (x) I) V for the isometry V = |a><-1| + |b><+1|, computed
// entry by entry from the two-qubit amplitudes: <m|K_i|x> = <i,m|V|x>.
Mat2C kraus_by_projection(const Vec4C& a, const Vec4C& b, int ancilla) {
  Mat2C k;
  for (int m = 0; m < 2; ++m) {
    const int row = 2 * ancilla + m;
    k(m, 0) = a[row];
    k(m, 1) = b[row];
  }
  return k;
}

const KrausPair kHalf{Mat2C{{kInvSqrt2, 0, 0, kInvSqrt2}},
                      Mat2C{{kInvSqrt2, 0, 0, -kInvSqrt2}}};

}  // namespace

TEST_CASE("kraus_from_dilation: double encoding gives computational projectors") {
  Vec4C a{}, b{};
  a[0] = 1.0;  // |-1,-1>
  b[3] = 1.0;  // |+1,+1>
  const KrausPair k = kraus_from_dilation({a, b});
  CHECK(k.k_minus == Mat2C{{1, 0, 0, 0}});
  CHECK(k.k_plus == Mat2C{{0, 0, 0, 1}});
}

TEST_CASE("kraus_from_dilation: weak measurement example") {
  Vec4C a{}, b{};
  a[0] = kInvSqrt2;   // |-1,-1>
  a[2] = kInvSqrt2;   // |+1,-1>
  b[1] = kInvSqrt2;   // |-1,+1>
  b[3] = -kInvSqrt2;  // |+1,+1>
  const KrausPair k = kraus_from_dilation({a, b});
  CHECK(max_abs_diff(k.k_minus, kraus_by_projection(a, b, 0)) == 0.0);
  CHECK(max_abs_diff(k.k_plus, kraus_by_projection(a, b, 1)) == 0.0);
  CHECK(max_abs_diff(k.k_minus, kHalf.k_minus) <= 1e-15);
  CHECK(max_abs_diff(k.k_plus, kHalf.k_plus) <= 1e-15);
  CHECK(completeness_residual(k) <= 1e-15);
}

TEST_CASE("kraus_from_dilation rejects non-orthonormal states") {
  Vec4C a{}, b{};
  a[0] = 1.0;
  b[0] = kInvSqrt2;
  b[1] = kInvSqrt2;
  try {
    kraus_from_dilation({a, b});
    FAIL("accepted overlapping dilation states");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Orthonormality);
  }
}

TEST_CASE("random dilations satisfy the block conditions and completeness") {
  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 5000; ++rep) {
    const auto [a, b] = orthonormalize_pair(gaussian4(rng), gaussian4(rng));
    const KrausPair k = kraus_from_dilation({a, b});
    CHECK(max_abs_diff(k.k_minus, kraus_by_projection(a, b, 0)) == 0.0);
    CHECK(max_abs_diff(k.k_plus, kraus_by_projection(a, b, 1)) == 0.0);
    // sum_i <a_i|a_i> = sum_i <b_i|b_i> = 1, sum_i <a_i|b_i> = 0
    cplx aa = 0, bb = 0, ab = 0;
    for (int i = 0; i < 2; ++i) {
      for (int m = 0; m < 2; ++m) {
        aa += std::conj(a[2 * i + m]) * a[2 * i + m];
        bb += std::conj(b[2 * i + m]) * b[2 * i + m];
        ab += std::conj(a[2 * i + m]) * b[2 * i + m];
      }
    }
    CHECK(std::abs(aa - 1.0) <= 1e-10);
    CHECK(std::abs(bb - 1.0) <= 1e-10);
    CHECK(std::abs(ab) <= 1e-10);
    CHECK_NOTHROW(validate_kraus(k));
  }
}

TEST_CASE("projective_kraus") {
  const KrausPair k0 = projective_kraus(ProjectiveAngle(0.0));
  CHECK(k0.k_minus == Mat2C{{1, 0, 0, 0}});
  CHECK(k0.k_plus == Mat2C{{0, 0, 0, 1}});

  const KrausPair k45 = projective_kraus(ProjectiveAngle(std::numbers::pi / 4));
  CHECK(max_abs_diff(k45.k_minus, Mat2C{{0.5, 0.5, 0.5, 0.5}}) <= 1e-15);
  CHECK(max_abs_diff(k45.k_plus, Mat2C{{0.5, -0.5, -0.5, 0.5}}) <= 1e-15);

  for (int g = 0; g < 720; ++g) {
    const double phi = 2 * std::numbers::pi * g / 720.0;
    const KrausPair k = projective_kraus(ProjectiveAngle(phi));
    CHECK(max_abs_diff(k.k_minus * k.k_minus, k.k_minus) <= 1e-12);
    CHECK(max_abs_diff(k.k_plus * k.k_plus, k.k_plus) <= 1e-12);
    CHECK_NOTHROW(validate_kraus(k));
    // Same projectors as the outer products of the rotated ancilla states.
    const oracle::M2 pm = oracle::projector(std::cos(phi), std::sin(phi));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) CHECK(std::abs(k.k_minus(r, c) - pm[r][c]) <= 1e-15);
  }
}

TEST_CASE("ProjectiveAngle reduces into [0, 2pi)") {
  CHECK(ProjectiveAngle(-std::numbers::pi / 8).radians() ==
        doctest::Approx(2 * std::numbers::pi - std::numbers::pi / 8));
  CHECK(ProjectiveAngle(2 * std::numbers::pi).radians() == doctest::Approx(0.0));
  CHECK_THROWS_AS(ProjectiveAngle(std::nan("")), Error);
}

TEST_CASE("every projective pair is reproduced by a dilation") {
  for (int g = 0; g < 360; ++g) {
    const KrausPair k = projective_kraus(ProjectiveAngle(2 * std::numbers::pi * g / 360.0));
    // |a> = sum_i |i> K_i|-1>, |b> = sum_i |i> K_i|+1>
    const Vec4C a{k.k_minus(0, 0), k.k_minus(1, 0), k.k_plus(0, 0), k.k_plus(1, 0)};
    const Vec4C b{k.k_minus(0, 1), k.k_minus(1, 1), k.k_plus(0, 1), k.k_plus(1, 1)};
    const KrausPair back = kraus_from_dilation({a, b});
    CHECK(max_abs_diff(back.k_minus, k.k_minus) == 0.0);
    CHECK(max_abs_diff(back.k_plus, k.k_plus) == 0.0);
  }
}

TEST_CASE("validate_kraus") {
  CHECK_NOTHROW(validate_kraus(kHalf));
  const KrausPair doubled{Mat2C::identity(), Mat2C::identity()};
  try {
    validate_kraus(doubled);
    FAIL("accepted I, I");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Completeness);
  }
}

TEST_CASE("observable_of") {
  const Mat2C a0 = observable_of(projective_kraus(ProjectiveAngle(0.0)));
  CHECK(a0 == Mat2C{{-1, 0, 0, 1}});
  CHECK(max_abs_diff(observable_of(kHalf), Mat2C::zero()) <= 1e-15);

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0, 2 * std::numbers::pi);
  for (int rep = 0; rep < 1000; ++rep) {
    const Mat2C a = observable_of(projective_kraus(ProjectiveAngle(u(rng))));
    CHECK(max_abs_diff(a, adjoint(a)) <= 1e-12);
    CHECK(max_abs_diff(a * a, Mat2C::identity()) <= 1e-10);

    const auto [da, db] = orthonormalize_pair(gaussian4(rng), gaussian4(rng));
    const Mat2C g = observable_of(kraus_from_dilation({da, db}));
    CHECK(max_abs_diff(g, adjoint(g)) <= 1e-12);
    // Hermitian 2x2: eigenvalues are (tr +- sqrt(tr^2 - 4 det)) / 2.
    const double tr = (g(0, 0) + g(1, 1)).real();
    const double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
    const double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
    CHECK((tr + disc) / 2 <= 1 + 1e-12);
    CHECK((tr - disc) / 2 >= -1 - 1e-12);
  }
}

TEST_CASE("quantum_outcome_step") {
  const KrausPair k0 = projective_kraus(ProjectiveAngle(0.0));
  const Vec2C plus_x{{kInvSqrt2, kInvSqrt2}};
  const auto s = quantum_outcome_step(k0, plus_x, Outcome::minus);
  REQUIRE(s);
  CHECK(s->probability == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(s->state[0]) == doctest::Approx(1.0));
  CHECK(std::abs(s->state[1]) == 0.0);

  CHECK_FALSE(quantum_outcome_step(k0, Vec2C{{0, 1}}, Outcome::minus));

  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 200; ++rep) {
    const Vec2C psi = random_state(rng);
    const auto w = quantum_outcome_step(kHalf, psi, Outcome::minus);
    REQUIRE(w);
    CHECK(w->probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::abs(w->state[0] - psi[0]) <= 1e-12);
    CHECK(std::abs(w->state[1] - psi[1]) <= 1e-12);
  }
}

TEST_CASE("outcome probabilities sum to one") {
  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 5000; ++rep) {
    const auto [a, b] = orthonormalize_pair(gaussian4(rng), gaussian4(rng));
    const KrausPair k = kraus_from_dilation({a, b});
    const Vec2C psi = random_state(rng);
    double total = 0;
    for (Outcome i : kOutcomes) {
      if (const auto s = quantum_outcome_step(k, psi, i)) {
        total += s->probability;
        CHECK(std::abs(norm_sq(s->state) - 1.0) <= 1e-12);
      }
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
  }
}
