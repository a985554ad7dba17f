#include "doctest.h"

#include "qcfg/amplitude.hpp"
#include "support/fixtures.hpp"

#include <random>

using namespace qcfg;
using qcfg::testing::kInvTwoSqrt3;

namespace {

const double c = kInvTwoSqrt3;
const AmplitudeVector c_aIB{c, c, c, c};
const AmplitudeVector c_aB{c, -c, c, -c};
const AmplitudeVector c_A{0.5, -0.5, -0.5, 0.5};
const AmplitudeVector c_B{Complex{0, 0.5}, Complex{0, -0.5}, Complex{0, -0.5}, Complex{0, 0.5}};

AmplitudeVector random_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  AmplitudeVector v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = Complex{d(rng), d(rng)};
  return v;
}

}  // namespace

TEST_CASE("inner_product") {
  CHECK(approx_eq(inner_product({1.0, 0.0}, {0.0, 1.0}), Complex{}));
  CHECK(approx_eq(inner_product(c_A, c_aB), Complex{}));
  CHECK(approx_eq(inner_product(c_A, c_B), Complex{0.0, 1.0}));

  SUBCASE("conjugates the first argument") {
    const AmplitudeVector u{Complex{0, 1}};
    const AmplitudeVector v{Complex{1, 0}};
    CHECK(inner_product(u, v) == Complex{0, -1});
    CHECK(inner_product(v, u) == Complex{0, 1});
  }

  SUBCASE("dimension mismatch names both lengths") {
    try {
      (void)inner_product(AmplitudeVector(3), AmplitudeVector(4));
      FAIL("expected DimensionMismatch");
    } catch (const DimensionMismatch& e) {
      CHECK(e.lhs_size() == 3);
      CHECK(e.rhs_size() == 4);
      CHECK(std::string(e.what()).find("3 vs 4") != std::string::npos);
    }
  }
}

TEST_CASE("norm_sq") {
  CHECK(norm_sq({1.0, 0.0, 0.0, 0.0}) == 1.0);
  CHECK(approx_eq(norm_sq(c_aIB), 1.0 / 3.0));
  const double q = c / 2.0;
  CHECK(approx_eq(norm_sq({Complex{0, q}, Complex{0, q}, Complex{0, -q}, Complex{0, -q}}),
                  1.0 / 12.0));
}

TEST_CASE("hadamard") {
  const auto ones = AmplitudeVector::ones(4);
  CHECK(hadamard(c_B, ones) == c_B);

  const double q = c / 2.0;
  const AmplitudeVector ab{Complex{0, q}, Complex{0, q}, Complex{0, -q}, Complex{0, -q}};
  CHECK(approx_eq(hadamard(c_aB, c_B), ab, 1e-15));
  CHECK(approx_eq(hadamard(c_aIB, c_aIB), AmplitudeVector(4, 1.0 / 12.0), 1e-15));
  CHECK_THROWS_AS(hadamard(AmplitudeVector(2), AmplitudeVector(3)), DimensionMismatch);
}

TEST_CASE("vec_add") {
  CHECK(vec_add(c_B, AmplitudeVector::zeros(4)) == c_B);
  CHECK(vec_add(c_B, scale(c_B, -1.0)).is_zero());
  CHECK_THROWS_AS(vec_add(AmplitudeVector(1), AmplitudeVector(2)), DimensionMismatch);

  SUBCASE("the two a^2 b^2 chains add to modulus (1+sqrt3)/48") {
    // I -> aIB, I -> aB, B -> b, B -> b  and  I -> aABB, A -> a, B -> b, B -> b
    const auto first = hadamard(hadamard(c_aIB, c_aB), hadamard(c_B, c_B));
    const auto second = hadamard(hadamard(AmplitudeVector{c, c, -c, -c}, c_A),
                                 hadamard(c_B, c_B));
    const auto sum = vec_add(first, second);
    for (const auto& z : sum) {
      CHECK(std::abs(z) == doctest::Approx((1.0 + std::sqrt(3.0)) / 12.0 * 0.25).epsilon(1e-12));
    }
  }
}

TEST_CASE("approx_eq") {
  CHECK(approx_eq(0.0, 1e-12, 1e-9));
  CHECK(approx_eq(1.0 / 3.0, 0.3333333333, 1e-9));
  CHECK_FALSE(approx_eq(1.0 / 12.0, 0.0833334, 1e-9));
  CHECK_FALSE(approx_eq(AmplitudeVector(2), AmplitudeVector(3)));
}

TEST_CASE("algebraic properties on random vectors") {
  std::mt19937_64 rng(20261016);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 6;
    const auto u = random_vector(rng, n);
    const auto v = random_vector(rng, n);
    const auto w = random_vector(rng, n);

    const Complex uu = inner_product(u, u);
    CHECK(std::abs(uu.imag()) <= 1e-12);
    CHECK(uu.real() >= 0.0);
    CHECK(approx_eq(uu.real(), norm_sq(u), 1e-12));
    CHECK(approx_eq(inner_product(u, v), std::conj(inner_product(v, u)), 1e-12));

    CHECK(approx_eq(hadamard(u, v), hadamard(v, u), 1e-12));
    CHECK(approx_eq(hadamard(hadamard(u, v), w), hadamard(u, hadamard(v, w)), 1e-9));
    CHECK(hadamard(u, AmplitudeVector::ones(n)) == u);

    double vmax = 0.0;
    for (const auto& z : v) vmax = std::max(vmax, std::abs(z));
    CHECK(norm_sq(hadamard(u, v)) <= norm_sq(u) * vmax * vmax * (1 + 1e-12));
  }
}

TEST_CASE("format_complex") {
  CHECK(format_complex(Complex{0.5, 0}) == "0.5");
  CHECK(format_complex(Complex{0, -0.5}) == "-0.5i");
  CHECK(format_complex(Complex{1, -2}) == "1-2i");
  CHECK(format_vector({1.0, Complex{0, 1}}) == "<1, 1i>");
}
