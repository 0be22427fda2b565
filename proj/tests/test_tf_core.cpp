#include <cmath>
#include <random>

#include "doctest.h"
#include "posreal/error.hpp"
#include "posreal/partial_fraction.hpp"
#include "posreal/transfer_function.hpp"
#include "test_support.hpp"

using namespace posreal;
using posreal::testing::example1_den;
using posreal::testing::example1_num;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

// Multiplies out prod (z - p) over real poles and conjugate pairs.
std::vector<double> poly_from_roots(const std::vector<Complex>& roots) {
  std::vector<Complex> p{Complex(1.0)};
  for (const auto& r : roots) {
    std::vector<Complex> q(p.size() + 1, Complex(0.0));
    for (size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = q;
  }
  std::vector<double> out;
  for (const auto& c : p) out.push_back(c.real());
  return out;
}

}  // namespace

TEST_CASE("from_coefficients accepts and rejects") {
  const auto unit = TransferFunction::from_coefficients({1.0}, {-1.0, 1.0});
  CHECK(unit.order() == 1);

  const auto ex1 = TransferFunction::from_coefficients(example1_num(), example1_den());
  CHECK(ex1.order() == 4);

  CHECK(code_of([] { TransferFunction::from_coefficients({1.0, 1.0}, {1.0, 2.0, 1.0}); }) == ErrorCode::NotCoprime);
  CHECK(code_of([] { TransferFunction::from_coefficients({1.0, 1.0}, {-1.0, 1.0}); }) ==
        ErrorCode::NotStrictlyProper);
  CHECK(code_of([] { TransferFunction::from_coefficients({1.0}, {0.0, 0.0}); }) == ErrorCode::ZeroDenominator);
  CHECK(code_of([] { TransferFunction::from_coefficients({0.0}, {-1.0, 1.0}); }) == ErrorCode::NotCoprime);
}

TEST_CASE("denominator is made monic") {
  const auto tf = TransferFunction::from_coefficients({2.0}, {-2.0, 2.0});
  CHECK(tf.den().leading() == 1.0);
  CHECK(std::abs(tf(Complex(3.0)) - Complex(0.5)) < 1e-15);
}

TEST_CASE("expand: unit pole") {
  const auto pf = expand(TransferFunction::from_coefficients({1.0}, {-1.0, 1.0}));
  CHECK(pf.dominant_residue == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pf.dominant_pole == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(pf.terms.empty());
}

TEST_CASE("expand: Example 1 residue listing") {
  const auto pf = expand(TransferFunction::from_coefficients(example1_num(), example1_den()));
  CHECK(pf.dominant_residue == doctest::Approx(1.0).epsilon(1e-9));
  REQUIRE(pf.terms.size() == 3);
  const PoleTerm* real_term = nullptr;
  const PoleTerm* lower = nullptr;
  for (const auto& t : pf.terms) {
    if (t.is_real()) real_term = &t;
    if (t.pole.imag() < 0) lower = &t;
  }
  REQUIRE(real_term != nullptr);
  REQUIRE(lower != nullptr);
  CHECK(std::abs(real_term->pole - Complex(0.5400962165)) < 1e-9);
  CHECK(std::abs(real_term->coeffs[0] - Complex(0.3541501460)) < 1e-9);
  CHECK(std::abs(lower->pole - Complex(0.07522998673, -0.8455579204)) < 1e-9);
  CHECK(std::abs(lower->coeffs[0] - Complex(-0.01050864690, 0.1411896961)) < 1e-9);
}

TEST_CASE("expand: H^4") {
  const auto tf = TransferFunction::from_coefficients({25.08, -75.6, 51.0}, {-0.08, 0.68, -1.6, 1.0});
  const auto pf = expand(tf);
  CHECK(pf.dominant_residue == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(pf.terms.size() == 2);
  for (const auto& t : pf.terms) {
    REQUIRE(t.is_real());
    const double expected = std::abs(t.pole.real() - 0.4) < 1e-9 ? -25.0 : 75.0;
    CHECK(t.coeffs[0].real() == doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("expand: double pole is representable") {
  // 1/(z-1) + 0.2/(z-0.5) + 0.1/(z-0.5)^2
  const auto den = poly_from_roots({Complex(1.0), Complex(0.5), Complex(0.5)});
  // num = (z-0.5)^2 + 0.2 (z-1)(z-0.5) + 0.1 (z-1)
  const std::vector<double> num{0.25 + 0.1 - 0.1, -1.0 - 0.3 + 0.1, 1.2};
  const auto pf = expand(TransferFunction::from_coefficients(num, den));
  REQUIRE(pf.terms.size() == 1);
  REQUIRE(pf.terms[0].order() == 2);
  CHECK(std::abs(pf.terms[0].coeffs[0] - Complex(0.2)) < 1e-6);
  CHECK(std::abs(pf.terms[0].coeffs[1] - Complex(0.1)) < 1e-6);
  CHECK_FALSE(pf.all_simple());
}

TEST_CASE("expand: primitivity and residue sign") {
  // (z-1)(z+1): two poles of maximal modulus
  CHECK(code_of([] { expand(TransferFunction::from_coefficients({1.0}, {-1.0, 0.0, 1.0})); }) ==
        ErrorCode::NotPrimitive);
  // dominant pair 0.9 e^{+-i}
  CHECK(code_of([] {
          expand(TransferFunction::from_coefficients({1.0}, poly_from_roots({std::polar(0.9, 1.0), std::polar(0.9, -1.0)})));
        }) == ErrorCode::NotPrimitive);
  // -1/(z-1)
  CHECK(code_of([] { expand(TransferFunction::from_coefficients({-1.0}, {-1.0, 1.0})); }) ==
        ErrorCode::NonpositiveDominantResidue);
}

TEST_CASE("normalize: worked example matches series") {
  PartialFraction pf;
  pf.dominant_pole = 2.0;
  pf.dominant_residue = 3.0;
  pf.terms.push_back({Complex(1.0), {Complex(0.8)}});
  const auto n = normalize(pf);
  CHECK(n.dominant_pole == 1.0);
  CHECK(n.dominant_residue == 1.0);
  CHECK(n.scale_gamma == 3.0);
  CHECK(n.pole_scale == 2.0);
  REQUIRE(n.terms.size() == 1);
  CHECK(n.terms[0].pole.real() == doctest::Approx(0.5));
  CHECK(n.terms[0].coeffs[0].real() == doctest::Approx(0.8 / 3.0).epsilon(1e-14));

  // t_k(original) = 3 2^{k-1} + 0.8 must equal 3 2^{k-1} t_k(normalized).
  const auto t = series(n, 12);
  for (int k = 1; k <= 12; ++k) {
    const double original = 3.0 * std::pow(2.0, k - 1) + 0.8;
    CHECK(rel(3.0 * std::pow(2.0, k - 1) * t.t(k), original) < 1e-13);
  }
}

TEST_CASE("normalize: already normalized input is unchanged") {
  const auto pf = expand(TransferFunction::from_coefficients(example1_num(), example1_den()));
  const auto n = normalize(pf);
  CHECK(n.scale_gamma == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(n.pole_scale == doctest::Approx(1.0).epsilon(1e-12));
  for (size_t i = 0; i < pf.terms.size(); ++i) {
    CHECK(std::abs(n.terms[i].coeffs[0] - pf.terms[i].coeffs[0]) < 1e-9);
  }
}

TEST_CASE("impulse_response examples") {
  const auto unit = impulse_response(TransferFunction::from_coefficients({1.0}, {-1.0, 1.0}), 20);
  for (double v : unit.values) CHECK(v == 1.0);

  const auto h4 = TransferFunction::from_coefficients({25.08, -75.6, 51.0}, {-0.08, 0.68, -1.6, 1.0});
  const auto t = impulse_response(h4, 5);
  const double expected[] = {51.0, 6.0, 0.0, 0.0, 0.48};
  for (int k = 1; k <= 5; ++k) {
    CHECK(t.t(k) == doctest::Approx(posreal::testing::hn_impulse(4, k)).epsilon(1e-12));
    CHECK(std::abs(t.t(k) - expected[k - 1]) < 1e-12);
  }

  const auto ex1 = impulse_response(TransferFunction::from_coefficients(example1_num(), example1_den()), 1);
  CHECK(ex1.t(1) == doctest::Approx(1.3331328522).epsilon(1e-12));
}

TEST_CASE("shift_once examples") {
  PartialFraction pf;
  pf.terms.push_back({Complex(0.5), {Complex(0.5)}});
  const auto s = shift_once(pf);
  CHECK(s.t == doctest::Approx(1.5));
  REQUIRE(s.next.terms.size() == 1);
  CHECK(s.next.terms[0].coeffs[0].real() == doctest::Approx(0.25));

  PartialFraction empty;
  const auto e = shift_once(empty);
  CHECK(e.t == 1.0);
  CHECK(e.next.terms.empty());
  CHECK(e.next.dominant_residue == 1.0);

  for (int N = 3; N <= 12; ++N) {
    const auto next = shift_once(posreal::testing::hn_fractions(N)).next;
    const auto expected = posreal::testing::hn_fractions(N - 1);
    REQUIRE(next.terms.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
      CHECK(rel(next.terms[i].coeffs[0].real(), expected.terms[i].coeffs[0].real()) < 1e-13);
    }
  }
}

TEST_CASE("iteration_estimate examples") {
  PartialFraction positive;
  positive.terms.push_back({Complex(0.3), {Complex(0.2)}});
  positive.terms.push_back({Complex(0.6), {Complex(1.5)}});
  CHECK(iteration_estimate(positive) == 1);

  PartialFraction single;
  single.terms.push_back({Complex(-0.5), {Complex(0.5)}});
  // ceil(|log(2^{5/2} * 0.5) / log 0.5|) = ceil(1.5)
  CHECK(iteration_estimate(single) == 2);

  const auto ex1 = normalize(expand(TransferFunction::from_coefficients(example1_num(), example1_den())));
  const int est = iteration_estimate(ex1);
  CHECK(est >= 1);
  CHECK(est < 20);
}

TEST_CASE("property: recombination reproduces num/den on |z| = 2") {
  posreal::testing::RandomFractions gen(1234);
  for (int trial = 0; trial < 200; ++trial) {
    PartialFraction pf = gen.draw(6, 0.95, 2.0);
    const auto tf = to_transfer_function(pf);
    const auto back = expand(tf);
    double worst = 0.0;
    for (int s = 0; s < 32; ++s) {
      const Complex z = std::polar(2.0, 2.0 * std::acos(-1.0) * s / 32.0);
      worst = std::max(worst, std::abs(tf(z) - back(z)) / (1.0 + std::abs(tf(z))));
    }
    CHECK(worst < 1e-8);
    CHECK(reconstruction_residual(tf, back) < 1e-8);
  }
}

TEST_CASE("property: recurrence matches closed-form series") {
  posreal::testing::RandomFractions gen(99);
  for (int trial = 0; trial < 200; ++trial) {
    const PartialFraction pf = gen.draw(5, 0.95, 1.5);
    const auto tf = to_transfer_function(pf);
    const auto rec = impulse_response(tf, 60);
    // Independent evaluation: 1 + sum c l^{k-1}.
    for (int k = 1; k <= 60; ++k) {
      Complex v(1.0);
      for (const auto& t : pf.terms) v += t.coeffs[0] * std::pow(t.pole, k - 1);
      CHECK(rel(rec.t(k), v.real()) < 1e-9);
    }
  }
}

TEST_CASE("property: repeated shifts follow the closed form") {
  posreal::testing::RandomFractions gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    const PartialFraction pf = gen.draw(6, 0.9, 1.0);
    const auto tf = to_transfer_function(pf);
    const auto rec = impulse_response(tf, 15);
    PartialFraction cur = pf;
    for (int m = 1; m <= 15; ++m) {
      for (size_t j = 0; j < pf.terms.size() && j < cur.terms.size(); ++j) {
        const Complex expected = pf.terms[j].coeffs[0] * std::pow(pf.terms[j].pole, m - 1);
        CHECK(std::abs(cur.terms[j].coeffs[0] - expected) <= 1e-13 * (1.0 + std::abs(pf.terms[j].coeffs[0])));
      }
      const auto s = shift_once(cur);
      CHECK(rel(s.t, rec.t(m)) < 1e-9);
      cur = s.next;
    }
  }
}

TEST_CASE("property: normalize and denormalize round trip") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.5, 4.0);
  posreal::testing::RandomFractions gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    PartialFraction pf = gen.draw(6, 0.9, 1.0);
    const double lambda0 = u(rng);
    const double gamma = u(rng);
    pf.dominant_pole = lambda0;
    pf.dominant_residue = gamma;
    for (auto& t : pf.terms) t.pole *= lambda0;
    const auto back = denormalize(normalize(pf));
    CHECK(back.dominant_pole == doctest::Approx(lambda0).epsilon(1e-12));
    CHECK(back.dominant_residue == doctest::Approx(gamma).epsilon(1e-12));
    REQUIRE(back.terms.size() == pf.terms.size());
    for (size_t j = 0; j < pf.terms.size(); ++j) {
      CHECK(std::abs(back.terms[j].pole - pf.terms[j].pole) <= 1e-12 * std::abs(pf.terms[j].pole));
      CHECK(std::abs(back.terms[j].coeffs[0] - pf.terms[j].coeffs[0]) <= 1e-12 * std::abs(pf.terms[j].coeffs[0]));
    }
  }
}
