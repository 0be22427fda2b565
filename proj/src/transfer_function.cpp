#include "posreal/transfer_function.hpp"

#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"

namespace posreal {

namespace {

// |num(r)| relative to the size num could have on |z| = |r|. Only values at
// the level of evaluation round-off count as a shared factor; residues that
// are merely small next to the coefficients are legitimate.
constexpr double kCoprimeTol = 1e-12;

}  // namespace

TransferFunction TransferFunction::from_coefficients(std::vector<double> num, std::vector<double> den) {
  if (den.empty()) throw Error(ErrorCode::ZeroDenominator, "denominator has no coefficients");
  if (num.empty()) num.push_back(0.0);
  Polynomial d(std::move(den));
  if (d.is_zero()) throw Error(ErrorCode::ZeroDenominator, "denominator is identically zero");
  Polynomial n(std::move(num));
  if (d.degree() < 1 || n.degree() >= d.degree()) {
    throw Error(ErrorCode::NotStrictlyProper, "deg num = " + std::to_string(n.degree()) +
                                                  " must be below deg den = " + std::to_string(d.degree()));
  }
  if (n.is_zero()) throw Error(ErrorCode::NotCoprime, "numerator is identically zero");

  const double lead = d.leading();
  d = (1.0 / lead) * d;
  n = (1.0 / lead) * n;

  // Res(den, num) = prod num(root) for monic den; test each factor.
  for (const auto& cl : d.clustered_roots()) {
    const double scale = n.magnitude_scale(std::abs(cl.root));
    if (std::abs(n(cl.root)) <= kCoprimeTol * scale) {
      throw Error(ErrorCode::NotCoprime, "numerator vanishes at denominator root (" +
                                             std::to_string(cl.root.real()) + ", " +
                                             std::to_string(cl.root.imag()) + ")");
    }
  }
  return TransferFunction(std::move(n), std::move(d));
}

ImpulsePrefix impulse_response(const TransferFunction& tf, int count) {
  ImpulsePrefix out;
  if (count <= 0) return out;
  const int n = tf.order();
  const Polynomial& num = tf.num();
  const Polynomial& den = tf.den();
  auto p = [&](int k) {
    const int power = n - k;
    return (power >= 0 && power <= num.degree()) ? num[power] : 0.0;
  };
  out.values.resize(static_cast<size_t>(count));
  for (int k = 1; k <= count; ++k) {
    double t = p(k);
    for (int i = 1; i <= std::min(k - 1, n); ++i) t -= den[n - i] * out.values[static_cast<size_t>(k - i - 1)];
    out.values[static_cast<size_t>(k - 1)] = t;
  }
  return out;
}

}  // namespace posreal
