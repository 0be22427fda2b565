#pragma once

#include <vector>

#include "posreal/polynomial.hpp"

namespace posreal {

/// Strictly proper SISO transfer function num(z)/den(z) with monic
/// denominator and no common factors, so deg(den) is the McMillan degree.
class TransferFunction {
 public:
  /// Coefficient lists are ascending. The denominator is rescaled to monic.
  /// Throws ZeroDenominator, NotStrictlyProper or NotCoprime.
  static TransferFunction from_coefficients(std::vector<double> num, std::vector<double> den);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  int order() const { return den_.degree(); }

  Complex operator()(Complex z) const { return num_(z) / den_(z); }

 private:
  TransferFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {}

  Polynomial num_;
  Polynomial den_;
};

/// First K impulse response values t_1..t_K (Markov parameters), stored
/// zero-based: values[k-1] == t_k.
struct ImpulsePrefix {
  std::vector<double> values;

  double t(int k) const { return values.at(static_cast<size_t>(k - 1)); }
  int size() const { return static_cast<int>(values.size()); }
};

/// Long-division recurrence t_k = p_k - sum_{i=1}^{min(k-1,n)} q_i t_{k-i}.
ImpulsePrefix impulse_response(const TransferFunction& tf, int count);

}  // namespace posreal
