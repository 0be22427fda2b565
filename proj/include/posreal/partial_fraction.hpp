#pragma once

#include <vector>

#include "posreal/polynomial.hpp"
#include "posreal/transfer_function.hpp"

namespace posreal {

/// The terms sum_{i=1}^{order} coeffs[i-1] / (z - pole)^i of one pole.
struct PoleTerm {
  Complex pole;
  std::vector<Complex> coeffs;

  int order() const { return static_cast<int>(coeffs.size()); }
  bool is_real() const { return pole.imag() == 0.0; }
};

/// H(z) = dominant_residue / (z - dominant_pole) + sum of pole terms.
///
/// Non-real poles come in conjugate pairs whose coefficient lists are exact
/// conjugates. After normalize() the dominant term is exactly 1/(z-1) and
/// scale_gamma / pole_scale hold the original residue and pole location, so
/// t_k(original) = scale_gamma * pole_scale^{k-1} * t_k(normalized).
struct PartialFraction {
  double dominant_residue = 1.0;
  double dominant_pole = 1.0;
  std::vector<PoleTerm> terms;
  double scale_gamma = 1.0;
  double pole_scale = 1.0;

  int mcmillan_degree() const;
  bool all_simple() const;
  Complex operator()(Complex z) const;
};

/// Poles by companion-matrix eigenvalues, coefficients by Taylor expansion
/// of (z - pole)^{order} H(z) about each pole. Throws NotPrimitive when the
/// maximal-modulus pole is not unique, real positive and simple, and
/// NonpositiveDominantResidue when its residue is <= 0.
PartialFraction expand(const TransferFunction& tf);

/// Checks the invariants expand() guarantees on a hand-built expansion
/// (pairing, distinct poles, primitivity, orders). Throws InvalidInput,
/// NotPrimitive or NonpositiveDominantResidue.
void validate(const PartialFraction& pf);

/// Rescale z -> pole_scale * z and divide by the dominant residue so that
/// the dominant term becomes 1/(z-1); order-i coefficients are divided by
/// gamma * lambda0^{i-1}.
PartialFraction normalize(const PartialFraction& pf);

/// Inverse of normalize(): restores the recorded scalings.
PartialFraction denormalize(const PartialFraction& pf);

/// Recombination over the common denominator.
TransferFunction to_transfer_function(const PartialFraction& pf);

/// Closed-form Markov parameters: sum of c^(i) binom(k-1, i-1) pole^{k-i}.
ImpulsePrefix series(const PartialFraction& pf, int count);

/// Max over 32 points on a circle enclosing all poles of
/// |tf(z) - pf(z)| / (1 + |tf(z)|).
double reconstruction_residual(const TransferFunction& tf, const PartialFraction& pf);

struct ShiftResult {
  double t;
  PartialFraction next;
};

/// One step of H_m(z) = z H_{m-1}(z) - t_{m-1}. Termwise
/// z/(z-l)^i = 1/(z-l)^{i-1} + l/(z-l)^i; the constant part is t. Terms
/// whose coefficients all become exactly zero (poles at the origin) drop out.
ShiftResult shift_once(const PartialFraction& pf);

/// Shift count after which the residues outside the nonnegative cone sum to
/// at most 2^{-5/2}: ceil(log(2^{5/2} n max|c|) / |log max|lambda||) over
/// the n poles that are not nonnegative reals with nonnegative residue.
/// Requires simple poles (MultiplePoleUnsupported).
int iteration_estimate(const PartialFraction& pf);

/// t counts as negative below -1e-10 (1 + |t_1|).
double negativity_threshold(double t1);

}  // namespace posreal
