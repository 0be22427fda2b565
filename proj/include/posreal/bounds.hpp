#pragma once

#include <optional>
#include <vector>

#include "posreal/partial_fraction.hpp"
#include "posreal/transfer_function.hpp"

namespace posreal {

struct ZeroPattern {
  int k0 = 0;                     // largest k with t_k == 0, 0 if none
  std::vector<int> zero_indices;  // ascending
  int horizon = 0;                // t_k > 0 is certified for k >= horizon
  double tolerance = 0.0;         // |t_k| <= tolerance counted as zero (normalized scale)
};

/// Scans the normalized impulse response up to the certified positivity
/// horizon: the first k from which sum_j sum_i |c_j^(i)| binom(k-1, i-1)
/// |l_j|^{k-i} stays below 1. With tol <= 0 the tolerance defaults to
/// 1e-9 (1 + max |t_k|) over the scanned window. Throws
/// NegativeImpulseError for any t_k < -tol.
ZeroPattern zero_pattern(const TransferFunction& tf, double tol = 0.0);
ZeroPattern zero_pattern(const PartialFraction& pf, double tol = 0.0);

/// ceil(k0 / (n - 1)) for cone-generated realizations; needs every
/// non-dominant pole real in (0, 1) and n >= 2 (NotApplicable otherwise).
/// k0 == 0 gives the vacuous bound 1.
int theo2_lower_bound(const PartialFraction& pf, int k0);

/// Smallest M with M (M + 1) / 2 - 1 + M^2 >= n.
int mn2_lower_bound(int n);

struct RootBoundInput {
  std::vector<double> bases;  // strictly decreasing, positive
  std::vector<int> degrees;   // polynomial degree paired with each base
};

/// sum (n_j + 1) - 1, the most distinct real roots sum_j p_j(x) l_j^x can have.
/// Throws InvalidInput for unsorted or nonpositive bases.
int exp_poly_root_bound(const RootBoundInput& input);

struct BoundsReport {
  ZeroPattern zeros;
  std::optional<int> theo2;  // only when every non-dominant pole is positive real
  std::optional<int> mn2;    // when two consecutive zeros t_{N-1} = t_N = 0 exist
  int mn2_index = 0;         // the N used for mn2
  int mcmillan_degree = 0;
};

BoundsReport bounds(const PartialFraction& pf, double tol = 0.0);
BoundsReport bounds(const TransferFunction& tf, double tol = 0.0);

}  // namespace posreal
