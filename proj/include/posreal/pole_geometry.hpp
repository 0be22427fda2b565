#pragma once

#include <map>
#include <vector>

#include "posreal/partial_fraction.hpp"

namespace posreal {

/// Open regular j-gon with vertices at the j-th roots of unity:
/// rho cos((2k+1) pi / j - theta) < cos(pi / j) for k = 0..j-1, with a
/// 1e-12 margin so that boundary points count as outside.
bool in_polygon(Complex z, int j);

/// Smallest j >= 3 with in_polygon(z, j). Throws NoPolygonIndex for |z| >= 1.
int minimal_polygon_index(Complex z);

struct RealPole {
  double pole;
  double coeff;
};

struct ComplexPair {
  Complex pole;   // upper half-plane representative
  Complex coeff;  // its coefficient; the partner carries the conjugates
  int polygon;    // minimal polygon index
};

/// Bucketing of the simple non-dominant poles of a normalized expansion:
/// nonnegative real poles with positive residue (one state each), other
/// real poles (two states each) and conjugate pairs by polygon index (j
/// states each).
struct PoleClassification {
  std::vector<RealPole> n1_poles;
  std::vector<RealPole> n2_poles;
  std::vector<ComplexPair> pairs;

  int n1() const { return static_cast<int>(n1_poles.size()); }
  int n2() const { return static_cast<int>(n2_poles.size()); }
  /// Number of pairs with minimal polygon index j.
  int n_polygon(int j) const;
  std::map<int, int> polygon_counts() const;

  /// N = N1 + 2 N2 + sum_j j N_j.
  int predicted_dimension() const;
  /// The same value computed as (n-1) + N2 + sum_j (j-2) N_j.
  int predicted_dimension_by_degree() const;
};

/// Throws MultiplePoleUnsupported if any term has order > 1.
PoleClassification classify(const PartialFraction& pf);

}  // namespace posreal
