#pragma once

#include <Eigen/Dense>
#include <vector>

namespace posreal {

/// State-space triple with H(z) = c^T (zI - A)^{-1} b. Realizations built
/// through make() are entrywise nonnegative: arithmetic noise in
/// [-1e-12, 0) is clamped to zero, anything more negative is rejected.
struct Realization {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;

  int dim() const { return static_cast<int>(A.rows()); }

  /// Throws DimensionMismatch or NegativeEntry.
  static Realization make(Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c);

  bool nonnegative() const;
  double min_entry() const;
};

/// c^T A^{k-1} b for k = 1..count, by repeated x <- A x from x = b.
std::vector<double> markov_parameters(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& c, int count);

inline std::vector<double> markov_parameters(const Realization& r, int count) {
  return markov_parameters(r.A, r.b, r.c, count);
}

inline constexpr double kClampWindow = 1e-12;

}  // namespace posreal
