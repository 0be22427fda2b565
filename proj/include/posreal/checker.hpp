#pragma once

#include "posreal/realization.hpp"
#include "posreal/transfer_function.hpp"

namespace posreal {

/// Markov-parameter comparison of a realization against the recurrence
/// impulse response of a transfer function. Errors are measured as
/// |c^T A^{k-1} b - t_k| / (1 + |t_k|).
struct VerificationReport {
  int horizon = 0;
  double max_error = 0.0;
  int worst_index = 0;  // 1-based, 0 when horizon is 0
  double tolerance = 0.0;
  bool nonnegative = false;
  bool pass = false;
};

inline constexpr double kDefaultMarkovTol = 1e-6;

/// max(100, 3 * dim)
int default_horizon(int dim);

/// Uses only impulse_response() on the transfer-function side. Dimension
/// mismatches throw; everything else becomes the verdict.
VerificationReport markov_check(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                const TransferFunction& tf, int horizon, double tol = kDefaultMarkovTol);

inline VerificationReport markov_check(const Realization& r, const TransferFunction& tf, int horizon,
                                       double tol = kDefaultMarkovTol) {
  return markov_check(r.A, r.b, r.c, tf, horizon, tol);
}

struct ConeReport {
  double invariance_residual = 0.0;  // max |F P - P A|
  double input_residual = 0.0;       // max |P b - g|
  double output_residual = 0.0;      // max |c - P^T h|
  bool pass = false;

  double max_residual() const;
};

/// Residuals of F P = P A, P b = g, c^T = h^T P. Throws DimensionMismatch.
ConeReport cone_check(const Eigen::MatrixXd& F, const Eigen::MatrixXd& P, const Eigen::VectorXd& g,
                      const Eigen::VectorXd& h, const Realization& triple, double tol);

}  // namespace posreal
