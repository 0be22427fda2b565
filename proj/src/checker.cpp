#include "posreal/checker.hpp"

#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"

namespace posreal {

int default_horizon(int dim) { return std::max(100, 3 * dim); }

VerificationReport markov_check(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                const TransferFunction& tf, int horizon, double tol) {
  VerificationReport report;
  report.horizon = horizon;
  report.tolerance = tol;
  const auto got = markov_parameters(A, b, c, horizon);
  const auto want = impulse_response(tf, horizon);
  for (int k = 0; k < horizon; ++k) {
    const double t = want.values[static_cast<size_t>(k)];
    const double err = std::abs(got[static_cast<size_t>(k)] - t) / (1.0 + std::abs(t));
    if (!(err <= report.max_error)) {  // also catches NaN
      report.max_error = std::isnan(err) ? std::numeric_limits<double>::infinity() : err;
      report.worst_index = k + 1;
    }
  }
  report.nonnegative = (A.size() == 0 || A.minCoeff() >= 0.0) && (b.size() == 0 || b.minCoeff() >= 0.0) &&
                       (c.size() == 0 || c.minCoeff() >= 0.0);
  report.pass = report.nonnegative && report.max_error < tol;
  return report;
}

double ConeReport::max_residual() const {
  return std::max({invariance_residual, input_residual, output_residual});
}

ConeReport cone_check(const Eigen::MatrixXd& F, const Eigen::MatrixXd& P, const Eigen::VectorXd& g,
                      const Eigen::VectorXd& h, const Realization& triple, double tol) {
  const auto n = F.rows();
  const auto m = triple.A.rows();
  if (F.cols() != n || P.rows() != n || P.cols() != m || g.size() != n || h.size() != n ||
      triple.b.size() != m || triple.c.size() != m) {
    throw Error(ErrorCode::DimensionMismatch, "cone model is not n x n / n x M consistent with the triple");
  }
  ConeReport report;
  report.invariance_residual = (F * P - P * triple.A).cwiseAbs().maxCoeff();
  report.input_residual = (P * triple.b - g).cwiseAbs().maxCoeff();
  report.output_residual = (triple.c - P.transpose() * h).cwiseAbs().maxCoeff();
  report.pass = report.max_residual() < tol;
  return report;
}

}  // namespace posreal
