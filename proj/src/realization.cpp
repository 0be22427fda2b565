#include "posreal/realization.hpp"

#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"

namespace posreal {

namespace {

template <typename Derived>
void clamp_or_throw(Eigen::MatrixBase<Derived>& m, const char* what) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    double& v = m.derived().data()[i];
    if (!std::isfinite(v)) throw Error(ErrorCode::NegativeEntry, std::string("non-finite entry in ") + what);
    if (v < 0.0) {
      if (v < -kClampWindow) {
        throw Error(ErrorCode::NegativeEntry, std::string("entry ") + std::to_string(v) + " in " + what);
      }
      v = 0.0;
    }
  }
}

}  // namespace

Realization Realization::make(Eigen::MatrixXd A, Eigen::VectorXd b, Eigen::VectorXd c) {
  if (A.rows() != A.cols() || b.size() != A.rows() || c.size() != A.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "A is " + std::to_string(A.rows()) + "x" + std::to_string(A.cols()) +
                                                  ", b has " + std::to_string(b.size()) + ", c has " +
                                                  std::to_string(c.size()));
  }
  clamp_or_throw(A, "A");
  clamp_or_throw(b, "b");
  clamp_or_throw(c, "c");
  return Realization{std::move(A), std::move(b), std::move(c)};
}

double Realization::min_entry() const {
  if (A.size() == 0) return 0.0;
  double m = A.minCoeff();
  if (b.size() > 0) m = std::min(m, b.minCoeff());
  if (c.size() > 0) m = std::min(m, c.minCoeff());
  return m;
}

bool Realization::nonnegative() const { return min_entry() >= 0.0; }

std::vector<double> markov_parameters(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& c, int count) {
  if (A.rows() != A.cols() || b.size() != A.rows() || c.size() != A.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "inconsistent realization dimensions");
  }
  std::vector<double> out;
  out.reserve(static_cast<size_t>(std::max(count, 0)));
  Eigen::VectorXd x = b;
  for (int k = 0; k < count; ++k) {
    out.push_back(c.dot(x));
    x = A * x;
  }
  return out;
}

}  // namespace posreal
