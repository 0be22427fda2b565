#include "posreal/polynomial.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"

namespace posreal {

namespace {

void trim(std::vector<double>& c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.empty()) c.push_back(0.0);
}

}  // namespace

Polynomial::Polynomial(std::vector<double> ascending) : coeffs_(std::move(ascending)) {
  for (double v : coeffs_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidInput, "non-finite polynomial coefficient");
  }
  trim(coeffs_);
}

Polynomial Polynomial::monomial_root(double root) { return Polynomial({-root, 1.0}); }

double Polynomial::operator()(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Complex Polynomial::operator()(Complex z) const {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

double Polynomial::magnitude_scale(double r) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * r + std::abs(*it);
  return acc;
}

std::vector<Complex> Polynomial::roots() const {
  const int n = degree();
  if (n < 1) return {};
  // Companion matrix of the monic polynomial, last column holds -a_i / a_n.
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs_[static_cast<size_t>(i)] / leading();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::Internal, "companion eigenvalue iteration did not converge");
  }
  std::vector<Complex> out(solver.eigenvalues().begin(), solver.eigenvalues().end());
  return out;
}

std::vector<Polynomial::RootCluster> Polynomial::clustered_roots(double merge_tol) const {
  const std::vector<Complex> raw = roots();
  const size_t n = raw.size();
  // Union-find over roots closer than merge_tol * max(1, |r|).
  std::vector<size_t> parent(n);
  for (size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(raw[i]), std::abs(raw[j])});
      if (std::abs(raw[i] - raw[j]) <= merge_tol * scale) parent[find(i)] = find(j);
    }

  std::vector<RootCluster> out;
  std::vector<size_t> owner(n, n);
  for (size_t i = 0; i < n; ++i) {
    const size_t r = find(i);
    if (owner[r] == n) {
      owner[r] = out.size();
      out.push_back({Complex{}, 0});
    }
    auto& cl = out[owner[r]];
    cl.root += raw[i];
    cl.multiplicity += 1;
  }
  for (auto& cl : out) {
    cl.root /= static_cast<double>(cl.multiplicity);
    if (std::abs(cl.root.imag()) <= 1e-9 * std::max(1.0, std::abs(cl.root))) {
      cl.root = Complex(cl.root.real(), 0.0);
    }
  }

  // Mirror each upper-half cluster onto its nearest lower-half partner.
  std::vector<bool> used(out.size(), false);
  for (size_t i = 0; i < out.size(); ++i) {
    if (out[i].root.imag() <= 0.0 || used[i]) continue;
    size_t best = out.size();
    double best_dist = 0.0;
    for (size_t j = 0; j < out.size(); ++j) {
      if (used[j] || out[j].root.imag() >= 0.0 || out[j].multiplicity != out[i].multiplicity) continue;
      const double d = std::abs(out[j].root - std::conj(out[i].root));
      if (best == out.size() || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best == out.size()) throw Error(ErrorCode::Internal, "complex root without conjugate partner");
    const Complex avg = 0.5 * (out[i].root + std::conj(out[best].root));
    out[i].root = avg;
    out[best].root = std::conj(avg);
    used[i] = used[best] = true;
  }

  std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
    if (a.root.real() != b.root.real()) return a.root.real() > b.root.real();
    return a.root.imag() > b.root.imag();
  });
  return out;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i)
    for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
  for (size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
  return Polynomial(std::move(out));
}

Polynomial operator*(double s, const Polynomial& p) {
  std::vector<double> out = p.coeffs_;
  for (double& v : out) v *= s;
  return Polynomial(std::move(out));
}

ComplexCoeffs multiply(const ComplexCoeffs& a, const ComplexCoeffs& b) {
  if (a.empty() || b.empty()) return {};
  ComplexCoeffs out(a.size() + b.size() - 1, Complex{});
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Complex evaluate(const ComplexCoeffs& p, Complex z) {
  Complex acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

ComplexCoeffs taylor_shift(const ComplexCoeffs& p, Complex center) {
  // Repeated synthetic division by (z - center).
  ComplexCoeffs work = p;
  const size_t n = work.size();
  for (size_t k = 0; k + 1 < n; ++k)
    for (size_t i = n - 1; i > k; --i) work[i - 1] += center * work[i];
  return work;
}

}  // namespace posreal
