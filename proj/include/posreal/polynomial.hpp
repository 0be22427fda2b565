#pragma once

#include <complex>
#include <span>
#include <vector>

namespace posreal {

using Complex = std::complex<double>;

/// Real polynomial stored with ascending powers: coeffs()[i] multiplies z^i.
/// The zero polynomial is represented as {0}; otherwise the leading
/// coefficient is nonzero.
class Polynomial {
 public:
  Polynomial() : coeffs_{0.0} {}
  explicit Polynomial(std::vector<double> ascending);

  static Polynomial monomial_root(double root);  // z - root

  std::span<const double> coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
  double leading() const { return coeffs_.back(); }
  double operator[](int i) const { return coeffs_[static_cast<size_t>(i)]; }

  double operator()(double z) const;
  Complex operator()(Complex z) const;

  /// Sum of |coefficient| * r^i, the natural scale of |p(z)| on |z| = r.
  double magnitude_scale(double r) const;

  /// Roots as eigenvalues of the companion matrix. Empty for constants.
  std::vector<Complex> roots() const;

  struct RootCluster {
    Complex root;
    int multiplicity;
  };
  /// Companion roots grouped into clusters (single linkage, relative
  /// distance `merge_tol`), each replaced by its centroid. Real clusters
  /// get an exactly zero imaginary part and conjugate clusters are made
  /// exact mirror images. Ordered by decreasing real part, then imaginary.
  std::vector<RootCluster> clustered_roots(double merge_tol = 1e-4) const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& p);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  std::vector<double> coeffs_;
};

/// Complex polynomial helpers used by partial fraction expansion. All
/// vectors are ascending.
using ComplexCoeffs = std::vector<Complex>;

ComplexCoeffs multiply(const ComplexCoeffs& a, const ComplexCoeffs& b);
Complex evaluate(const ComplexCoeffs& p, Complex z);
/// Taylor shift: coefficients of q(w) = p(w + center).
ComplexCoeffs taylor_shift(const ComplexCoeffs& p, Complex center);

}  // namespace posreal
