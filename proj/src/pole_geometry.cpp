#include "posreal/pole_geometry.hpp"

#include <cmath>
#include <numbers>

#include "posreal/error.hpp"

namespace posreal {

namespace {
constexpr double kBoundaryMargin = 1e-12;
}

bool in_polygon(Complex z, int j) {
  if (j < 3) throw Error(ErrorCode::InvalidInput, "polygon index must be at least 3");
  const double rho = std::abs(z);
  // The region is symmetric under conjugation; evaluate on the upper half.
  const double theta = std::abs(std::arg(z));
  const double pi = std::numbers::pi;
  const double limit = std::cos(pi / j) - kBoundaryMargin;
  for (int k = 0; k < j; ++k) {
    if (!(rho * std::cos((2 * k + 1) * pi / j - theta) < limit)) return false;
  }
  return true;
}

int minimal_polygon_index(Complex z) {
  const double rho = std::abs(z);
  if (!(rho < 1.0)) throw Error(ErrorCode::NoPolygonIndex, "|z| = " + std::to_string(rho) + " is not below 1");
  // The inscribed disk of P_j has radius cos(pi/j), which passes rho
  // beyond j = pi / arccos(rho); the extra slack absorbs the margin.
  const int bound = static_cast<int>(std::ceil(std::numbers::pi / std::acos(rho))) + 2;
  for (int j = 3;; ++j) {
    if (in_polygon(z, j)) return j;
    if (j > bound && std::cos(std::numbers::pi / j) - rho > 4 * kBoundaryMargin) {
      throw Error(ErrorCode::Internal, "polygon search overran its bound");
    }
  }
}

int PoleClassification::n_polygon(int j) const {
  int n = 0;
  for (const auto& p : pairs) n += (p.polygon == j);
  return n;
}

std::map<int, int> PoleClassification::polygon_counts() const {
  std::map<int, int> out;
  for (const auto& p : pairs) ++out[p.polygon];
  return out;
}

int PoleClassification::predicted_dimension() const {
  int n = n1() + 2 * n2();
  for (const auto& [j, count] : polygon_counts()) n += j * count;
  return n;
}

int PoleClassification::predicted_dimension_by_degree() const {
  const int nonDominant = n1() + n2() + 2 * static_cast<int>(pairs.size());
  int n = nonDominant + n2();
  for (const auto& [j, count] : polygon_counts()) n += (j - 2) * count;
  return n;
}

PoleClassification classify(const PartialFraction& pf) {
  if (!pf.all_simple()) throw Error(ErrorCode::MultiplePoleUnsupported, "classification needs simple poles");
  PoleClassification out;
  for (const auto& t : pf.terms) {
    const Complex c = t.coeffs.front();
    if (t.is_real()) {
      const RealPole rp{t.pole.real(), c.real()};
      if (rp.pole >= 0.0 && rp.coeff > 0.0) {
        out.n1_poles.push_back(rp);
      } else {
        out.n2_poles.push_back(rp);
      }
    } else if (t.pole.imag() > 0.0) {
      out.pairs.push_back({t.pole, c, minimal_polygon_index(t.pole)});
    }
  }
  return out;
}

}  // namespace posreal
