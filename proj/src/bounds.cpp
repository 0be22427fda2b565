#include "posreal/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"

namespace posreal {

namespace {

constexpr int kMaxHorizon = 1'000'000;
constexpr double kDefaultZeroTol = 1e-9;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// First k from which the envelope of the non-dominant terms stays below 1.
int positivity_horizon(const PartialFraction& pf) {
  for (int k = 1; k <= kMaxHorizon; ++k) {
    double envelope = 0.0;
    bool decreasing = true;
    for (const auto& t : pf.terms) {
      const double l = std::abs(t.pole);
      for (int i = 1; i <= t.order(); ++i) {
        if (k < i) continue;
        const double pw = (k == i) ? 1.0 : std::pow(l, k - i);
        envelope += std::abs(t.coeffs[static_cast<size_t>(i - 1)]) * binomial(k - 1, i - 1) * pw;
        // term(k+1) / term(k) = k / (k - i + 1) * |l|
        if (static_cast<double>(k) / (k - i + 1) * l >= 1.0) decreasing = false;
      }
    }
    if (envelope < 1.0 && decreasing) return k;
  }
  throw Error(ErrorCode::Internal, "positivity horizon exceeds " + std::to_string(kMaxHorizon));
}

}  // namespace

ZeroPattern zero_pattern(const PartialFraction& raw, double tol) {
  validate(raw);
  const PartialFraction pf = normalize(raw);
  ZeroPattern out;
  out.horizon = positivity_horizon(pf);
  const auto t = series(pf, out.horizon);
  double scale = 0.0;
  for (double v : t.values) scale = std::max(scale, std::abs(v));
  out.tolerance = tol > 0.0 ? tol : kDefaultZeroTol * (1.0 + scale);
  for (int k = 1; k <= t.size(); ++k) {
    if (t.t(k) < -out.tolerance) throw NegativeImpulseError(k, t.t(k));
    if (std::abs(t.t(k)) <= out.tolerance) out.zero_indices.push_back(k);
  }
  out.k0 = out.zero_indices.empty() ? 0 : out.zero_indices.back();
  return out;
}

ZeroPattern zero_pattern(const TransferFunction& tf, double tol) { return zero_pattern(expand(tf), tol); }

int theo2_lower_bound(const PartialFraction& pf, int k0) {
  for (const auto& t : pf.terms) {
    if (!t.is_real() || !(t.pole.real() > 0.0) || !(t.pole.real() < pf.dominant_pole)) {
      throw Error(ErrorCode::NotApplicable, "every non-dominant pole must be real and strictly between 0 and the dominant pole");
    }
  }
  if (k0 < 0) throw Error(ErrorCode::InvalidInput, "k0 must be nonnegative");
  if (k0 == 0) return 1;
  const int n = pf.mcmillan_degree();
  if (n < 2) throw Error(ErrorCode::NotApplicable, "McMillan degree 1 has no zero pattern");
  return (k0 + n - 2) / (n - 1);
}

int mn2_lower_bound(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "index must be at least 1");
  for (long long m = 1;; ++m) {
    if (m * (m + 1) / 2 - 1 + m * m >= n) return static_cast<int>(m);
  }
}

int exp_poly_root_bound(const RootBoundInput& input) {
  if (input.bases.empty() || input.bases.size() != input.degrees.size()) {
    throw Error(ErrorCode::InvalidInput, "need one degree per base and at least one base");
  }
  int r = -1;
  for (size_t j = 0; j < input.bases.size(); ++j) {
    if (!(input.bases[j] > 0.0)) throw Error(ErrorCode::InvalidInput, "bases must be positive");
    if (j > 0 && !(input.bases[j] < input.bases[j - 1])) {
      throw Error(ErrorCode::InvalidInput, "bases must be strictly decreasing");
    }
    if (input.degrees[j] < 0) throw Error(ErrorCode::InvalidInput, "degrees must be nonnegative");
    r += input.degrees[j] + 1;
  }
  return r;
}

BoundsReport bounds(const PartialFraction& pf, double tol) {
  BoundsReport report;
  report.zeros = zero_pattern(pf, tol);
  report.mcmillan_degree = pf.mcmillan_degree();
  if (report.zeros.k0 >= 1) {
    try {
      report.theo2 = theo2_lower_bound(pf, report.zeros.k0);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotApplicable) throw;
    }
  }
  const auto& z = report.zeros.zero_indices;
  for (size_t i = z.size(); i-- > 1;) {
    if (z[i] == z[i - 1] + 1) {
      report.mn2_index = z[i];
      report.mn2 = mn2_lower_bound(z[i]);
      break;
    }
  }
  return report;
}

BoundsReport bounds(const TransferFunction& tf, double tol) { return bounds(expand(tf), tol); }

}  // namespace posreal
