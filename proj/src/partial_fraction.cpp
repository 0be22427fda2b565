#include "posreal/partial_fraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "posreal/error.hpp"

namespace posreal {

namespace {

constexpr double kDominanceTol = 1e-9;
constexpr double kPairTol = 1e-9;

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool close_rel(Complex a, Complex b, double tol) {
  return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

// First n coefficients of num(w) / den(w) as a power series in w.
std::vector<Complex> series_quotient(const ComplexCoeffs& num, const ComplexCoeffs& den, int n) {
  std::vector<Complex> q(static_cast<size_t>(n));
  auto at = [](const ComplexCoeffs& p, int i) { return i < static_cast<int>(p.size()) ? p[i] : Complex{}; };
  for (int s = 0; s < n; ++s) {
    Complex acc = at(num, s);
    for (int i = 1; i <= s; ++i) acc -= at(den, i) * q[static_cast<size_t>(s - i)];
    q[static_cast<size_t>(s)] = acc / den[0];
  }
  return q;
}

void make_pairs_exact(std::vector<PoleTerm>& terms) {
  std::vector<bool> used(terms.size(), false);
  for (size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].is_real()) {
      for (auto& c : terms[i].coeffs) c = Complex(c.real(), 0.0);
      continue;
    }
    if (terms[i].pole.imag() < 0.0 || used[i]) continue;
    for (size_t j = 0; j < terms.size(); ++j) {
      if (j == i || used[j] || terms[j].pole != std::conj(terms[i].pole)) continue;
      for (size_t k = 0; k < terms[i].coeffs.size(); ++k) {
        const Complex avg = 0.5 * (terms[i].coeffs[k] + std::conj(terms[j].coeffs[k]));
        terms[i].coeffs[k] = avg;
        terms[j].coeffs[k] = std::conj(avg);
      }
      used[i] = used[j] = true;
      break;
    }
  }
}

}  // namespace

int PartialFraction::mcmillan_degree() const {
  int n = 1;
  for (const auto& t : terms) n += t.order();
  return n;
}

bool PartialFraction::all_simple() const {
  return std::all_of(terms.begin(), terms.end(), [](const PoleTerm& t) { return t.order() == 1; });
}

Complex PartialFraction::operator()(Complex z) const {
  Complex acc = dominant_residue / (z - dominant_pole);
  for (const auto& t : terms) {
    Complex inv = 1.0 / (z - t.pole);
    Complex pw = inv;
    for (const auto& c : t.coeffs) {
      acc += c * pw;
      pw *= inv;
    }
  }
  return acc;
}

PartialFraction expand(const TransferFunction& tf) {
  const auto clusters = tf.den().clustered_roots();

  size_t dom = 0;
  for (size_t i = 1; i < clusters.size(); ++i)
    if (std::abs(clusters[i].root) > std::abs(clusters[dom].root)) dom = i;
  const double max_mod = std::abs(clusters[dom].root);
  for (size_t i = 0; i < clusters.size(); ++i) {
    if (i != dom && std::abs(clusters[i].root) >= max_mod * (1.0 - kDominanceTol)) {
      throw Error(ErrorCode::NotPrimitive, "several poles attain the maximal modulus " + std::to_string(max_mod));
    }
  }
  const auto& dominant = clusters[dom];
  if (dominant.root.imag() != 0.0 || dominant.root.real() <= 0.0) {
    throw Error(ErrorCode::NotPrimitive, "dominant pole is not real positive");
  }
  if (dominant.multiplicity != 1) throw Error(ErrorCode::NotPrimitive, "dominant pole is not simple");

  ComplexCoeffs num(tf.num().coeffs().begin(), tf.num().coeffs().end());

  PartialFraction pf;
  pf.dominant_pole = dominant.root.real();
  for (size_t j = 0; j < clusters.size(); ++j) {
    ComplexCoeffs others{Complex(1.0)};
    for (size_t k = 0; k < clusters.size(); ++k) {
      if (k == j) continue;
      for (int r = 0; r < clusters[k].multiplicity; ++r) others = multiply(others, {-clusters[k].root, Complex(1.0)});
    }
    const Complex center = clusters[j].root;
    const int order = clusters[j].multiplicity;
    // (z - center)^order H(z) = num / others; c^(i) is the w^{order-i} Taylor coefficient.
    const auto q = series_quotient(taylor_shift(num, center), taylor_shift(others, center), order);
    if (j == dom) {
      pf.dominant_residue = q[0].real();
      continue;
    }
    PoleTerm term{center, std::vector<Complex>(static_cast<size_t>(order))};
    for (int i = 1; i <= order; ++i) term.coeffs[static_cast<size_t>(i - 1)] = q[static_cast<size_t>(order - i)];
    pf.terms.push_back(std::move(term));
  }
  if (!(pf.dominant_residue > 0.0)) {
    throw Error(ErrorCode::NonpositiveDominantResidue,
                "residue at the dominant pole is " + std::to_string(pf.dominant_residue));
  }
  make_pairs_exact(pf.terms);
  return pf;
}

void validate(const PartialFraction& pf) {
  if (!(pf.dominant_pole > 0.0) || !std::isfinite(pf.dominant_pole)) {
    throw Error(ErrorCode::NotPrimitive, "dominant pole must be real positive");
  }
  if (!(pf.dominant_residue > 0.0)) {
    throw Error(ErrorCode::NonpositiveDominantResidue, "dominant residue must be positive");
  }
  for (size_t i = 0; i < pf.terms.size(); ++i) {
    const auto& t = pf.terms[i];
    if (t.coeffs.empty()) throw Error(ErrorCode::InvalidInput, "pole term with no coefficients");
    if (t.coeffs.back() == Complex{}) throw Error(ErrorCode::InvalidInput, "top coefficient of a pole term is zero");
    if (std::abs(t.pole) >= pf.dominant_pole * (1.0 - kDominanceTol)) {
      throw Error(ErrorCode::NotPrimitive, "pole term does not lie strictly inside the dominant modulus");
    }
    if (t.is_real()) {
      for (const auto& c : t.coeffs)
        if (c.imag() != 0.0) throw Error(ErrorCode::InvalidInput, "real pole with complex coefficient");
    }
    for (size_t j = i + 1; j < pf.terms.size(); ++j) {
      if (close_rel(t.pole, pf.terms[j].pole, kPairTol)) throw Error(ErrorCode::InvalidInput, "repeated pole term");
    }
    if (!t.is_real()) {
      const bool paired = std::any_of(pf.terms.begin(), pf.terms.end(), [&](const PoleTerm& o) {
        if (o.order() != t.order() || !close_rel(o.pole, std::conj(t.pole), kPairTol)) return false;
        for (size_t k = 0; k < t.coeffs.size(); ++k)
          if (!close_rel(o.coeffs[k], std::conj(t.coeffs[k]), kPairTol)) return false;
        return true;
      });
      if (!paired) throw Error(ErrorCode::InvalidInput, "complex pole term without conjugate partner");
    }
  }
}

PartialFraction normalize(const PartialFraction& pf) {
  const double lambda0 = pf.dominant_pole;
  const double gamma = pf.dominant_residue;
  PartialFraction out;
  out.scale_gamma = pf.scale_gamma * gamma;
  out.pole_scale = pf.pole_scale * lambda0;
  out.terms = pf.terms;
  for (auto& t : out.terms) {
    t.pole /= lambda0;
    double divisor = gamma;
    for (auto& c : t.coeffs) {
      c /= divisor;
      divisor *= lambda0;
    }
  }
  make_pairs_exact(out.terms);
  return out;
}

PartialFraction denormalize(const PartialFraction& pf) {
  const double s = pf.pole_scale;
  const double gamma = pf.scale_gamma;
  PartialFraction out;
  out.dominant_pole = pf.dominant_pole * s;
  out.dominant_residue = pf.dominant_residue * gamma;
  out.terms = pf.terms;
  for (auto& t : out.terms) {
    t.pole *= s;
    double factor = gamma;
    for (auto& c : t.coeffs) {
      c *= factor;
      factor *= s;
    }
  }
  make_pairs_exact(out.terms);
  return out;
}

TransferFunction to_transfer_function(const PartialFraction& pf) {
  std::vector<ComplexCoeffs> factors;  // (z - pole)^order per term
  for (const auto& t : pf.terms) {
    ComplexCoeffs f{Complex(1.0)};
    for (int r = 0; r < t.order(); ++r) f = multiply(f, {-t.pole, Complex(1.0)});
    factors.push_back(std::move(f));
  }
  const ComplexCoeffs dominant_factor{Complex(-pf.dominant_pole), Complex(1.0)};

  ComplexCoeffs den = dominant_factor;
  for (const auto& f : factors) den = multiply(den, f);

  auto product_except = [&](size_t skip) {
    ComplexCoeffs p{Complex(1.0)};
    for (size_t k = 0; k < factors.size(); ++k)
      if (k != skip) p = multiply(p, factors[k]);
    return p;
  };

  ComplexCoeffs num(den.size() - 1, Complex{});
  auto accumulate = [&](const ComplexCoeffs& p, Complex scale) {
    for (size_t i = 0; i < p.size(); ++i) num[i] += scale * p[i];
  };
  accumulate(product_except(factors.size()), pf.dominant_residue);
  for (size_t j = 0; j < pf.terms.size(); ++j) {
    const ComplexCoeffs rest = multiply(product_except(j), dominant_factor);
    const auto& t = pf.terms[j];
    for (int i = 1; i <= t.order(); ++i) {
      // c^(i) / (z - l)^i  ==  c^(i) (z - l)^{order - i} * rest / den
      ComplexCoeffs p = rest;
      for (int r = 0; r < t.order() - i; ++r) p = multiply(p, {-t.pole, Complex(1.0)});
      accumulate(p, t.coeffs[static_cast<size_t>(i - 1)]);
    }
  }
  std::vector<double> num_r(num.size()), den_r(den.size());
  std::transform(num.begin(), num.end(), num_r.begin(), [](Complex c) { return c.real(); });
  std::transform(den.begin(), den.end(), den_r.begin(), [](Complex c) { return c.real(); });
  return TransferFunction::from_coefficients(std::move(num_r), std::move(den_r));
}

ImpulsePrefix series(const PartialFraction& pf, int count) {
  ImpulsePrefix out;
  out.values.assign(static_cast<size_t>(std::max(count, 0)), 0.0);
  for (int k = 1; k <= count; ++k) {
    Complex acc = pf.dominant_residue * std::pow(pf.dominant_pole, k - 1);
    for (const auto& t : pf.terms) {
      for (int i = 1; i <= t.order() && i <= k; ++i) {
        // pole^{k-i} with 0^0 == 1
        const Complex pw = (k == i) ? Complex(1.0) : std::pow(t.pole, k - i);
        acc += t.coeffs[static_cast<size_t>(i - 1)] * binomial(k - 1, i - 1) * pw;
      }
    }
    out.values[static_cast<size_t>(k - 1)] = acc.real();
  }
  return out;
}

double reconstruction_residual(const TransferFunction& tf, const PartialFraction& pf) {
  double radius = 2.0 * pf.dominant_pole;
  for (const auto& t : pf.terms) radius = std::max(radius, 2.0 * std::abs(t.pole));
  radius = std::max(radius, 2.0);
  double worst = 0.0;
  for (int s = 0; s < 32; ++s) {
    const Complex z = std::polar(radius, 2.0 * std::numbers::pi * (s + 0.5) / 32.0);
    const Complex ref = tf(z);
    worst = std::max(worst, std::abs(ref - pf(z)) / (1.0 + std::abs(ref)));
  }
  return worst;
}

ShiftResult shift_once(const PartialFraction& pf) {
  Complex first = pf.dominant_residue;
  for (const auto& t : pf.terms) first += t.coeffs.front();

  PartialFraction next = pf;
  next.dominant_residue = pf.dominant_residue * pf.dominant_pole;
  next.terms.clear();
  for (const auto& t : pf.terms) {
    PoleTerm shifted{t.pole, std::vector<Complex>(t.coeffs.size())};
    for (size_t i = 0; i < t.coeffs.size(); ++i) {
      shifted.coeffs[i] = t.pole * t.coeffs[i];
      if (i + 1 < t.coeffs.size()) shifted.coeffs[i] += t.coeffs[i + 1];
    }
    while (!shifted.coeffs.empty() && shifted.coeffs.back() == Complex{}) shifted.coeffs.pop_back();
    if (!shifted.coeffs.empty()) next.terms.push_back(std::move(shifted));
  }
  return {first.real(), std::move(next)};
}

int iteration_estimate(const PartialFraction& pf) {
  if (!pf.all_simple()) throw Error(ErrorCode::MultiplePoleUnsupported, "iteration estimate needs simple poles");
  int n = 0;
  double max_c = 0.0;
  double max_l = 0.0;
  for (const auto& t : pf.terms) {
    const Complex c = t.coeffs.front();
    if (t.is_real() && t.pole.real() >= 0.0 && c.real() >= 0.0) continue;
    ++n;
    max_c = std::max(max_c, std::abs(c));
    max_l = std::max(max_l, std::abs(t.pole));
  }
  if (n == 0) return 1;
  const double arg = std::pow(2.0, 2.5) * n * max_c;
  if (arg <= 1.0) return 1;
  if (max_l == 0.0) return 2;
  const double m = std::ceil(std::log(arg) / -std::log(max_l));
  return std::max(1, static_cast<int>(m));
}

double negativity_threshold(double t1) { return 1e-10 * (1.0 + std::abs(t1)); }

}  // namespace posreal
