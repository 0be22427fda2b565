#include "posreal/realizer.hpp"

#include <algorithm>
#include <cmath>

#include "posreal/error.hpp"
#include "posreal/pole_geometry.hpp"

namespace posreal {

namespace {

constexpr int kWitnessHorizon = 2000;
constexpr int kBaseHorizon = 50;
constexpr double kBaseTol = 1e-8;
constexpr double kBaseNoise = 1e-12;  // times the peak |t_k|

// Looks for a negative impulse value when the expansion itself is rejected.
Outcome witness_or_unsupported(const TransferFunction& tf, const std::string& reason) {
  const auto t = impulse_response(tf, kWitnessHorizon);
  const double thr = negativity_threshold(t.values.front());
  for (int k = 1; k <= t.size(); ++k) {
    if (t.t(k) < -thr) return NoPositiveRealization{k, t.t(k)};
  }
  return Unsupported{reason};
}

Realized finish(Realization lifted, AlgorithmTrace trace, const TransferFunction& tf, const RealizeOptions& opts) {
  trace.final_dimension = lifted.dim();
  const int horizon = opts.horizon.value_or(default_horizon(lifted.dim()));
  trace.verification = markov_check(lifted, tf, horizon, opts.verify_tol);
  return Realized{std::move(lifted), std::move(trace)};
}

Outcome realize_expansion(const PartialFraction& raw, const TransferFunction& tf, const RealizeOptions& opts) {
  if (!raw.all_simple()) {
    return Unsupported{"multiple non-dominant poles need the multiple-pole construction, which is not provided"};
  }
  PartialFraction pf = normalize(raw);

  AlgorithmTrace trace;
  trace.pole_scale = pf.pole_scale;
  trace.scale_gamma = pf.scale_gamma;
  trace.iteration_estimate = iteration_estimate(pf);
  trace.cap = opts.max_shifts.value_or(2 * trace.iteration_estimate);

  auto current_t = [](const PartialFraction& p) {
    Complex t = p.dominant_residue;
    for (const auto& term : p.terms) t += term.coeffs.front();
    return t.real();
  };
  const double threshold = negativity_threshold(current_t(pf));
  auto original_scale = [&](int k, double t_normalized) {
    return pf.scale_gamma * std::pow(pf.pole_scale, k - 1) * t_normalized;
  };

  std::vector<double> prefix;
  for (;;) {
    const int m = trace.shifts + 1;
    const double t_m = current_t(pf);
    if (t_m < -threshold) return NoPositiveRealization{m, original_scale(m, t_m)};

    const PoleClassification cls = classify(pf);
    BudgetPlan plan = budget(cls, opts.mode, opts.alpha);
    double threshold_sum = 0.0;
    for (const auto& a : plan.allocations) threshold_sum += a.threshold;
    trace.budget_totals.push_back(threshold_sum);

    if (plan.sufficient) {
      trace.predicted_dimension = cls.predicted_dimension();
      Assembly assembly = assemble(build_blocks(plan, opts.alpha), plan.leftover);
      for (const auto& b : assembly.blocks) {
        trace.blocks.push_back({b.kind, b.realization.dim(), b.share, b.pole, b.coeff, b.polygon});
      }
      trace.plan = std::move(plan);
      trace.pre_lift_dimension = assembly.realization.dim();

      Realization lifted = hadjicostis_lift(assembly.realization, prefix);
      lifted.A *= pf.pole_scale;
      lifted.c *= pf.scale_gamma;
      for (size_t k = 0; k < prefix.size(); ++k) trace.prefix.push_back(original_scale(static_cast<int>(k) + 1, prefix[k]));
      return finish(std::move(lifted), std::move(trace), tf, opts);
    }

    if (trace.shifts >= trace.cap) return IterationCapExceeded{trace.cap};
    ShiftResult step = shift_once(pf);
    prefix.push_back(std::max(step.t, 0.0));
    pf = std::move(step.next);
    ++trace.shifts;
  }
}

}  // namespace

Outcome realize(const TransferFunction& tf, const RealizeOptions& opts) {
  PartialFraction pf;
  try {
    pf = expand(tf);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPrimitive || e.code() == ErrorCode::NonpositiveDominantResidue) {
      return witness_or_unsupported(tf, e.what());
    }
    throw;
  }
  return realize_expansion(pf, tf, opts);
}

Outcome realize(const PartialFraction& pf, const RealizeOptions& opts) {
  try {
    validate(pf);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotPrimitive || e.code() == ErrorCode::NonpositiveDominantResidue) {
      return witness_or_unsupported(to_transfer_function(pf), e.what());
    }
    throw;
  }
  return realize_expansion(pf, to_transfer_function(pf), opts);
}

Outcome realize_with_base(const TransferFunction& tf, const Realization& base, int m, const RealizeOptions& opts) {
  if (m < 1) throw Error(ErrorCode::InvalidInput, "shift index m must be at least 1");
  if (base.A.rows() != base.A.cols() || base.b.size() != base.A.rows() || base.c.size() != base.A.rows()) {
    throw Error(ErrorCode::BaseMismatch, "base realization has inconsistent dimensions");
  }
  if (!base.nonnegative()) {
    throw Error(ErrorCode::BaseMismatch, "base realization has a negative entry " + std::to_string(base.min_entry()));
  }

  const auto t = impulse_response(tf, m - 1 + kBaseHorizon);
  const double threshold = negativity_threshold(t.values.front());
  const auto tail = markov_parameters(base, kBaseHorizon);
  double peak = 0.0;
  for (double v : t.values) peak = std::max(peak, std::abs(v));
  for (int k = 0; k < kBaseHorizon; ++k) {
    const double want = t.t(m + k);
    if (std::abs(tail[static_cast<size_t>(k)] - want) > kBaseTol * (1.0 + std::abs(want)) + kBaseNoise * peak) {
      throw Error(ErrorCode::BaseMismatch, "base Markov parameter " + std::to_string(k + 1) + " is " +
                                               std::to_string(tail[static_cast<size_t>(k)]) + ", tail has " +
                                               std::to_string(want));
    }
  }

  std::vector<double> prefix;
  for (int k = 1; k < m; ++k) {
    if (t.t(k) < -threshold) {
      throw Error(ErrorCode::NegativePrefix, "t_" + std::to_string(k) + " = " + std::to_string(t.t(k)));
    }
    prefix.push_back(std::max(t.t(k), 0.0));
  }

  AlgorithmTrace trace;
  trace.shifts = m - 1;
  trace.prefix = prefix;
  trace.pre_lift_dimension = base.dim();
  trace.predicted_dimension = base.dim();
  return finish(hadjicostis_lift(base, prefix), std::move(trace), tf, opts);
}

}  // namespace posreal
