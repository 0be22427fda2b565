#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "posreal/blocks.hpp"
#include "posreal/checker.hpp"
#include "posreal/partial_fraction.hpp"
#include "posreal/realization.hpp"

namespace posreal {

struct RealizeOptions {
  BudgetMode mode = BudgetMode::PerPole;
  double alpha = kDefaultAlpha;
  std::optional<int> max_shifts;   // default: 2 * iteration_estimate
  std::optional<int> horizon;      // default: default_horizon(dim)
  double verify_tol = kDefaultMarkovTol;
};

struct BlockSummary {
  BlockKind kind;
  int dim;
  double share;
  Complex pole;
  Complex coeff;
  int polygon;
};

struct AlgorithmTrace {
  int shifts = 0;
  std::vector<double> prefix;          // t_1..t_{m-1} of the input function
  BudgetPlan plan;                     // at the stopping shift
  std::vector<double> budget_totals;   // per-pole threshold sum at m = 1, 2, ...
  std::vector<BlockSummary> blocks;
  int predicted_dimension = 0;         // classification's N at the stopping shift
  int pre_lift_dimension = 0;
  int final_dimension = 0;
  int iteration_estimate = 0;
  int cap = 0;
  double pole_scale = 1.0;
  double scale_gamma = 1.0;
  VerificationReport verification;
};

struct Realized {
  Realization realization;
  AlgorithmTrace trace;
};

/// t_index < 0 was found, so no positive realization exists.
struct NoPositiveRealization {
  int index;
  double value;
};

struct Unsupported {
  std::string reason;
};

struct IterationCapExceeded {
  int cap;
};

using Outcome = std::variant<Realized, NoPositiveRealization, Unsupported, IterationCapExceeded>;

/// Shift H_m = z H_{m-1} - t_{m-1} until the dominant-residue budget covers
/// every non-dominant pole, build the block-diagonal realization of H_m,
/// prepend the delay chain carrying t_1..t_{m-1}, undo the normalization
/// and verify against tf.
Outcome realize(const TransferFunction& tf, const RealizeOptions& opts = {});

/// Same, starting from an explicit expansion (checked with validate()).
Outcome realize(const PartialFraction& pf, const RealizeOptions& opts = {});

/// Lift a caller-supplied nonnegative realization of the m-shifted tail
/// (t_m, t_{m+1}, ...) of tf. Throws BaseMismatch when the base is negative
/// or its Markov parameters differ from the tail (50 terms, 1e-8 relative),
/// NegativePrefix when some t_k < 0 for k < m.
Outcome realize_with_base(const TransferFunction& tf, const Realization& base, int m,
                          const RealizeOptions& opts = {});

}  // namespace posreal
