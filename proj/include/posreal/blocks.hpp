#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "posreal/partial_fraction.hpp"
#include "posreal/pole_geometry.hpp"
#include "posreal/realization.hpp"

namespace posreal {

enum class BlockKind { PositivePole, RealPole, ComplexPair, DominantRemainder };

std::string_view to_string(BlockKind kind);

/// Certificate data for F P = P A, P b = g, c^T = h^T P against the small
/// non-positive model (F, g, h) the block was derived from.
struct ConeModel {
  Eigen::MatrixXd F;
  Eigen::MatrixXd P;
  Eigen::VectorXd g;
  Eigen::VectorXd h;
};

/// One diagonal block of the assembled realization together with what it
/// realizes: share / (z - 1) plus the listed pole term(s).
struct Block {
  BlockKind kind;
  Realization realization;
  ConeModel cone;
  double share = 0.0;    // dominant residue R consumed
  Complex pole{};        // upper representative for pairs
  Complex coeff{};
  int polygon = 0;       // pairs only
  double alpha = 0.5;    // pairs only

  PartialFraction realized_terms() const;
};

inline constexpr double kDefaultAlpha = 0.5;

/// A = [pole], b = [coeff], c = [1]. Needs 0 <= pole < 1 and coeff > 0.
Block positive_pole_block(double pole, double coeff);

/// Two states realizing share/(z-1) + coeff/(z-pole), with A having the
/// eigenpairs (1, (1,1)) and (pole, (1,-1)). Needs -1 < pole < 1 and
/// share >= |coeff| (BudgetTooSmall otherwise).
Block real_pole_block(double pole, double coeff, double share);

/// m states realizing share/(z-1) + eta e^{i vt}/(z - rho e^{i th}) + conj.
///
/// The polyhedral cone generated by g_k = (alpha cos(2 pi k/m),
/// alpha sin(2 pi k/m), 1) is invariant under the rotation-scaling model
/// when rho e^{i th} lies in the polygon P_m. Column k of A holds the
/// barycentric weights of the rotated generator in the triangle fan
/// anchored at g_0, b holds share times the weights of the model input
/// vector, and c_k = alpha (cos + sin)(2 pi k/m) + 1.
///
/// Throws NotInPolygon, BudgetTooSmall (input vector outside the disk
/// inscribed in alpha P_m) or DegenerateBarycentric.
Block complex_pair_block(double rho, double theta, double eta, double vartheta, int m, double share,
                         double alpha = kDefaultAlpha);

/// A = [1], b = [share], c = [1].
Block dominant_remainder_block(double share);

/// Same block with a different dominant share.
Block with_share(const Block& block, double share);

enum class BudgetMode { PerPole, ConservativeSum };

std::string_view to_string(BudgetMode mode);

struct Allocation {
  BlockKind kind;
  Complex pole;
  Complex coeff;
  int polygon = 0;
  double threshold = 0.0;            // smallest admissible share
  double statement_threshold = 0.0;  // 2 eta / cos(pi/m), pairs only, reported for comparison
  double share = 0.0;                // share handed to the block
};

struct BudgetPlan {
  BudgetMode mode = BudgetMode::PerPole;
  std::vector<Allocation> allocations;  // N1 poles, then N2 poles, then pairs
  double total = 0.0;
  double leftover = 1.0;
  double residue_sum = 0.0;  // sum |c| outside N1, both members of each pair
  bool sufficient = false;
};

/// Per-pole thresholds: |c| for N2 poles, 2^{3/2} eta / (alpha cos(pi/m))
/// for pairs (2^{5/2} eta / cos(pi/m) at alpha = 1/2), zero for N1 poles;
/// sufficient iff they sum to at most 1. Conservative mode instead requires
/// the residue sum to be at most 2^{-5/2} and scales the same thresholds up
/// to spend the whole unit.
BudgetPlan budget(const PoleClassification& cls, BudgetMode mode, double alpha = kDefaultAlpha);

/// Blocks for a sufficient plan, in allocation order.
std::vector<Block> build_blocks(const BudgetPlan& plan, double alpha = kDefaultAlpha);

struct Assembly {
  Realization realization;
  std::vector<Block> blocks;  // after leftover routing
};

/// Block-diagonal assembly. The leftover share is folded into the block
/// with the largest share; without any share-carrying block a 1-state
/// dominant remainder is appended. Throws LeftoverNegative.
Assembly assemble(std::vector<Block> blocks, double leftover);

/// Realization of dimension k + m - 1 whose Markov sequence is prefix
/// followed by the base's: a delay chain e_1 -> ... -> e_{m-1} whose last
/// state feeds the base input vector. Throws NegativePrefix.
Realization hadjicostis_lift(const Realization& base, std::span<const double> prefix);

}  // namespace posreal
