#include "posreal/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "posreal/error.hpp"

namespace posreal {

namespace {

constexpr double kBaryTol = 1e-12;
constexpr double kSpotCheckTol = 1e-9;
constexpr int kSpotCheckTerms = 20;

Complex vertex(int k, int m) { return std::polar(1.0, 2.0 * std::numbers::pi * k / m); }

// Nonnegative weights w (sum 1) with sum_k w_k vertex(k, m) == p, from the
// fan of triangles (v_0, v_k, v_{k+1}).
Eigen::VectorXd barycentric(Complex p, int m) {
  const Complex v0 = vertex(0, m);
  int best_k = -1;
  double best_score = -std::numeric_limits<double>::infinity();
  double best_l1 = 0.0, best_l2 = 0.0;
  for (int k = 1; k + 1 < m; ++k) {
    const Complex e1 = vertex(k, m) - v0;
    const Complex e2 = vertex(k + 1, m) - v0;
    const Complex d = p - v0;
    const double det = e1.real() * e2.imag() - e1.imag() * e2.real();
    const double l1 = (d.real() * e2.imag() - d.imag() * e2.real()) / det;
    const double l2 = (e1.real() * d.imag() - e1.imag() * d.real()) / det;
    const double score = std::min({1.0 - l1 - l2, l1, l2});
    if (score > best_score) {
      best_score = score;
      best_k = k;
      best_l1 = l1;
      best_l2 = l2;
    }
  }
  if (best_k < 0 || best_score < -kBaryTol) {
    throw Error(ErrorCode::DegenerateBarycentric, "point (" + std::to_string(p.real()) + ", " +
                                                      std::to_string(p.imag()) + ") is outside the polygon fan");
  }
  Eigen::VectorXd w = Eigen::VectorXd::Zero(m);
  w(0) = std::max(0.0, 1.0 - best_l1 - best_l2);
  w(best_k) = std::max(0.0, best_l1);
  w(best_k + 1) = std::max(0.0, best_l2);
  return w;
}

void spot_check(const Block& block) {
  const auto got = markov_parameters(block.realization, kSpotCheckTerms);
  const auto want = series(block.realized_terms(), kSpotCheckTerms);
  for (int k = 0; k < kSpotCheckTerms; ++k) {
    const double err = std::abs(got[static_cast<size_t>(k)] - want.values[static_cast<size_t>(k)]);
    if (err > kSpotCheckTol * (1.0 + std::abs(want.values[static_cast<size_t>(k)]))) {
      throw Error(ErrorCode::Internal, std::string(to_string(block.kind)) + " block Markov parameter " +
                                           std::to_string(k + 1) + " is off by " + std::to_string(err));
    }
  }
}

}  // namespace

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::PositivePole: return "positive_pole";
    case BlockKind::RealPole: return "real_pole";
    case BlockKind::ComplexPair: return "complex_pair";
    case BlockKind::DominantRemainder: return "dominant_remainder";
  }
  return "unknown";
}

std::string_view to_string(BudgetMode mode) {
  return mode == BudgetMode::PerPole ? "per_pole" : "conservative_sum";
}

PartialFraction Block::realized_terms() const {
  PartialFraction pf;
  pf.dominant_residue = share;
  pf.dominant_pole = 1.0;
  switch (kind) {
    case BlockKind::PositivePole:
    case BlockKind::RealPole:
      pf.terms.push_back({pole, {coeff}});
      break;
    case BlockKind::ComplexPair:
      if (coeff != Complex{}) {
        pf.terms.push_back({pole, {coeff}});
        pf.terms.push_back({std::conj(pole), {std::conj(coeff)}});
      }
      break;
    case BlockKind::DominantRemainder:
      break;
  }
  return pf;
}

Block positive_pole_block(double pole, double coeff) {
  if (!(pole >= 0.0 && pole < 1.0) || !(coeff > 0.0)) {
    throw Error(ErrorCode::BadPoleBlock, "positive pole block needs 0 <= pole < 1 and coeff > 0");
  }
  Block block{BlockKind::PositivePole,
              Realization::make(Eigen::MatrixXd::Constant(1, 1, pole), Eigen::VectorXd::Constant(1, coeff),
                                Eigen::VectorXd::Ones(1)),
              ConeModel{Eigen::MatrixXd::Constant(1, 1, pole), Eigen::MatrixXd::Identity(1, 1),
                        Eigen::VectorXd::Constant(1, coeff), Eigen::VectorXd::Ones(1)},
              0.0,
              Complex(pole),
              Complex(coeff)};
  spot_check(block);
  return block;
}

Block real_pole_block(double pole, double coeff, double share) {
  if (!(pole > -1.0 && pole < 1.0)) throw Error(ErrorCode::BadPoleBlock, "real pole block needs -1 < pole < 1");
  if (!(share >= std::abs(coeff))) {
    throw Error(ErrorCode::BudgetTooSmall,
                "share " + std::to_string(share) + " is below |coeff| = " + std::to_string(std::abs(coeff)));
  }
  Eigen::MatrixXd A(2, 2);
  A << (1 + pole) / 2, (1 - pole) / 2, (1 - pole) / 2, (1 + pole) / 2;
  Eigen::VectorXd b(2);
  b << share + coeff, share - coeff;
  Eigen::VectorXd c(2);
  c << 1.0, 0.0;

  // Eigen-coordinates: P = V^{-1} with V = [[1, 1], [1, -1]].
  ConeModel cone;
  cone.F = Eigen::Vector2d(1.0, pole).asDiagonal();
  cone.P.resize(2, 2);
  cone.P << 0.5, 0.5, 0.5, -0.5;
  cone.g = Eigen::Vector2d(share, coeff);
  cone.h = Eigen::Vector2d(1.0, 1.0);

  Block block{BlockKind::RealPole, Realization::make(A, b, c), std::move(cone), share, Complex(pole), Complex(coeff)};
  spot_check(block);
  return block;
}

Block complex_pair_block(double rho, double theta, double eta, double vartheta, int m, double share,
                         double alpha) {
  if (m < 3) throw Error(ErrorCode::InvalidInput, "pair block needs m >= 3");
  if (!(alpha > 0.0 && alpha <= 0.5)) throw Error(ErrorCode::InvalidInput, "alpha must lie in (0, 1/2]");
  if (!(eta >= 0.0)) throw Error(ErrorCode::InvalidInput, "eta must be nonnegative");
  const Complex z = std::polar(rho, theta);
  if (!in_polygon(z, m)) throw Error(ErrorCode::NotInPolygon, "pole is not inside P_" + std::to_string(m));

  // Rotation-scaling model of the pair plus the unit pole.
  const double cr = rho * std::cos(theta);
  const double sr = rho * std::sin(theta);
  const double b1 = eta * (std::cos(vartheta) - std::sin(vartheta));
  const double b2 = eta * (std::cos(vartheta) + std::sin(vartheta));

  const double cos_pi_m = std::cos(std::numbers::pi / m);
  if (!(share > 0.0) || std::hypot(b1, b2) / (share * alpha) > cos_pi_m * (1.0 + kBaryTol)) {
    throw Error(ErrorCode::BudgetTooSmall, "share " + std::to_string(share) + " too small for eta " +
                                               std::to_string(eta) + " in P_" + std::to_string(m));
  }

  ConeModel cone;
  cone.F.resize(3, 3);
  cone.F << cr, -sr, 0, sr, cr, 0, 0, 0, 1;
  cone.g = Eigen::Vector3d(b1, b2, share);
  cone.h = Eigen::Vector3d(1, 1, 1);
  cone.P.resize(3, m);
  for (int k = 0; k < m; ++k) {
    const Complex v = vertex(k, m);
    cone.P.col(k) << alpha * v.real(), alpha * v.imag(), 1.0;
  }

  Eigen::MatrixXd A(m, m);
  for (int k = 0; k < m; ++k) A.col(k) = barycentric(vertex(k, m) * z, m);
  const Eigen::VectorXd b = share * barycentric(Complex(b1, b2) / (share * alpha), m);
  const Eigen::VectorXd c = cone.P.transpose() * cone.h;

  Block block{BlockKind::ComplexPair, Realization::make(A, b, c), std::move(cone), share, z,
              std::polar(eta, vartheta), m, alpha};
  spot_check(block);
  return block;
}

Block dominant_remainder_block(double share) {
  if (!(share > 0.0)) throw Error(ErrorCode::BadPoleBlock, "dominant remainder needs a positive share");
  Block block{BlockKind::DominantRemainder,
              Realization::make(Eigen::MatrixXd::Ones(1, 1), Eigen::VectorXd::Constant(1, share),
                                Eigen::VectorXd::Ones(1)),
              ConeModel{Eigen::MatrixXd::Ones(1, 1), Eigen::MatrixXd::Identity(1, 1),
                        Eigen::VectorXd::Constant(1, share), Eigen::VectorXd::Ones(1)},
              share};
  spot_check(block);
  return block;
}

Block with_share(const Block& block, double share) {
  switch (block.kind) {
    case BlockKind::PositivePole:
      if (share != 0.0) throw Error(ErrorCode::BadPoleBlock, "positive pole blocks carry no share");
      return block;
    case BlockKind::RealPole:
      return real_pole_block(block.pole.real(), block.coeff.real(), share);
    case BlockKind::ComplexPair:
      return complex_pair_block(std::abs(block.pole), std::arg(block.pole), std::abs(block.coeff),
                                std::arg(block.coeff), block.polygon, share, block.alpha);
    case BlockKind::DominantRemainder:
      return dominant_remainder_block(share);
  }
  throw Error(ErrorCode::Internal, "unknown block kind");
}

BudgetPlan budget(const PoleClassification& cls, BudgetMode mode, double alpha) {
  BudgetPlan plan;
  plan.mode = mode;
  for (const auto& p : cls.n1_poles) {
    plan.allocations.push_back({BlockKind::PositivePole, Complex(p.pole), Complex(p.coeff)});
  }
  for (const auto& p : cls.n2_poles) {
    const double need = std::abs(p.coeff);
    plan.allocations.push_back({BlockKind::RealPole, Complex(p.pole), Complex(p.coeff), 0, need});
    plan.residue_sum += need;
  }
  for (const auto& p : cls.pairs) {
    const double eta = std::abs(p.coeff);
    const double cos_pi_m = std::cos(std::numbers::pi / p.polygon);
    const double need = std::pow(2.0, 1.5) * eta / (alpha * cos_pi_m);
    plan.allocations.push_back({BlockKind::ComplexPair, p.pole, p.coeff, p.polygon, need, 2.0 * eta / cos_pi_m});
    plan.residue_sum += 2.0 * eta;
  }
  for (auto& a : plan.allocations) {
    a.share = a.threshold;
    plan.total += a.threshold;
  }

  if (mode == BudgetMode::PerPole) {
    plan.sufficient = plan.total <= 1.0;
  } else {
    plan.sufficient = plan.residue_sum <= std::pow(2.0, -2.5);
    if (plan.sufficient && plan.total > 1.0) {
      throw Error(ErrorCode::Internal, "residue sum test passed but per-pole thresholds exceed the unit");
    }
    if (plan.sufficient && plan.total > 0.0) {
      const double scale = 1.0 / plan.total;
      plan.total = 0.0;
      for (auto& a : plan.allocations) {
        a.share *= scale;
        plan.total += a.share;
      }
    }
  }
  plan.leftover = 1.0 - plan.total;
  return plan;
}

std::vector<Block> build_blocks(const BudgetPlan& plan, double alpha) {
  if (!plan.sufficient) throw Error(ErrorCode::BudgetTooSmall, "plan does not fit in the dominant residue");
  std::vector<Block> blocks;
  blocks.reserve(plan.allocations.size());
  for (const auto& a : plan.allocations) {
    switch (a.kind) {
      case BlockKind::PositivePole:
        blocks.push_back(positive_pole_block(a.pole.real(), a.coeff.real()));
        break;
      case BlockKind::RealPole:
        blocks.push_back(real_pole_block(a.pole.real(), a.coeff.real(), a.share));
        break;
      case BlockKind::ComplexPair:
        blocks.push_back(complex_pair_block(std::abs(a.pole), std::arg(a.pole), std::abs(a.coeff),
                                            std::arg(a.coeff), a.polygon, a.share, alpha));
        break;
      case BlockKind::DominantRemainder:
        blocks.push_back(dominant_remainder_block(a.share));
        break;
    }
  }
  return blocks;
}

Assembly assemble(std::vector<Block> blocks, double leftover) {
  if (leftover < -kClampWindow) {
    throw Error(ErrorCode::LeftoverNegative, "leftover share " + std::to_string(leftover));
  }
  leftover = std::max(leftover, 0.0);

  auto largest = std::max_element(blocks.begin(), blocks.end(),
                                  [](const Block& a, const Block& b) { return a.share < b.share; });
  if (largest != blocks.end() && largest->share > 0.0) {
    if (leftover > 0.0) *largest = with_share(*largest, largest->share + leftover);
  } else if (leftover > 0.0) {
    blocks.push_back(dominant_remainder_block(leftover));
  }

  int dim = 0;
  for (const auto& b : blocks) dim += b.realization.dim();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd bv(dim), cv(dim);
  int at = 0;
  for (const auto& b : blocks) {
    const int d = b.realization.dim();
    A.block(at, at, d, d) = b.realization.A;
    bv.segment(at, d) = b.realization.b;
    cv.segment(at, d) = b.realization.c;
    at += d;
  }
  return {Realization::make(std::move(A), std::move(bv), std::move(cv)), std::move(blocks)};
}

Realization hadjicostis_lift(const Realization& base, std::span<const double> prefix) {
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (!(prefix[i] >= 0.0)) {
      throw Error(ErrorCode::NegativePrefix, "t_" + std::to_string(i + 1) + " = " + std::to_string(prefix[i]));
    }
  }
  if (prefix.empty()) return base;
  const int chain = static_cast<int>(prefix.size());
  const int k = base.dim();
  const int dim = chain + k;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i + 1 < chain; ++i) A(i + 1, i) = 1.0;
  A.block(chain, chain - 1, k, 1) = base.b;
  A.block(chain, chain, k, k) = base.A;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);
  b(0) = 1.0;
  Eigen::VectorXd c(dim);
  for (int i = 0; i < chain; ++i) c(i) = prefix[static_cast<size_t>(i)];
  c.segment(chain, k) = base.c;
  return Realization::make(std::move(A), std::move(b), std::move(c));
}

}  // namespace posreal
