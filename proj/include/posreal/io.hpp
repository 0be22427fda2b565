#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "posreal/bounds.hpp"
#include "posreal/checker.hpp"
#include "posreal/realizer.hpp"

namespace posreal::io {

using nlohmann::json;

/// Matrices as read from a document; may violate nonnegativity (verify
/// reports it rather than refusing the input).
struct Triple {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

struct ProblemSpec {
  std::optional<TransferFunction> transfer;
  std::optional<PartialFraction> fractions;
  RealizeOptions options;
  std::optional<double> tol;
  std::optional<Triple> base;
  std::optional<int> base_shift;

  /// The transfer function, recombined from the fractions when needed.
  TransferFunction transfer_function() const;
};

/// Exactly one of "transfer" / "partial_fractions" must be present.
/// "options" may hold mode ("per-pole" | "sum"), tol, max_shifts, horizon,
/// alpha, base (inline realization document) or base_file (relative to
/// base_dir), and base_shift. Throws Error(InvalidInput) on schema errors.
ProblemSpec parse_problem(const json& doc, const std::filesystem::path& base_dir = {});
ProblemSpec load_problem(const std::filesystem::path& path);

json read_json(const std::filesystem::path& path);

/// Accepts {"dimension", "A", "b", "c"} or a realize output that wraps it
/// under "realization".
Triple parse_realization(const json& doc);

BudgetMode parse_mode(const std::string& text);

json to_json(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);
json to_json(const Realization& r);
json to_json(const VerificationReport& r);
json to_json(const AlgorithmTrace& t);
json to_json(const Outcome& o);
json to_json(const BoundsReport& r);
json to_json(const ImpulsePrefix& t);

/// Sections "A", "b", "c", one matrix row per line, 17 significant digits.
std::string to_csv(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

/// Write via a temporary file in the same directory and rename over path.
void write_atomically(const std::filesystem::path& path, const std::string& content);

}  // namespace posreal::io
