#include "posreal/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

#include "posreal/error.hpp"

namespace posreal::io {

namespace {

[[noreturn]] void schema_error(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

std::vector<double> real_list(const json& j, const std::string& what) {
  if (!j.is_array()) schema_error(what + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) schema_error(what + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Complex complex_value(const json& j, const std::string& what) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_object() || !j.contains("re")) schema_error(what + " must be a number or {\"re\", \"im\"}");
  const double re = j.at("re").get<double>();
  const double im = j.contains("im") ? j.at("im").get<double>() : 0.0;
  return Complex(re, im);
}

PartialFraction parse_fractions(const json& j) {
  PartialFraction pf;
  if (j.contains("dominant")) {
    const auto& d = j.at("dominant");
    pf.dominant_pole = d.value("pole", 1.0);
    pf.dominant_residue = d.value("residue", 1.0);
  }
  if (j.contains("terms")) {
    if (!j.at("terms").is_array()) schema_error("partial_fractions.terms must be an array");
    for (const auto& t : j.at("terms")) {
      PoleTerm term;
      term.pole = complex_value(t.at("pole"), "term pole");
      if (!t.contains("coeffs") || !t.at("coeffs").is_array()) schema_error("term coeffs must be an array");
      for (const auto& c : t.at("coeffs")) term.coeffs.push_back(complex_value(c, "term coefficient"));
      const int order = t.value("order", term.order());
      if (order != term.order()) schema_error("term order does not match the number of coefficients");
      pf.terms.push_back(std::move(term));
    }
  }
  validate(pf);
  return pf;
}

json complex_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

TransferFunction ProblemSpec::transfer_function() const {
  if (transfer) return *transfer;
  if (fractions) return to_transfer_function(*fractions);
  throw Error(ErrorCode::InvalidInput, "problem has no transfer function");
}

BudgetMode parse_mode(const std::string& text) {
  if (text == "per-pole" || text == "per_pole") return BudgetMode::PerPole;
  if (text == "sum" || text == "conservative_sum" || text == "conservative-sum") return BudgetMode::ConservativeSum;
  schema_error("unknown mode '" + text + "' (expected per-pole or sum)");
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) schema_error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    schema_error(path.string() + ": " + e.what());
  }
}

ProblemSpec parse_problem(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) schema_error("problem document must be an object");
  const bool has_tf = doc.contains("transfer");
  const bool has_pf = doc.contains("partial_fractions");
  if (has_tf == has_pf) schema_error("exactly one of \"transfer\" and \"partial_fractions\" is required");

  ProblemSpec problem;
  try {
    if (has_tf) {
      const auto& t = doc.at("transfer");
      problem.transfer = TransferFunction::from_coefficients(real_list(t.at("num"), "transfer.num"),
                                                          real_list(t.at("den"), "transfer.den"));
    } else {
      problem.fractions = parse_fractions(doc.at("partial_fractions"));
    }

    if (doc.contains("options")) {
      const auto& o = doc.at("options");
      if (o.contains("mode")) problem.options.mode = parse_mode(o.at("mode").get<std::string>());
      if (o.contains("tol")) problem.tol = o.at("tol").get<double>();
      if (o.contains("max_shifts")) problem.options.max_shifts = o.at("max_shifts").get<int>();
      if (o.contains("horizon")) problem.options.horizon = o.at("horizon").get<int>();
      if (o.contains("alpha")) problem.options.alpha = o.at("alpha").get<double>();
      if (o.contains("base")) problem.base = parse_realization(o.at("base"));
      if (o.contains("base_file")) problem.base = parse_realization(read_json(base_dir / o.at("base_file").get<std::string>()));
      if (o.contains("base_shift")) problem.base_shift = o.at("base_shift").get<int>();
    }
  } catch (const json::exception& e) {
    schema_error(e.what());
  }
  if (problem.base.has_value() != problem.base_shift.has_value()) {
    schema_error("base and base_shift must be given together");
  }
  return problem;
}

ProblemSpec load_problem(const std::filesystem::path& path) {
  return parse_problem(read_json(path), path.parent_path());
}

Triple parse_realization(const json& doc) {
  const json& r = doc.contains("realization") ? doc.at("realization") : doc;
  try {
    const auto b = real_list(r.at("b"), "b");
    const auto c = real_list(r.at("c"), "c");
    const auto& rows = r.at("A");
    if (!rows.is_array()) schema_error("A must be an array of rows");
    const auto dim = static_cast<Eigen::Index>(rows.size());
    if (r.contains("dimension") && r.at("dimension").get<Eigen::Index>() != dim) {
      schema_error("dimension does not match the number of rows of A");
    }
    if (static_cast<Eigen::Index>(b.size()) != dim || static_cast<Eigen::Index>(c.size()) != dim) {
      schema_error("b and c must have one entry per row of A");
    }
    Triple t{Eigen::MatrixXd(dim, dim), Eigen::VectorXd(dim), Eigen::VectorXd(dim)};
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto row = real_list(rows.at(static_cast<size_t>(i)), "A row");
      if (static_cast<Eigen::Index>(row.size()) != dim) schema_error("A must be square");
      for (Eigen::Index j = 0; j < dim; ++j) t.A(i, j) = row[static_cast<size_t>(j)];
      t.b(i) = b[static_cast<size_t>(i)];
      t.c(i) = c[static_cast<size_t>(i)];
    }
    return t;
  } catch (const json::exception& e) {
    schema_error(std::string("realization document: ") + e.what());
  }
}

json to_json(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < A.cols(); ++j) row.push_back(A(i, j));
    rows.push_back(std::move(row));
  }
  return json{{"dimension", A.rows()},
              {"A", std::move(rows)},
              {"b", std::vector<double>(b.data(), b.data() + b.size())},
              {"c", std::vector<double>(c.data(), c.data() + c.size())}};
}

json to_json(const Realization& r) { return to_json(r.A, r.b, r.c); }

json to_json(const VerificationReport& r) {
  return json{{"horizon", r.horizon},       {"max_error", r.max_error}, {"worst_index", r.worst_index},
              {"tolerance", r.tolerance},   {"nonnegative", r.nonnegative},
              {"verdict", r.pass ? "pass" : "fail"}};
}

json to_json(const AlgorithmTrace& t) {
  json allocations = json::array();
  for (const auto& a : t.plan.allocations) {
    json entry{{"kind", to_string(a.kind)}, {"pole", complex_json(a.pole)}, {"coeff", complex_json(a.coeff)},
               {"threshold", a.threshold}, {"share", a.share}};
    if (a.kind == BlockKind::ComplexPair) {
      entry["polygon"] = a.polygon;
      entry["statement_threshold"] = a.statement_threshold;
    }
    allocations.push_back(std::move(entry));
  }
  json blocks = json::array();
  for (const auto& b : t.blocks) {
    json entry{{"kind", to_string(b.kind)}, {"dimension", b.dim}, {"share", b.share}};
    if (b.kind != BlockKind::DominantRemainder) {
      entry["pole"] = complex_json(b.pole);
      entry["coeff"] = complex_json(b.coeff);
    }
    if (b.kind == BlockKind::ComplexPair) entry["polygon"] = b.polygon;
    blocks.push_back(std::move(entry));
  }
  return json{{"shifts", t.shifts},
              {"prefix", t.prefix},
              {"budget",
               {{"mode", to_string(t.plan.mode)},
                {"allocations", std::move(allocations)},
                {"total", t.plan.total},
                {"leftover", t.plan.leftover},
                {"residue_sum", t.plan.residue_sum}}},
              {"budget_totals", t.budget_totals},
              {"blocks", std::move(blocks)},
              {"predicted_dimension", t.predicted_dimension},
              {"pre_lift_dimension", t.pre_lift_dimension},
              {"final_dimension", t.final_dimension},
              {"iteration_estimate", t.iteration_estimate},
              {"cap", t.cap},
              {"pole_scale", t.pole_scale},
              {"scale_gamma", t.scale_gamma},
              {"verification", to_json(t.verification)}};
}

json to_json(const Outcome& o) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Realized>) {
          return json{{"status", "realized"},
                      {"dimension", v.realization.dim()},
                      {"realization", to_json(v.realization)},
                      {"trace", to_json(v.trace)}};
        } else if constexpr (std::is_same_v<T, NoPositiveRealization>) {
          return json{{"status", "no_positive_realization"}, {"witness", {{"index", v.index}, {"value", v.value}}}};
        } else if constexpr (std::is_same_v<T, Unsupported>) {
          return json{{"status", "unsupported"}, {"reason", v.reason}};
        } else {
          return json{{"status", "iteration_cap_exceeded"}, {"cap", v.cap}};
        }
      },
      o);
}

json to_json(const BoundsReport& r) {
  json doc{{"k0", r.zeros.k0},
           {"zero_indices", r.zeros.zero_indices},
           {"horizon", r.zeros.horizon},
           {"zero_tolerance", r.zeros.tolerance},
           {"mcmillan_degree", r.mcmillan_degree},
           {"theo2", nullptr},
           {"mn2", nullptr},
           {"theo2_scope", "cone-generated realizations"}};
  if (r.theo2) doc["theo2"] = *r.theo2;
  if (r.mn2) {
    doc["mn2"] = *r.mn2;
    doc["mn2_index"] = r.mn2_index;
  }
  return doc;
}

json to_json(const ImpulsePrefix& t) { return json{{"count", t.size()}, {"impulse", t.values}}; }

std::string to_csv(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  std::ostringstream out;
  auto row = [&](auto&& get, Eigen::Index n) {
    for (Eigen::Index j = 0; j < n; ++j) out << (j ? "," : "") << format17(get(j));
    out << '\n';
  };
  out << "A\n";
  for (Eigen::Index i = 0; i < A.rows(); ++i) row([&](Eigen::Index j) { return A(i, j); }, A.cols());
  out << "b\n";
  row([&](Eigen::Index j) { return b(j); }, b.size());
  out << "c\n";
  row([&](Eigen::Index j) { return c(j); }, c.size());
  return out.str();
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw Error(ErrorCode::InvalidInput, "short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace posreal::io
