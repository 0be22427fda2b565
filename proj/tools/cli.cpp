#include "cli.hpp"

#include <algorithm>
#include <future>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "posreal/error.hpp"
#include "posreal/io.hpp"

namespace posreal::cli {

namespace {

namespace fs = std::filesystem;
using io::json;

struct Flags {
  std::string command;
  std::vector<std::string> inputs;
  std::optional<std::string> mode;
  std::optional<double> tol;
  std::optional<int> max_shifts;
  std::optional<int> horizon;
  std::optional<double> alpha;
  std::optional<std::string> base;
  std::optional<int> base_shift;
  std::optional<std::string> realization;
  std::string format = "json";
  int count = 10;
  std::optional<std::string> output_dir;
};

struct FileResult {
  int code = kOk;
  std::string content;
};

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NegativePrefix:
    case ErrorCode::NegativeImpulse:
    case ErrorCode::NonpositiveDominantResidue:
      return kNoPositiveRealization;
    case ErrorCode::NotPrimitive:
    case ErrorCode::MultiplePoleUnsupported:
    case ErrorCode::NotApplicable:
      return kUnsupported;
    case ErrorCode::Internal:
    case ErrorCode::BudgetTooSmall:
    case ErrorCode::DegenerateBarycentric:
    case ErrorCode::LeftoverNegative:
      return kVerificationFailure;
    default:
      return kInputError;
  }
}

std::string status_for(int code) {
  switch (code) {
    case kNoPositiveRealization: return "no_positive_realization";
    case kUnsupported: return "unsupported";
    case kVerificationFailure: return "internal_error";
    default: return "input_error";
  }
}

std::string render(const json& doc, const Flags& flags) {
  if (flags.format == "csv") {
    std::ostringstream out;
    if (doc.contains("realization")) {
      const auto t = io::parse_realization(doc);
      if (doc.contains("status")) out << "status," << doc.at("status").get<std::string>() << '\n';
      out << io::to_csv(t.A, t.b, t.c);
      return out.str();
    }
    for (const auto& [key, value] : doc.items()) {
      if (value.is_array()) {
        out << key;
        for (const auto& v : value) out << ',' << v.dump();
        out << '\n';
      } else if (!value.is_object()) {
        out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
      }
    }
    return out.str();
  }
  return doc.dump(2) + "\n";
}

FileResult run_realize(const io::ProblemSpec& problem, const Flags& flags) {
  RealizeOptions opts = problem.options;
  if (flags.mode) opts.mode = io::parse_mode(*flags.mode);
  if (problem.tol) opts.verify_tol = *problem.tol;
  if (flags.tol) opts.verify_tol = *flags.tol;
  if (flags.max_shifts) opts.max_shifts = *flags.max_shifts;
  if (flags.horizon) opts.horizon = *flags.horizon;
  if (flags.alpha) opts.alpha = *flags.alpha;

  std::optional<io::Triple> base = problem.base;
  std::optional<int> base_shift = problem.base_shift;
  if (flags.base) base = io::parse_realization(io::read_json(*flags.base));
  if (flags.base_shift) base_shift = *flags.base_shift;
  if (base.has_value() != base_shift.has_value()) {
    throw Error(ErrorCode::InvalidInput, "--base and --base-shift must be given together");
  }

  Outcome outcome = [&]() -> Outcome {
    if (base) {
      const Realization r = Realization::make(base->A, base->b, base->c);
      return realize_with_base(problem.transfer_function(), r, *base_shift, opts);
    }
    if (problem.fractions) return realize(*problem.fractions, opts);
    return realize(*problem.transfer, opts);
  }();

  FileResult result;
  result.content = render(io::to_json(outcome), flags);
  result.code = std::visit(
      [](const auto& v) -> int {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Realized>) {
          return v.trace.verification.pass ? kOk : kVerificationFailure;
        } else if constexpr (std::is_same_v<T, NoPositiveRealization>) {
          return kNoPositiveRealization;
        } else {
          return kUnsupported;
        }
      },
      outcome);
  return result;
}

FileResult run_bounds(const io::ProblemSpec& problem, const Flags& flags) {
  const double tol = flags.tol.value_or(problem.tol.value_or(0.0));
  try {
    const BoundsReport report = problem.fractions ? bounds(*problem.fractions, tol) : bounds(*problem.transfer, tol);
    return {kOk, render(io::to_json(report), flags)};
  } catch (const NegativeImpulseError& e) {
    const json doc{{"status", "no_positive_realization"}, {"witness", {{"index", e.index()}, {"value", e.value()}}}};
    return {kNoPositiveRealization, render(doc, flags)};
  }
}

FileResult run_verify(const io::ProblemSpec& problem, const Flags& flags) {
  if (!flags.realization) throw Error(ErrorCode::InvalidInput, "verify needs --realization <file>");
  const io::Triple t = io::parse_realization(io::read_json(*flags.realization));
  const int horizon = flags.horizon.value_or(problem.options.horizon.value_or(default_horizon(static_cast<int>(t.A.rows()))));
  const double tol = flags.tol.value_or(problem.tol.value_or(kDefaultMarkovTol));
  const VerificationReport report = markov_check(t.A, t.b, t.c, problem.transfer_function(), horizon, tol);
  return {report.pass ? kOk : kVerificationFailure, render(io::to_json(report), flags)};
}

FileResult run_impulse(const io::ProblemSpec& problem, const Flags& flags) {
  if (flags.count < 1) throw Error(ErrorCode::InvalidInput, "--count must be positive");
  return {kOk, render(io::to_json(impulse_response(problem.transfer_function(), flags.count)), flags)};
}

FileResult process(const std::string& input, const Flags& flags) {
  try {
    const io::ProblemSpec problem = io::load_problem(input);
    if (flags.command == "realize") return run_realize(problem, flags);
    if (flags.command == "bounds") return run_bounds(problem, flags);
    if (flags.command == "verify") return run_verify(problem, flags);
    return run_impulse(problem, flags);
  } catch (const Error& e) {
    const int code = exit_code_for(e);
    const json doc{{"status", status_for(code)}, {"error", to_string(e.code())}, {"message", e.what()}};
    return {code, doc.dump(2) + "\n"};
  }
}

fs::path output_path(const Flags& flags, const std::string& input) {
  const std::string ext = flags.format == "csv" ? ".csv" : ".json";
  return fs::path(*flags.output_dir) / (fs::path(input).stem().string() + "." + flags.command + ext);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonnegative state-space realizations of transfer functions"};
  app.require_subcommand(1);
  Flags flags;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("inputs", flags.inputs, "problem files (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--format", flags.format, "output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output-dir", flags.output_dir, "write one output file per input here");
  };

  auto* realize_cmd = app.add_subcommand("realize", "synthesize a positive realization");
  add_common(realize_cmd);
  realize_cmd->add_option("--mode", flags.mode, "budget rule")->check(CLI::IsMember({"per-pole", "sum"}));
  realize_cmd->add_option("--tol", flags.tol, "Markov verification tolerance");
  realize_cmd->add_option("--max-shifts", flags.max_shifts, "shift cap (default 2x the iteration estimate)");
  realize_cmd->add_option("--horizon", flags.horizon, "verification horizon");
  realize_cmd->add_option("--alpha", flags.alpha, "cone aperture for complex pair blocks, in (0, 1/2]");
  realize_cmd->add_option("--base", flags.base, "realization of the shifted tail to lift")->check(CLI::ExistingFile);
  realize_cmd->add_option("--base-shift", flags.base_shift, "shift index m of the base");

  auto* bounds_cmd = app.add_subcommand("bounds", "zero pattern and lower bounds on the dimension");
  add_common(bounds_cmd);
  bounds_cmd->add_option("--tol", flags.tol, "tolerance below which |t_k| counts as zero");

  auto* verify_cmd = app.add_subcommand("verify", "check a realization against the problem");
  add_common(verify_cmd);
  verify_cmd->add_option("--realization", flags.realization, "realization document")
      ->required()
      ->check(CLI::ExistingFile);
  verify_cmd->add_option("--horizon", flags.horizon, "number of Markov parameters compared");
  verify_cmd->add_option("--tol", flags.tol, "relative tolerance");

  auto* impulse_cmd = app.add_subcommand("impulse", "first K impulse response values");
  add_common(impulse_cmd);
  impulse_cmd->add_option("-K,--count", flags.count, "number of values");

  std::vector<const char*> argv{"posreal"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kInputError;
  }
  flags.command = app.get_subcommands().front()->get_name();

  if (flags.inputs.size() > 1 && !flags.output_dir) {
    err << "several inputs need --output-dir\n";
    return kInputError;
  }

  std::vector<std::future<FileResult>> jobs;
  for (const auto& input : flags.inputs) {
    jobs.push_back(std::async(std::launch::async, [&flags, input] { return process(input, flags); }));
  }
  int code = kOk;
  for (size_t i = 0; i < jobs.size(); ++i) {
    FileResult r = jobs[i].get();
    code = std::max(code, r.code);
    if (flags.output_dir) {
      try {
        io::write_atomically(output_path(flags, flags.inputs[i]), r.content);
      } catch (const std::exception& e) {
        err << e.what() << '\n';
        code = std::max(code, static_cast<int>(kInputError));
      }
    } else {
      out << r.content;
    }
  }
  return code;
}

}  // namespace posreal::cli
