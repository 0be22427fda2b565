#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "posreal/io.hpp"
#include "test_support.hpp"

using namespace posreal;
using posreal::io::json;
using posreal::testing::fixture;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch_dir() {
  std::random_device rd;
  const fs::path p = fs::temp_directory_path() / ("posreal_cli_" + std::to_string(rd()));
  fs::create_directories(p);
  return p;
}

void write(const fs::path& p, const std::string& s) {
  std::ofstream(p) << s;
}

}  // namespace

TEST_CASE("realize Example 1 and verify the result") {
  const Run r = run({"realize", fixture("example1.json")});
  CHECK(r.code == cli::kOk);
  const json doc = json::parse(r.out);
  CHECK(doc.at("status") == "realized");
  CHECK(doc.at("dimension").get<int>() <= 9);
  CHECK(doc.at("trace").at("verification").at("verdict") == "pass");

  const fs::path dir = scratch_dir();
  write(dir / "out.json", r.out);
  const Run v = run({"verify", fixture("example1.json"), "--realization", (dir / "out.json").string()});
  CHECK(v.code == cli::kOk);
  CHECK(json::parse(v.out).at("verdict") == "pass");
  fs::remove_all(dir);
}

TEST_CASE("output is deterministic") {
  for (const char* name : {"example1.json", "example1_sum.json", "hn10.json"}) {
    const Run a = run({"realize", fixture(name)});
    const Run b = run({"realize", fixture(name)});
    CHECK(a.out == b.out);
    CHECK(a.code == b.code);
  }
}

TEST_CASE("conservative mode from the file and from the flag") {
  const Run from_file = run({"realize", fixture("example1_sum.json")});
  const Run from_flag = run({"realize", fixture("example1.json"), "--mode", "sum"});
  CHECK(from_file.code == cli::kOk);
  CHECK(from_file.out == from_flag.out);
  CHECK(json::parse(from_file.out).at("dimension").get<int>() <= 9);
}

TEST_CASE("bounds on H^10") {
  const Run r = run({"bounds", fixture("hn10.json")});
  CHECK(r.code == cli::kOk);
  const json doc = json::parse(r.out);
  CHECK(doc.at("k0") == 10);
  CHECK(doc.at("theo2") == 5);
  CHECK(doc.at("mn2") == 3);
  CHECK(doc.contains("horizon"));
}

TEST_CASE("impulse on H^4") {
  const Run r = run({"impulse", fixture("hn4.json"), "-K", "5"});
  CHECK(r.code == cli::kOk);
  const auto values = json::parse(r.out).at("impulse").get<std::vector<double>>();
  REQUIRE(values.size() == 5);
  const double expected[] = {51.0, 6.0, 0.0, 0.0, 0.48};
  for (size_t k = 0; k < 5; ++k) CHECK(std::abs(values[k] - expected[k]) < 1e-12);
}

TEST_CASE("exit codes") {
  const Run neg = run({"realize", fixture("negative.json")});
  CHECK(neg.code == cli::kNoPositiveRealization);
  const json w = json::parse(neg.out);
  CHECK(w.at("status") == "no_positive_realization");
  CHECK(w.at("witness").at("index") == 1);
  CHECK(w.at("witness").at("value").get<double>() == doctest::Approx(-1.0));

  const Run neg_bounds = run({"bounds", fixture("negative.json")});
  CHECK(neg_bounds.code == cli::kNoPositiveRealization);

  const fs::path dir = scratch_dir();
  write(dir / "bad.json", "{\"transfer\": {\"num\": [1]");
  CHECK(run({"realize", (dir / "bad.json").string()}).code == cli::kInputError);
  write(dir / "both.json", R"({"transfer": {"num": [1], "den": [-1, 1]}, "partial_fractions": {}})");
  CHECK(run({"realize", (dir / "both.json").string()}).code == cli::kInputError);
  write(dir / "improper.json", R"({"transfer": {"num": [1, 1], "den": [-1, 1]}})");
  CHECK(run({"realize", (dir / "improper.json").string()}).code == cli::kInputError);
  write(dir / "twin.json", R"({"transfer": {"num": [1], "den": [-1, 0, 1]}})");
  const Run twin = run({"realize", (dir / "twin.json").string()});
  CHECK(twin.code == cli::kUnsupported);
  CHECK(json::parse(twin.out).at("status") == "unsupported");
  CHECK(run({"realize", (dir / "missing.json").string()}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);

  write(dir / "e1.json", R"({"dimension": 4, "A": [[0,0,0,1],[1,0.98,0,0],[0,0.02,0.5,0],[0,0,0.5,0]],
                             "b": [1,0,0,0], "c": [6,0,0,51]})");
  const Run v = run({"verify", fixture("hn4.json"), "--realization", (dir / "e1.json").string()});
  CHECK(v.code == cli::kVerificationFailure);
  CHECK(json::parse(v.out).at("verdict") == "fail");

  CHECK(run({"realize", fixture("hn10.json"), "--max-shifts", "1"}).code == cli::kUnsupported);
  fs::remove_all(dir);
}

TEST_CASE("verify the sqrt(26) fixture against H^4") {
  const Run v = run({"verify", fixture("hn4.json"), "--realization", fixture("hn4_base.json")});
  CHECK(v.code == cli::kOk);
  CHECK(json::parse(v.out).at("max_error").get<double>() < 1e-9);
}

TEST_CASE("base lifting from options and from flags") {
  const Run from_file = run({"realize", fixture("hn8_with_base.json")});
  CHECK(from_file.code == cli::kOk);
  CHECK(json::parse(from_file.out).at("dimension") == 8);

  const fs::path dir = scratch_dir();
  json problem = json::parse(std::ifstream(fixture("hn8_with_base.json")));
  problem.erase("options");
  write(dir / "hn8.json", problem.dump());
  const Run plain = run({"realize", (dir / "hn8.json").string()});
  CHECK(json::parse(plain.out).at("dimension") == 11);
  const Run lifted = run({"realize", (dir / "hn8.json").string(), "--base", fixture("hn4_base.json"), "--base-shift", "5"});
  CHECK(lifted.code == cli::kOk);
  CHECK(json::parse(lifted.out).at("dimension") == 8);
  CHECK(run({"realize", (dir / "hn8.json").string(), "--base", fixture("hn4_base.json")}).code == cli::kInputError);
  CHECK(run({"realize", (dir / "hn8.json").string(), "--base", fixture("hn4_base.json"), "--base-shift", "4"}).code ==
        cli::kInputError);
  fs::remove_all(dir);
}

TEST_CASE("csv output") {
  const Run r = run({"realize", fixture("hn4.json"), "--format", "csv"});
  CHECK(r.code == cli::kOk);
  std::istringstream in(r.out);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  const auto at = [&](const std::string& h) { return std::find(lines.begin(), lines.end(), h) - lines.begin(); };
  const auto a = at("A"), b = at("b"), c = at("c");
  REQUIRE(a < static_cast<long>(lines.size()));
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c == static_cast<long>(lines.size()) - 2);
  const long dim = b - a - 1;
  CHECK(dim == 7);

  const Run bounds_csv = run({"bounds", fixture("hn10.json"), "--format", "csv"});
  CHECK(bounds_csv.out.find("k0,10") != std::string::npos);
}

TEST_CASE("several inputs are written atomically to the output directory") {
  const fs::path dir = scratch_dir();
  const Run r = run({"realize", fixture("example1.json"), fixture("hn4.json"), fixture("negative.json"),
                     "--output-dir", dir.string()});
  CHECK(r.code == cli::kNoPositiveRealization);
  CHECK(fs::exists(dir / "example1.realize.json"));
  CHECK(fs::exists(dir / "hn4.realize.json"));
  CHECK(fs::exists(dir / "negative.realize.json"));
  for (const auto& entry : fs::directory_iterator(dir)) CHECK(entry.path().extension() != ".tmp");
  const json doc = json::parse(std::ifstream(dir / "example1.realize.json"));
  CHECK(doc.at("status") == "realized");

  CHECK(run({"realize", fixture("example1.json"), fixture("hn4.json")}).code == cli::kInputError);
  fs::remove_all(dir);
}

TEST_CASE("round trip holds on random problems") {
  const fs::path dir = scratch_dir();
  posreal::testing::RandomFractions gen(77);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const auto pf = gen.draw(5, 0.9, 0.3);
    json terms = json::array();
    for (const auto& t : pf.terms) {
      terms.push_back({{"pole", {{"re", t.pole.real()}, {"im", t.pole.imag()}}},
                       {"order", 1},
                       {"coeffs", json::array({{{"re", t.coeffs[0].real()}, {"im", t.coeffs[0].imag()}}})}});
    }
    const fs::path problem = dir / ("p" + std::to_string(trial) + ".json");
    write(problem, json{{"partial_fractions", {{"terms", terms}}}}.dump());
    const Run r = run({"realize", problem.string()});
    if (r.code != cli::kOk) continue;
    ++checked;
    const fs::path out = dir / "r.json";
    write(out, r.out);
    const Run v = run({"verify", problem.string(), "--realization", out.string()});
    CHECK(v.code == cli::kOk);
  }
  CHECK(checked > 20);
  fs::remove_all(dir);
}
