#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "json.hpp"

#include "anchorfix/cli.hpp"
#include "anchorfix/csv.hpp"

using namespace anchorfix;
namespace fs = std::filesystem;

namespace {

int run(std::initializer_list<std::string> args) {
  std::vector<std::string> full{"anchorfix"};
  full.insert(full.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(full.size());
  for (const auto& a : full) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

// Fresh output directory under the system temp root, removed on destruction.
struct TempDir {
  fs::path path;
  explicit TempDir(const char* tag) {
    static int counter = 0;
    std::ostringstream name;
    name << "anchorfix_cli_" << tag << '_' << ::getpid() << '_' << counter++;
    path = fs::temp_directory_path() / name.str();
    fs::remove_all(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string str() const { return path.string(); }
};

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// The env override must not leak between test cases.
void clear_out_override() { ::unsetenv("ANCHORFIX_OUT"); }

}  // namespace

TEST_CASE("solve writes a faithful summary for the plane example") {
  clear_out_override();
  TempDir dir("worked");
  CHECK(run({"solve", "--problem", "worked-example", "--tol", "1e-10", "--out", dir.str()}) ==
        kExitOk);

  const nlohmann::json j = read_json(dir.path / "summary.json");
  CHECK(j.at("problem") == "worked-example");
  CHECK(j.at("schedule") == "adaptive");
  CHECK(j.at("converged") == true);
  CHECK(j.at("final_residual").get<double>() < 1e-10);
  const auto fp = j.at("final_point").get<std::vector<double>>();
  REQUIRE(fp.size() == 2);
  CHECK(std::abs(fp[0] - 0.440731873507767) <= 1e-9);
  CHECK(std::abs(fp[1] - 2.0) <= 1e-10);

  const auto trace = read_csv((dir.path / "trace.csv").string());
  REQUIRE(trace.size() >= 2);
  CHECK(trace.front().at(0) == "k");
  CHECK(trace.at(1).at(0) == "1");
}

TEST_CASE("solve reaches the rotation center") {
  clear_out_override();
  TempDir dir("rotation");
  CHECK(run({"solve", "--problem", "rotation", "--out", dir.str()}) == kExitOk);
  const nlohmann::json j = read_json(dir.path / "summary.json");
  CHECK(j.at("converged") == true);
  const auto fp = j.at("final_point").get<std::vector<double>>();
  REQUIRE(fp.size() == 2);
  CHECK(std::hypot(fp[0], fp[1]) <= 1e-3);
}

TEST_CASE("compare shows the adaptive schedule ahead on the benchmark map") {
  clear_out_override();
  TempDir dir("compare51");
  CHECK(run({"compare", "--problem", "example51", "--out", dir.str()}) == kExitOk);

  const nlohmann::json j = read_json(dir.path / "compare_summary.json");
  CHECK(j.at("adaptive").at("converged") == true);
  CHECK(j.at("open_loop").at("converged") == true);
  const long ia = j.at("adaptive").at("iterations").get<long>();
  const long io = j.at("open_loop").at("iterations").get<long>();
  CHECK(ia < io);
  CHECK(j.at("iter_ratio").get<double>() > 1.0);

  const auto table = read_csv((dir.path / "compare.csv").string());
  CHECK(table.size() >= 2);
}

TEST_CASE("solve runs are deterministic across invocations") {
  clear_out_override();
  TempDir a("det_a"), b("det_b");
  CHECK(run({"solve", "--problem", "lasso", "--m", "40", "--n", "128", "--k", "5", "--seed", "7",
             "--out", a.str()}) == kExitOk);
  CHECK(run({"solve", "--problem", "lasso", "--m", "40", "--n", "128", "--k", "5", "--seed", "7",
             "--out", b.str()}) == kExitOk);
  CHECK(read_file(a.path / "trace.csv") == read_file(b.path / "trace.csv"));
  CHECK(read_file(a.path / "instance.json") == read_file(b.path / "instance.json"));
}

TEST_CASE("lasso solve records the instance header and the error") {
  clear_out_override();
  TempDir dir("lasso");
  CHECK(run({"solve", "--problem", "lasso", "--m", "40", "--n", "128", "--k", "5", "--seed", "3",
             "--out", dir.str()}) == kExitOk);

  const nlohmann::json s = read_json(dir.path / "summary.json");
  CHECK(s.at("m").get<long>() == 40);
  CHECK(s.at("n").get<long>() == 128);
  CHECK(s.at("K").get<long>() == 5);
  CHECK(s.at("seed").get<long>() == 3);
  CHECK(s.at("err").get<double>() >= 0.0);

  const nlohmann::json h = read_json(dir.path / "instance.json");
  CHECK(h.at("m").get<long>() == 40);
  CHECK(h.at("n").get<long>() == 128);
  CHECK(h.at("K").get<long>() == 5);
  CHECK(h.at("tau").get<double>() > 0.0);
  CHECK(h.at("gamma").get<double>() > 0.0);
}

TEST_CASE("usage errors exit with the usage code") {
  clear_out_override();
  CHECK(run({"solve", "--problem", "no-such-problem"}) == kExitUsage);
  CHECK(run({"solve", "--problem", "rotation", "--m", "40"}) == kExitUsage);
  CHECK(run({"solve", "--problem", "rotation", "--seed", "2"}) == kExitUsage);
  CHECK(run({"solve", "--schedule", "adaptive", "--alpha", "0.5"}) == kExitUsage);
  CHECK(run({"solve", "--tol", "-1"}) == kExitUsage);
  CHECK(run({"solve", "--no-such-flag"}) == kExitUsage);
  CHECK(run({}) == kExitUsage);
  CHECK(run({"compare", "--thin", "2"}) == kExitUsage);
}

TEST_CASE("an exhausted iteration budget exits with the non-convergence code") {
  clear_out_override();
  TempDir dir("budget");
  CHECK(run({"solve", "--problem", "example51", "--max-iters", "10", "--out", dir.str()}) ==
        kExitNotConverged);
  const nlohmann::json j = read_json(dir.path / "summary.json");
  CHECK(j.at("termination") == "max_iterations");
  CHECK(j.at("converged") == false);
}

TEST_CASE("the environment override redirects all outputs") {
  clear_out_override();
  TempDir env_dir("env"), flag_dir("flag");
  ::setenv("ANCHORFIX_OUT", env_dir.str().c_str(), 1);
  const int code = run({"solve", "--problem", "worked-example", "--out", flag_dir.str()});
  clear_out_override();
  CHECK(code == kExitOk);
  CHECK(fs::exists(env_dir.path / "summary.json"));
  CHECK(!fs::exists(flag_dir.path / "summary.json"));
}
