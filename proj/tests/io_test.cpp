#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "anchorfix/analytic.hpp"
#include "anchorfix/csv.hpp"
#include "anchorfix/driver.hpp"
#include "anchorfix/operators.hpp"
#include "anchorfix/schedules.hpp"

using namespace anchorfix;

namespace {

std::filesystem::path temp_file(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / "anchorfix_io_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

double parse(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

TEST_CASE("formatted reals survive a round trip exactly") {
  for (double v : {1.0 / 3.0, 1e-300, 1.7976931348623157e308, 0.1, -2.5e-7, 0.0,
                   53.0 / 17.0, 3.14159265358979323846}) {
    const std::string s = fmt_real(v);
    CHECK(parse(s) == v);
  }
}

TEST_CASE("trace files round-trip their numbers") {
  FixedPointMap map = worked_example_map();
  AdaptiveSchedule sched;
  RunOptions opts;
  opts.reference = Vector{worked_example_limit(1e-16), 2.0};
  IterationTrace t = run_iteration(map, {0.0, 0.0}, sched, {1e-10, 100}, opts);

  const auto path = temp_file("trace.csv");
  write_trace_csv(path.string(), t);
  const auto rows = read_csv(path.string());

  REQUIRE(rows.size() == t.records.size() + 1);
  CHECK(rows[0] == std::vector<std::string>{"k", "parameter", "lambda_equiv", "residual",
                                            "dist_to_ref", "objective"});
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& rec = t.records[i];
    const auto& row = rows[i + 1];
    REQUIRE(row.size() == 6);
    CHECK(std::stol(row[0]) == rec.k);
    CHECK(parse(row[1]) == rec.parameter);
    CHECK(parse(row[2]) == lambda_equivalent(rec, t.schedule));
    CHECK(parse(row[3]) == rec.residual);
    CHECK(parse(row[4]) == *rec.dist_to_ref);
    CHECK(row[5].empty());  // no objective configured
  }
}

TEST_CASE("side-by-side files pad the shorter run") {
  FixedPointMap map = worked_example_map();
  RunOptions opts;
  AdaptiveSchedule a;
  IterationTrace ta = run_iteration(map, {0.0, 0.0}, a, {1e-6, 1000}, opts);
  OpenLoopSchedule o(1.0);
  IterationTrace to = run_iteration(map, {0.0, 0.0}, o, {1e-2, 1000}, opts);

  const auto path = temp_file("compare.csv");
  write_compare_csv(path.string(), ta, to);
  const auto rows = read_csv(path.string());
  REQUIRE(rows.size() ==
          1 + std::max(ta.records.size(), to.records.size()));
  const bool adaptive_longer = ta.records.size() > to.records.size();
  const auto& last = rows.back();
  REQUIRE(last.size() == 5);
  if (adaptive_longer) {
    CHECK(!last[1].empty());
    CHECK(last[2].empty());
  } else {
    CHECK(last[1].empty());
    CHECK(!last[2].empty());
  }

  CHECK_THROWS_AS(write_compare_csv(path.string(), to, ta), std::invalid_argument);

  RunOptions thinned;
  thinned.thin = 5;
  AdaptiveSchedule a2;
  IterationTrace tt = run_iteration(map, {0.0, 0.0}, a2, {1e-6, 1000}, thinned);
  CHECK_THROWS_AS(write_compare_csv(path.string(), tt, to), std::invalid_argument);
}

TEST_CASE("benchmark table round trip") {
  std::vector<BenchRow> rows;
  rows.push_back({120, 512, 20, "adaptive", 1234.5, 0.125, 0.0234567890123456789});
  rows.push_back({120, 512, 20, "open_loop", 45678.0, 3.5, 0.025});

  const auto path = temp_file("table.csv");
  write_table_csv(path.string(), rows);
  const auto got = read_csv(path.string());
  REQUIRE(got.size() == 3);
  CHECK(got[0] == std::vector<std::string>{"m", "n", "K", "schedule", "mean_iter",
                                           "mean_cpu_seconds", "mean_err"});
  CHECK(got[1][3] == "adaptive");
  CHECK(parse(got[1][4]) == 1234.5);
  CHECK(parse(got[1][6]) == 0.0234567890123456789);
  CHECK(got[2][3] == "open_loop");
}

TEST_CASE("missing files and bad paths are reported") {
  CHECK_THROWS_AS(read_csv("/nonexistent/dir/file.csv"), std::runtime_error);
  IterationTrace empty;
  CHECK_THROWS_AS(write_trace_csv("/nonexistent/dir/file.csv", empty), std::runtime_error);
}
