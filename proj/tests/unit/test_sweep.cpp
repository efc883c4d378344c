#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "entlab/csv.hpp"
#include "entlab/errors.hpp"
#include "entlab/sweep.hpp"

using namespace entlab;

namespace {

SweepConfig small_config() {
  SweepConfig cfg;
  cfg.family = Family::kState2;
  cfg.alpha = {0.05, 0.95, 7};
  cfg.c0_values = {0.7, 0.2};
  cfg.dt = {0.0, 5.0, 9};
  cfg.workers = 1;
  return cfg;
}

SweepRecord synthetic(double alpha, double dt, double red) {
  SweepRecord r;
  r.family = Family::kState2;
  r.alpha = alpha;
  r.c0 = 0.7;
  r.dt = dt;
  r.red_min_a = red;
  r.red_min_b = 0.1;
  return r;
}

}  // namespace

TEST_CASE("GridRange: values and parsing") {
  const GridRange r = GridRange::parse("0:5:1001");
  CHECK(r.steps == 1001);
  const auto v = r.values();
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 5.0);
  CHECK(v[1] == doctest::Approx(0.005).epsilon(1e-14));
  CHECK(GridRange::parse("0.7").values() == std::vector<double>{0.7});
  CHECK(GridRange{0.01, 0.99, 99}.values()[98] == 0.99);
  CHECK_THROWS_AS(GridRange::parse("1:0:5"), ConfigError);
  CHECK_THROWS_AS(GridRange::parse("0:1:0"), ConfigError);
  CHECK_THROWS_AS(GridRange::parse("0:1"), ConfigError);
  CHECK_THROWS_AS(GridRange::parse("0:1:2:3"), ConfigError);
  CHECK_THROWS_AS(GridRange::parse("a:1:2"), ConfigError);
  CHECK_THROWS_AS(GridRange::parse("0:1:2.5"), ConfigError);
}

TEST_CASE("SweepConfig: validation") {
  SweepConfig cfg = small_config();
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.grid_size() == 2 * 7 * 9);
  cfg.c0_values = {1.2};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.c0_values.clear();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.alpha = {0.0, 0.5, 3};
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.domain = DomainPolicy::kAllowOutOfDomain;
  CHECK_NOTHROW(cfg.validate());
  CHECK_THROWS_AS(run_sweep(SweepConfig{.family = Family::kState1, .alpha = {1.0, 3.0, 3}}),
                  ConfigError);
}

TEST_CASE("run_sweep: ordering, determinism and worker independence") {
  const SweepConfig cfg = small_config();
  const auto a = run_sweep(cfg);
  REQUIRE(a.size() == cfg.grid_size());
  // c0 values come back sorted, then alpha, then dt.
  CHECK(a.front().c0 == 0.2);
  CHECK(a.back().c0 == 0.7);
  for (std::size_t k = 1; k < a.size(); ++k) {
    const auto& p = a[k - 1];
    const auto& q = a[k];
    const bool ordered = p.c0 < q.c0 || (p.c0 == q.c0 && (p.alpha < q.alpha ||
                                                          (p.alpha == q.alpha && p.dt < q.dt)));
    CHECK(ordered);
  }
  CHECK(run_sweep(cfg) == a);
  SweepConfig many = cfg;
  many.workers = 5;
  CHECK(run_sweep(many) == a);

  // Each record equals a standalone evaluation.
  const Evolver ev;
  const SweepRecord single = evaluate_point(Family::kState2, a[10].alpha, a[10].c0, a[10].dt, ev);
  CHECK(single == a[10]);
}

TEST_CASE("run_sweep: degenerate grid yields one record per c0") {
  SweepConfig cfg = small_config();
  cfg.alpha = {0.5, 0.5, 1};
  cfg.dt = {1.0, 1.0, 1};
  cfg.c0_values = {0.1, 0.4, 0.9};
  const auto recs = run_sweep(cfg);
  CHECK(recs.size() == 3);
}

TEST_CASE("run_sweep: out-of-domain records are marked") {
  SweepConfig cfg;
  cfg.family = Family::kState1;
  cfg.alpha = {1.0, 2.0, 2};
  cfg.c0_values = {0.0};
  cfg.dt = {0.0, 0.0, 1};
  cfg.domain = DomainPolicy::kAllowOutOfDomain;
  cfg.workers = 1;
  const auto recs = run_sweep(cfg);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].out_of_domain);
  CHECK_FALSE(recs[1].out_of_domain);
  CHECK(label_text(recs[0]).rfind("OutOfDomain:", 0) == 0);
}

TEST_CASE("worker_count_from_env") {
  ::setenv("ENTLAB_WORKERS", "3", 1);
  CHECK(worker_count_from_env() == 3);
  ::setenv("ENTLAB_WORKERS", "zero", 1);
  CHECK_THROWS_AS(worker_count_from_env(), ConfigError);
  ::setenv("ENTLAB_WORKERS", "0", 1);
  CHECK_THROWS_AS(worker_count_from_env(), ConfigError);
  ::unsetenv("ENTLAB_WORKERS");
  CHECK(worker_count_from_env() >= 1);
}

TEST_CASE("find_negative_region: synthetic records") {
  std::vector<SweepRecord> recs;
  for (double alpha : {0.1, 0.2, 0.3}) {
    for (double dt : {0.0, 1.0, 2.0, 3.0}) {
      const bool inside = alpha <= 0.2 && dt >= 1.0 && dt <= 2.0;
      recs.push_back(synthetic(alpha, dt, inside ? -0.01 * (1 + alpha + dt) : 0.05));
    }
  }
  const RegionReport rep = find_negative_region(recs);
  CHECK_FALSE(rep.empty());
  CHECK(rep.dt_lo == 1.0);
  CHECK(rep.dt_hi == 2.0);
  CHECK(rep.alpha_lo == 0.1);
  CHECK(rep.alpha_hi == 0.2);
  CHECK(rep.negative_points == 4);
  REQUIRE(rep.witness_points.size() == 4);
  CHECK(rep.witness_points.front().alpha == 0.2);
  CHECK(rep.witness_points.front().dt == 2.0);

  for (auto& r : recs) r.red_min_a = 0.01;
  CHECK(find_negative_region(recs).empty());
  CHECK(find_negative_region({}).empty());

  recs.push_back(synthetic(0.1, 0.0, 0.0));
  recs.back().c0 = 0.2;
  CHECK_THROWS_AS(find_negative_region(recs), ParameterError);
  CHECK(group_by_c0(recs).size() == 2);
}

TEST_CASE("find_negative_region: state 1 with c0 = 1 has no region") {
  SweepConfig cfg;
  cfg.family = Family::kState1;
  cfg.alpha = {3.0, 4.0, 5};
  cfg.c0_values = {1.0};
  cfg.dt = {0.0, 5.0, 11};
  cfg.workers = 1;
  CHECK(find_negative_region(run_sweep(cfg)).empty());
}

TEST_CASE("zero_crossings") {
  std::vector<SweepRecord> recs;
  const double values[] = {-0.2, -1e-12, 0.1, 0.2, -0.3};
  for (int k = 0; k < 5; ++k) {
    SweepRecord r = synthetic(0.1 * (k + 1), 0.5, 0.1);
    r.realignment = values[k];
    recs.push_back(r);
  }
  const auto cr = zero_crossings(recs, Quantity::kRealignment);
  REQUIRE(cr.size() == 2);
  CHECK(cr[0].upward);
  CHECK(cr[0].alpha == doctest::Approx(0.3));
  CHECK_FALSE(cr[1].upward);
  CHECK(cr[1].alpha == doctest::Approx(0.5));
  CHECK(zero_crossings(recs, Quantity::kNegativity).empty());
}

TEST_CASE("csv: round trip and format") {
  SweepConfig cfg = small_config();
  cfg.dt = {0.0, 1.0, 3};
  const auto recs = run_sweep(cfg);
  std::ostringstream out;
  write_csv(out, recs);
  const std::string text = out.str();
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream in(text);
  CHECK(read_csv(in) == recs);

  std::istringstream bad_header("family,alpha\n");
  CHECK_THROWS_AS(read_csv(bad_header), ConfigError);
  std::istringstream bad_row(std::string(kCsvHeader) + "\n2,0.1,0.7,0,x,0,0,0,Undetected\n");
  CHECK_THROWS_AS(read_csv(bad_row), ConfigError);
  std::istringstream short_row(std::string(kCsvHeader) + "\n2,0.1\n");
  CHECK_THROWS_AS(read_csv(short_row), ConfigError);
  CHECK_THROWS_AS(write_csv_file("/nonexistent-dir/x.csv", recs), IoError);
  CHECK_THROWS_AS(read_csv_file("/nonexistent-dir/x.csv"), IoError);
}
