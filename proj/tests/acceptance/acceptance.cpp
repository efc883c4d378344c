// Acceptance runner. Prints one PASS/FAIL line per criterion.
//
//   entlab_acceptance            run all criteria
//   entlab_acceptance AC4 AC7    run a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "entlab/criteria.hpp"
#include "entlab/evolution.hpp"
#include "entlab/linalg.hpp"
#include "entlab/states.hpp"
#include "entlab/sweep.hpp"
#include "oracles.hpp"

using namespace entlab;
namespace t = entlab::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_seconds;  // 0: no runtime limit
  std::function<Outcome()> run;
};

std::string g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Shared by several criteria: the model chosen by the selection oracle.
const VariantSelection& selection() {
  static const VariantSelection sel = select_variant();
  return sel;
}

SweepConfig selected_config() {
  SweepConfig cfg;
  cfg.variant = selection().winner.variant;
  cfg.embedding = selection().winner.embedding;
  return cfg;
}

std::vector<double> step_values(double lo, double hi, double step) {
  std::vector<double> v;
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  for (std::size_t k = 0; k < n; ++k) v.push_back(lo + step * static_cast<double>(k));
  return v;
}

Outcome ac1_crossings() {
  SweepConfig cfg = selected_config();
  cfg.family = Family::kState1;
  cfg.alpha = {2.0, 5.0, 301};
  cfg.c0_values = {0.0};
  cfg.dt = {0.0, 0.0, 1};
  const auto recs = run_sweep(cfg);

  auto first_up = [&](Quantity q) {
    for (const auto& c : zero_crossings(recs, q, 1e-9)) {
      if (c.upward) return c.alpha;
    }
    return std::nan("");
  };
  const double r_cross = first_up(Quantity::kRealignment);
  const double n_cross = first_up(Quantity::kNegativity);
  double n_max_below = -1.0;
  for (const auto& r : recs) {
    if (r.alpha <= 4.0 - 0.01 + 1e-9) n_max_below = std::max(n_max_below, r.negativity);
  }
  const bool ok = std::abs(r_cross - 3.0) <= 0.02 && std::abs(n_cross - 4.0) <= 0.02 &&
                  n_max_below < 1e-9;
  return {ok, "R crosses up at alpha=" + g(r_cross) + " (want 3.00+-0.02), N at alpha=" +
                  g(n_cross) + " (want 4.00+-0.02), max N for alpha<=3.99 = " + g(n_max_below)};
}

Outcome ac2_state2_ppt() {
  SweepConfig cfg = selected_config();
  cfg.family = Family::kState2;
  cfg.alpha = {0.01, 0.99, 99};
  cfg.c0_values = {0.0};
  cfg.dt = {0.0, 0.0, 1};
  const auto recs = run_sweep(cfg);
  double worst_n = 0.0;
  double min_r = 1e300;
  for (const auto& r : recs) {
    worst_n = std::max(worst_n, std::abs(r.negativity));
    min_r = std::min(min_r, r.realignment);
  }
  const bool ok = recs.size() == 99 && worst_n < 1e-9 && min_r > 0.0;
  return {ok, std::to_string(recs.size()) + " points, max |N| = " + g(worst_n) +
                  " (want < 1e-9), min R = " + g(min_r) + " (want > 0)"};
}

Outcome ac3_state1_not_distillable() {
  SweepConfig cfg = selected_config();
  cfg.family = Family::kState1;
  cfg.alpha = {3.0, 4.0, 21};
  cfg.c0_values = step_values(0.0, 1.0, 0.1);
  cfg.dt = {0.0, 5.0, 101};
  const auto recs = run_sweep(cfg);
  double worst = 1e300;
  const SweepRecord* at = nullptr;
  for (const auto& r : recs) {
    if (r.red_min() < worst) {
      worst = r.red_min();
      at = &r;
    }
  }
  const bool ok = worst >= -1e-9;
  return {ok, std::to_string(recs.size()) + " points, min reduction eigenvalue " + g(worst) +
                  " at (alpha=" + g(at->alpha) + ", c0=" + g(at->c0) + ", Dt=" + g(at->dt) +
                  ") (want >= -1e-9)"};
}

Outcome ac4_distillable_region() {
  SweepConfig cfg = selected_config();
  cfg.family = Family::kState2;
  cfg.alpha = {0.01, 0.99, 99};
  cfg.c0_values = {0.7};
  cfg.dt = {0.0, 5.0, 1001};
  const auto recs = run_sweep(cfg);
  const RegionReport rep = find_negative_region(recs);
  if (rep.empty()) return {false, "no distillable point found (want Dt in [1.59, 3.75])"};
  const bool ok = std::abs(rep.dt_lo - 1.59) <= 0.05 && std::abs(rep.dt_hi - 3.75) <= 0.05;
  return {ok, "Dt interval [" + g(rep.dt_lo) + ", " + g(rep.dt_hi) +
                  "] (want [1.59, 3.75] +-0.05), alpha in [" + g(rep.alpha_lo) + ", " +
                  g(rep.alpha_hi) + "], " + std::to_string(rep.negative_points) + " of " +
                  std::to_string(recs.size()) + " points negative"};
}

Outcome ac5_zero_time_identity() {
  const Evolver ev(selection().winner.variant, selection().winner.embedding);
  std::mt19937_64 rng(5005);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double c0 = u(rng);
    const DensityMatrix s1 = horodecki_state1(2.0 + 3.0 * u(rng));
    const DensityMatrix s2 = horodecki_state2(0.001 + 0.998 * u(rng));
    for (const DensityMatrix* s : {&s1, &s2}) {
      const DensityMatrix out = ev.evolve_and_reduce(*s, aux_qubit(c0), 0.0);
      worst = std::max(worst, max_abs_diff(out.matrix(), s->matrix()));
    }
  }
  return {worst <= 1e-12, "40 evolutions, max entrywise deviation " + g(worst) + " (want <= 1e-12)"};
}

Outcome ac6_closed_form_first_row() {
  const Evolver ev(selection().winner.variant, selection().winner.embedding);
  const ClosedFormGridReport rep = verify_closed_form(ev, 10);
  std::size_t reported = 0;
  std::size_t mismatched = 0;
  for (double r : rep.max_residual) {
    reported += std::isfinite(r) ? 1 : 0;
    mismatched += r > 1e-8 ? 1 : 0;
  }
  const bool ok = rep.points == 1000 && reported == 81 && rep.first_row_max_residual <= 1e-8;
  return {ok, "model " + std::string(to_string(ev.variant())) + "/" +
                  std::string(to_string(ev.embedding())) + ", " + std::to_string(rep.points) +
                  " grid points, X11..X19 max residual " + g(rep.first_row_max_residual) +
                  " (want <= 1e-8); " + std::to_string(reported) + " entries reported, " +
                  std::to_string(mismatched) + " flagged"};
}

Outcome ac7_property_suite() {
  const Evolver ev(selection().winner.variant, selection().winner.embedding);
  std::vector<std::string> failures;
  auto require = [&](bool cond, const std::string& what) {
    if (!cond) failures.push_back(what);
  };

  double unit = 0.0;
  for (double dt : GridRange{0.0, 5.0, 101}.values()) unit = std::max(unit, unitarity_defect(ev.propagator(dt)));
  require(unit <= 1e-10, "unitarity " + g(unit));

  std::mt19937_64 rng(7007);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double trace_dev = 0.0;
  double min_eig = 1.0;
  for (int k = 0; k < 100; ++k) {
    const double dt = 5.0 * u(rng);
    const double c0 = u(rng);
    const DensityMatrix s = (k % 2 == 0) ? horodecki_state1(2.0 + 3.0 * u(rng))
                                         : horodecki_state2(0.001 + 0.998 * u(rng));
    const DensityMatrix out = ev.evolve_and_reduce(s, aux_qubit(c0), dt);
    trace_dev = std::max(trace_dev, std::abs(out.matrix().trace() - Complex(1.0)));
    min_eig = std::min(min_eig, herm_eigenvalues(out.matrix()).front());
  }
  require(trace_dev <= 1e-12, "trace preservation " + g(trace_dev));
  require(min_eig >= -1e-9, "positivity " + g(min_eig));

  double tn_dev = 0.0;
  double neg_dev = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ComplexMatrix m = t::random_matrix(rng, 9, 9);
    const ComplexMatrix a = t::random_unitary(rng, 9);
    const ComplexMatrix b = t::random_unitary(rng, 9);
    tn_dev = std::max(tn_dev, std::abs(trace_norm(a * m * b) - trace_norm(m)));
    const DensityMatrix rho = t::random_state(rng, {3, 3}, 1 + k % 9);
    const ComplexMatrix loc = kron(t::random_unitary(rng, 3), t::random_unitary(rng, 3));
    const DensityMatrix rot(loc * rho.matrix() * loc.adjoint(), {3, 3});
    neg_dev = std::max(neg_dev, std::abs(negativity(rot) - negativity(rho)));
  }
  require(tn_dev <= 1e-9, "trace-norm unitary invariance " + g(tn_dev));
  require(neg_dev <= 1e-9, "negativity local-unitary invariance " + g(neg_dev));

  // PPT => reduction criterion holds, over sweeps of both families.
  std::size_t checked = 0;
  std::size_t violations = 0;
  for (Family f : {Family::kState1, Family::kState2}) {
    SweepConfig cfg = selected_config();
    cfg.family = f;
    cfg.alpha = f == Family::kState1 ? GridRange{2.0, 5.0, 31} : GridRange{0.01, 0.99, 50};
    cfg.c0_values = {0.0, 0.2, 0.5, 0.7, 1.0};
    cfg.dt = {0.0, 5.0, 51};
    for (const auto& r : run_sweep(cfg)) {
      ++checked;
      if (r.negativity <= tol::kNegativity && r.red_min() < -tol::kReduction) ++violations;
    }
  }
  require(violations == 0, "PPT=>reduction violated at " + std::to_string(violations) + " points");

  const DensityMatrix me = maximally_entangled(3);
  const double me_n = negativity(me);
  const ReductionReport me_red = reduction_report(me);
  require(std::abs(me_n - 1.0) <= 1e-10, "max-entangled N " + g(me_n));
  require(std::abs(me_red.min_eig_side_a + 2.0 / 3) <= 1e-10 &&
              std::abs(me_red.min_eig_side_b + 2.0 / 3) <= 1e-10,
          "max-entangled reduction " + g(me_red.min_eig_side_a) + "/" + g(me_red.min_eig_side_b));
  const DensityMatrix mixed(ComplexMatrix::identity(9) * Complex(1.0 / 9), {3, 3});
  const double tn = trace_norm(realign(mixed));
  require(std::abs(tn - 1.0 / 3) <= 1e-10, "realign(I/9) trace norm " + g(tn));

  std::string detail = "unitarity " + g(unit) + ", trace " + g(trace_dev) + ", min eig " +
                       g(min_eig) + ", |.|_1 invariance " + g(tn_dev) + ", N invariance " +
                       g(neg_dev) + ", PPT=>reduction over " + std::to_string(checked) +
                       " sweep points, N(max-ent)=" + g(me_n) + ", |realign(I/9)|_1=" + g(tn);
  if (!failures.empty()) {
    detail += "; failed:";
    for (const auto& f : failures) detail += " [" + f + "]";
  }
  return {failures.empty(), detail};
}

Outcome ac8_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "entlab_acceptance";
  fs::create_directories(dir);
  auto sweep_with = [&](const char* workers) {
    ::setenv("ENTLAB_WORKERS", workers, 1);
    const std::string out = (dir / ("det_" + std::string(workers) + ".csv")).string();
    const std::vector<std::string> args = {"entlab", "sweep", "--family", "2", "--c0", "0.2,0.7",
                                           "--alpha", "0.01:0.99:50", "--dt", "0:5:51", "--out",
                                           out};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream so;
    std::ostringstream se;
    const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), so, se);
    ::unsetenv("ENTLAB_WORKERS");
    std::ifstream in(out, std::ios::binary);
    std::ostringstream bytes;
    bytes << in.rdbuf();
    return std::pair{code, bytes.str()};
  };
  const auto [code1, one] = sweep_with("1");
  const auto [code8, eight] = sweep_with("8");
  const bool ok = code1 == 0 && code8 == 0 && !one.empty() && one == eight;
  return {ok, "ENTLAB_WORKERS=1 vs 8: " + std::to_string(one.size()) + " vs " +
                  std::to_string(eight.size()) + " bytes, " +
                  (one == eight ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"AC1", "state 1 crossings at Dt = 0", 10.0, ac1_crossings},
      {"AC2", "state 2 PPT with R > 0", 5.0, ac2_state2_ppt},
      {"AC3", "state 1 not distillable", 300.0, ac3_state1_not_distillable},
      {"AC4", "state 2 distillable Dt interval", 300.0, ac4_distillable_region},
      {"AC5", "Dt = 0 identity", 0.0, ac5_zero_time_identity},
      {"AC6", "closed-form first row", 0.0, ac6_closed_form_first_row},
      {"AC7", "property suite", 0.0, ac7_property_suite},
      {"AC8", "worker-count determinism", 0.0, ac8_determinism},
  };

  std::vector<std::string> wanted(argv + 1, argv + argc);
  for (const auto& w : wanted) {
    if (std::none_of(criteria.begin(), criteria.end(), [&](const auto& c) { return w == c.id; })) {
      std::cerr << "unknown criterion " << w << '\n';
      return 2;
    }
  }

  int failed = 0;
  for (const auto& c : criteria) {
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = c.budget_seconds == 0.0 || secs <= c.budget_seconds;
    const bool pass = o.pass && in_budget;
    failed += pass ? 0 : 1;
    char timing[96];
    if (c.budget_seconds == 0.0) {
      std::snprintf(timing, sizeof timing, "%.2fs", secs);
    } else {
      std::snprintf(timing, sizeof timing, "%.2fs / %.0fs budget%s", secs, c.budget_seconds,
                    in_budget ? "" : ", OVER BUDGET");
    }
    std::printf("%s %s  %s: %s [%s]\n", c.id, pass ? "PASS" : "FAIL", c.title, o.detail.c_str(),
                timing);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
