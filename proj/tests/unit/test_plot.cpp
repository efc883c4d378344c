#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "entlab/errors.hpp"
#include "entlab/plot.hpp"

using namespace entlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t data_rows(const std::string& text) {
  std::size_t n = 0;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) n += (!line.empty() && line[0] != '#') ? 1 : 0;
  return n;
}

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "entlab_plot_tests" / name;
  fs::remove_all(dir);
  return dir;
}

SweepRecord rec(double alpha, double dt, double c0 = 0.0) {
  SweepRecord r;
  r.family = Family::kState1;
  r.alpha = alpha;
  r.dt = dt;
  r.c0 = c0;
  r.negativity = alpha - 4.0;
  r.realignment = alpha - 3.0;
  r.red_min_a = 0.01 * alpha;
  r.red_min_b = 0.02;
  return r;
}

}  // namespace

TEST_CASE("emit_plot_data: alpha curves") {
  std::vector<SweepRecord> recs;
  for (double a : {2.5, 2.0, 3.0}) recs.push_back(rec(a, 0.0));
  const fs::path dir = scratch("curves");
  const PlotFiles files = emit_plot_data(recs, PlotKind::kAlphaCurves, dir, "curves");
  REQUIRE(files.data_files.size() == 1);
  const std::string body = slurp(files.data_files[0]);
  CHECK(body.rfind("# alpha negativity realignment\n", 0) == 0);
  CHECK(data_rows(body) == 3);
  // Sorted by alpha: the first data row is alpha = 2.
  CHECK(body.find("\n2 -2 -1\n") != std::string::npos);
  CHECK(fs::exists(files.script));
  CHECK(slurp(files.script).find("curves_c0-0_dt-0.dat") != std::string::npos);

  // Output bytes depend only on the records.
  const PlotFiles again = emit_plot_data(recs, PlotKind::kAlphaCurves, dir, "curves");
  CHECK(slurp(again.data_files[0]) == body);
}

TEST_CASE("emit_plot_data: surface") {
  std::vector<SweepRecord> recs;
  for (double a : {3.0, 3.5})
    for (double dt : {0.0, 1.0, 2.0}) recs.push_back(rec(a, dt, 0.7));
  const fs::path dir = scratch("surface");
  const PlotFiles files = emit_plot_data(recs, PlotKind::kDtAlphaSurface, dir, "surface");
  REQUIRE(files.data_files.size() == 1);
  const std::string body = slurp(files.data_files[0]);
  CHECK(body.rfind("# dt alpha min_reduction_eig\n", 0) == 0);
  CHECK(data_rows(body) == 6);
  CHECK(body.find("\n\n") != std::string::npos);
  CHECK(slurp(files.script).find("splot") != std::string::npos);
}

TEST_CASE("emit_plot_data: single record and errors") {
  const std::vector<SweepRecord> one = {rec(2.0, 0.0)};
  const PlotFiles files = emit_plot_data(one, PlotKind::kAlphaCurves, scratch("single"), "one");
  CHECK(data_rows(slurp(files.data_files[0])) == 1);
  CHECK_THROWS_AS(emit_plot_data({}, PlotKind::kAlphaCurves, scratch("empty"), "x"), ConfigError);
  CHECK_THROWS_AS(emit_plot_data(one, PlotKind::kAlphaCurves, "/proc/entlab-nope", "x"), IoError);
  CHECK(parse_plot_kind("surface") == PlotKind::kDtAlphaSurface);
  CHECK_THROWS_AS(parse_plot_kind("bars"), ConfigError);
}
