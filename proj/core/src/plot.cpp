#include "entlab/plot.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <system_error>

#include "entlab/errors.hpp"

namespace entlab {

namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Short form for file names and titles.
std::string tag(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << body;
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

bool by_alpha_then_dt(const SweepRecord& a, const SweepRecord& b) {
  return a.alpha != b.alpha ? a.alpha < b.alpha : a.dt < b.dt;
}

}  // namespace

PlotKind parse_plot_kind(std::string_view text) {
  if (text == "curves") return PlotKind::kAlphaCurves;
  if (text == "surface") return PlotKind::kDtAlphaSurface;
  throw ConfigError("unknown plot kind '" + std::string(text) + "' (expected curves or surface)");
}

PlotFiles emit_plot_data(std::span<const SweepRecord> records, PlotKind kind,
                         const std::filesystem::path& dir, std::string_view stem) {
  if (records.empty()) throw ConfigError("emit_plot_data: no records");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

  const std::string base(stem);
  PlotFiles files;
  std::string script = "# gnuplot script generated by entlab\n";

  if (kind == PlotKind::kAlphaCurves) {
    std::map<std::pair<double, double>, std::vector<SweepRecord>> lines;
    for (const auto& rec : records) lines[{rec.c0, rec.dt}].push_back(rec);
    script += "set xlabel 'alpha'\nset ylabel 'N, R'\nset key outside\nplot \\\n";
    bool first = true;
    for (auto& [key, pts] : lines) {
      std::stable_sort(pts.begin(), pts.end(), by_alpha_then_dt);
      const std::string name = base + "_c0-" + tag(key.first) + "_dt-" + tag(key.second) + ".dat";
      std::string body = "# alpha negativity realignment\n";
      for (const auto& rec : pts) {
        body += num(rec.alpha) + ' ' + num(rec.negativity) + ' ' + num(rec.realignment) + '\n';
      }
      write_file(dir / name, body);
      files.data_files.push_back(dir / name);
      const std::string title = "c0=" + tag(key.first) + ", Dt=" + tag(key.second);
      script += std::string(first ? "  " : ", \\\n  ") + "'" + name +
                "' using 1:2 with lines lc rgb 'dark-green' title 'N (" + title + ")', '" + name +
                "' using 1:3 with lines lc rgb 'red' title 'R (" + title + ")'";
      first = false;
    }
    script += "\n";
  } else {
    std::map<double, std::vector<SweepRecord>> surfaces;
    for (const auto& rec : records) surfaces[rec.c0].push_back(rec);
    script +=
        "set xlabel 'Dt'\nset ylabel 'alpha'\nset zlabel 'min eig'\n"
        "set contour base\nset cntrparam levels discrete 0\nset pm3d map\n";
    bool first = true;
    for (auto& [c0, pts] : surfaces) {
      std::stable_sort(pts.begin(), pts.end(), by_alpha_then_dt);
      const std::string name = base + "_c0-" + tag(c0) + "_surface.dat";
      std::string body = "# dt alpha min_reduction_eig\n";
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i > 0 && pts[i].alpha != pts[i - 1].alpha) body += '\n';
        body += num(pts[i].dt) + ' ' + num(pts[i].alpha) + ' ' + num(pts[i].red_min()) + '\n';
      }
      write_file(dir / name, body);
      files.data_files.push_back(dir / name);
      script += std::string(first ? "splot " : "replot ") + "'" + name +
                "' using 1:2:3 with pm3d title 'c0=" + tag(c0) + "'\n";
      first = false;
    }
  }

  files.script = dir / (base + ".gp");
  write_file(files.script, script);
  return files;
}

}  // namespace entlab
