#pragma once

// Plot-ready data: whitespace-separated columns plus a gnuplot script.

#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "entlab/sweep.hpp"

namespace entlab {

enum class PlotKind {
  kAlphaCurves,     // one file per (c0, Dt) line: alpha N R
  kDtAlphaSurface,  // one file per c0: Dt alpha min-reduction-eigenvalue, blocks per alpha
};

/// "curves" / "surface"; throws ConfigError otherwise.
PlotKind parse_plot_kind(std::string_view text);

struct PlotFiles {
  std::vector<std::filesystem::path> data_files;
  std::filesystem::path script;
};

/// Writes `<stem>_*.dat` files and `<stem>.gp` into `dir` (created if missing).
/// Output bytes depend only on the records. Throws ConfigError on empty input
/// and IoError when the directory or a file cannot be written.
PlotFiles emit_plot_data(std::span<const SweepRecord> records, PlotKind kind,
                         const std::filesystem::path& dir, std::string_view stem);

}  // namespace entlab
