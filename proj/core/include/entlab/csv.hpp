#pragma once

// Sweep record CSV: header row, UTF-8, LF line endings, numbers in %.17g so a
// write/read cycle reproduces every double exactly.
//
//   family,alpha,c0,dt,negativity,realignment,red_min_a,red_min_b,label
//
// The label column holds the ClassificationLabel name, prefixed with
// "OutOfDomain:" for points swept outside the family's proven alpha domain.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "entlab/sweep.hpp"

namespace entlab {

inline constexpr const char* kCsvHeader =
    "family,alpha,c0,dt,negativity,realignment,red_min_a,red_min_b,label";

std::string label_text(const SweepRecord& rec);

void write_csv(std::ostream& out, std::span<const SweepRecord> records);
/// Throws IoError if the file cannot be written.
void write_csv_file(const std::filesystem::path& path, std::span<const SweepRecord> records);

/// Throws ConfigError (with line number) on a malformed document.
std::vector<SweepRecord> read_csv(std::istream& in);
std::vector<SweepRecord> read_csv_file(const std::filesystem::path& path);

}  // namespace entlab
