#include "entlab/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "entlab/errors.hpp"

namespace entlab {

namespace {

constexpr std::string_view kOutOfDomainPrefix = "OutOfDomain:";

void append_number(std::string& line, double v) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
  line.append(buf, static_cast<std::size_t>(n));
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double field_double(std::string_view text, std::size_t line_no, const char* column) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("csv line " + std::to_string(line_no) + ": bad " + column + " '" +
                      std::string(text) + "'");
  }
  return v;
}

}  // namespace

std::string label_text(const SweepRecord& rec) {
  std::string s = rec.out_of_domain ? std::string(kOutOfDomainPrefix) : std::string();
  return s.append(to_string(rec.label));
}

void write_csv(std::ostream& out, std::span<const SweepRecord> records) {
  out << kCsvHeader << '\n';
  std::string line;
  for (const auto& rec : records) {
    line.clear();
    line.append(to_string(rec.family));
    for (double v : {rec.alpha, rec.c0, rec.dt, rec.negativity, rec.realignment, rec.red_min_a,
                     rec.red_min_b}) {
      line.push_back(',');
      append_number(line, v);
    }
    line.push_back(',');
    line.append(label_text(rec));
    line.push_back('\n');
    out << line;
  }
}

void write_csv_file(const std::filesystem::path& path, std::span<const SweepRecord> records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_csv(out, records);
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::vector<SweepRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw ConfigError("csv: empty document");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) throw ConfigError("csv line 1: unexpected header '" + line + "'");

  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) {
      throw ConfigError("csv line " + std::to_string(line_no) + ": expected 9 fields, got " +
                        std::to_string(f.size()));
    }
    SweepRecord rec;
    try {
      rec.family = parse_family(f[0]);
      std::string_view label = f[8];
      if (label.starts_with(kOutOfDomainPrefix)) {
        rec.out_of_domain = true;
        label.remove_prefix(kOutOfDomainPrefix.size());
      }
      rec.label = parse_label(label);
    } catch (const ConfigError& e) {
      throw ConfigError("csv line " + std::to_string(line_no) + ": " + e.what());
    }
    rec.alpha = field_double(f[1], line_no, "alpha");
    rec.c0 = field_double(f[2], line_no, "c0");
    rec.dt = field_double(f[3], line_no, "dt");
    rec.negativity = field_double(f[4], line_no, "negativity");
    rec.realignment = field_double(f[5], line_no, "realignment");
    rec.red_min_a = field_double(f[6], line_no, "red_min_a");
    rec.red_min_b = field_double(f[7], line_no, "red_min_b");
    records.push_back(rec);
  }
  return records;
}

std::vector<SweepRecord> read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_csv(in);
}

}  // namespace entlab
