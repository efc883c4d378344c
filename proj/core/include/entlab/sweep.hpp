#pragma once

// Parameter sweeps over (c0, alpha, Dt) grids and the analyses run on their
// output: distillable-region extraction and zero-crossing detection.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "entlab/criteria.hpp"
#include "entlab/evolution.hpp"
#include "entlab/states.hpp"

namespace entlab {

/// Inclusive grid of `steps` evenly spaced points from min to max.
/// steps == 1 yields the single point `min`.
struct GridRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 1;

  std::vector<double> values() const;
  /// Validates finiteness, min <= max, and steps >= 1; throws ConfigError.
  void validate(std::string_view name) const;

  /// "min:max:steps" or a single number (one point).
  static GridRange parse(std::string_view text);

  friend bool operator==(const GridRange&, const GridRange&) = default;
};

struct SweepConfig {
  Family family = Family::kState2;
  GridRange alpha{0.01, 0.99, 99};
  std::vector<double> c0_values{0.7};
  GridRange dt{0.0, 5.0, 1001};
  HamiltonianVariant variant = kDefaultVariant;
  Embedding embedding = kDefaultEmbedding;
  DomainPolicy domain = DomainPolicy::kStrict;
  std::string output_path;
  /// 0 selects worker_count_from_env().
  std::size_t workers = 0;

  /// Throws ConfigError describing the first problem found.
  void validate() const;
  std::size_t grid_size() const;
};

struct SweepRecord {
  Family family = Family::kState1;
  double alpha = 0.0;
  double c0 = 0.0;
  double dt = 0.0;
  double negativity = 0.0;
  double realignment = 0.0;
  double red_min_a = 0.0;
  double red_min_b = 0.0;
  ClassificationLabel label = ClassificationLabel::kUndetected;
  bool out_of_domain = false;

  double red_min() const noexcept { return red_min_a < red_min_b ? red_min_a : red_min_b; }

  friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

/// ENTLAB_WORKERS if set (must be a positive integer), else the hardware
/// concurrency (at least 1).
std::size_t worker_count_from_env();

/// Evaluates every grid point. Records come back ordered by (c0, alpha, dt),
/// and the output does not depend on the worker count. A failure at any point
/// raises NumericalError naming the parameters of the lowest failing index.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// One grid point, for `classify`-style single evaluations.
SweepRecord evaluate_point(Family family, double alpha, double c0, double dt,
                           const Evolver& evolver, DomainPolicy domain = DomainPolicy::kStrict);

struct RegionReport {
  double dt_lo = 0.0;
  double dt_hi = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
  std::size_t negative_points = 0;
  std::vector<SweepRecord> witness_points;  // up to 10, most negative first

  bool empty() const noexcept { return witness_points.empty(); }
};

/// Bounding box of the grid points whose reduction-criterion minimum
/// eigenvalue is below -tol::kReduction. All records must share one
/// (family, c0); ParameterError otherwise. Empty input gives an empty report.
RegionReport find_negative_region(std::span<const SweepRecord> records);

/// Splits records into per-(family, c0) groups in first-seen order.
std::vector<std::vector<SweepRecord>> group_by_c0(std::span<const SweepRecord> records);

enum class Quantity { kNegativity, kRealignment };

struct Crossing {
  double c0 = 0.0;
  double dt = 0.0;
  double alpha = 0.0;  // first alpha past the threshold
  bool upward = true;
};

/// Threshold crossings of N or R along alpha, per (c0, Dt) line. An upward
/// crossing is a step from value <= tol to value > tol; a downward crossing
/// is a step from value >= -tol to value < -tol.
std::vector<Crossing> zero_crossings(std::span<const SweepRecord> records, Quantity quantity,
                                     double tolerance = 1e-9);

}  // namespace entlab
