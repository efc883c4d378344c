#pragma once

// Entanglement detectors for bipartite states: negativity (partial
// transpose), the realignment measure, and the reduction criterion.

#include <string_view>

#include "entlab/tensor_ops.hpp"

namespace entlab {

namespace tol {
inline constexpr double kNegativity = 1e-9;
inline constexpr double kRealignment = 1e-9;
inline constexpr double kReduction = 1e-10;
}  // namespace tol

enum class ClassificationLabel {
  kUndetected,
  kBoundEntangledPPT,
  kFreeEntangled,
  kRealignmentNegative,  // N = 0 and R < 0: possible NPT-bound candidate region
};

std::string_view to_string(ClassificationLabel label) noexcept;
/// Inverse of to_string; throws ConfigError on unknown text.
ClassificationLabel parse_label(std::string_view text);

struct ReductionReport {
  double min_eig_side_a = 0.0;  // lambda_min(rho_A (x) I - rho)
  double min_eig_side_b = 0.0;  // lambda_min(I (x) rho_B - rho)
  bool distillable = false;     // either side below -tol::kReduction
};

struct CriteriaResult {
  double negativity = 0.0;
  double realignment = 0.0;
  ClassificationLabel label = ClassificationLabel::kUndetected;
  ReductionReport reduction;
  double min_partial_transpose_eig = 0.0;
};

/// (||rho^T_B||_1 - 1) / 2.
double negativity(const DensityMatrix& rho);

/// (||rho^R||_1 - 1) / 2.
double realignment_measure(const DensityMatrix& rho);

ReductionReport reduction_report(const DensityMatrix& rho);

/// FreeEntangled iff N > tol; otherwise BoundEntangledPPT if R > tol,
/// RealignmentNegative if R < -tol, Undetected in between.
ClassificationLabel classify(double n, double r) noexcept;

/// All three criteria; the partial-transpose spectrum is computed once.
CriteriaResult evaluate(const DensityMatrix& rho);

}  // namespace entlab
