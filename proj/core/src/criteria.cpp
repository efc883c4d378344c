#include "entlab/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "entlab/errors.hpp"

namespace entlab {

std::string_view to_string(ClassificationLabel label) noexcept {
  switch (label) {
    case ClassificationLabel::kUndetected: return "Undetected";
    case ClassificationLabel::kBoundEntangledPPT: return "BoundEntangledPPT";
    case ClassificationLabel::kFreeEntangled: return "FreeEntangled";
    case ClassificationLabel::kRealignmentNegative: return "RealignmentNegative";
  }
  return "Undetected";
}

ClassificationLabel parse_label(std::string_view text) {
  for (auto l : {ClassificationLabel::kUndetected, ClassificationLabel::kBoundEntangledPPT,
                 ClassificationLabel::kFreeEntangled, ClassificationLabel::kRealignmentNegative}) {
    if (text == to_string(l)) return l;
  }
  throw ConfigError("unknown classification label '" + std::string(text) + "'");
}

namespace {

void require_bipartite(const DensityMatrix& rho, const char* op) {
  if (rho.shape().factors() != 2) {
    throw ShapeError(std::string(op) + ": expected a bipartite state, got " +
                     rho.shape().to_string());
  }
}

}  // namespace

double negativity(const DensityMatrix& rho) {
  return (trace_norm_hermitian(partial_transpose(rho)) - 1.0) / 2.0;
}

double realignment_measure(const DensityMatrix& rho) {
  return (trace_norm(realign(rho)) - 1.0) / 2.0;
}

ReductionReport reduction_report(const DensityMatrix& rho) {
  require_bipartite(rho, "reduction_report");
  const ComplexMatrix& m = rho.matrix();
  const std::size_t da = rho.shape()[0];
  const std::size_t db = rho.shape()[1];
  const ComplexMatrix rho_a = partial_trace(m, rho.shape(), 1);
  const ComplexMatrix rho_b = partial_trace(m, rho.shape(), 0);

  ReductionReport rep;
  rep.min_eig_side_a = herm_eigenvalues(kron(rho_a, ComplexMatrix::identity(db)) - m).front();
  rep.min_eig_side_b = herm_eigenvalues(kron(ComplexMatrix::identity(da), rho_b) - m).front();
  rep.distillable = std::min(rep.min_eig_side_a, rep.min_eig_side_b) < -tol::kReduction;
  return rep;
}

ClassificationLabel classify(double n, double r) noexcept {
  if (n > tol::kNegativity) return ClassificationLabel::kFreeEntangled;
  if (r > tol::kRealignment) return ClassificationLabel::kBoundEntangledPPT;
  if (r < -tol::kRealignment) return ClassificationLabel::kRealignmentNegative;
  return ClassificationLabel::kUndetected;
}

CriteriaResult evaluate(const DensityMatrix& rho) {
  require_bipartite(rho, "evaluate");
  CriteriaResult out;
  const auto pt_eigs = herm_eigenvalues(partial_transpose(rho));
  const double pt_norm = std::accumulate(pt_eigs.begin(), pt_eigs.end(), 0.0,
                                         [](double acc, double x) { return acc + std::abs(x); });
  out.negativity = (pt_norm - 1.0) / 2.0;
  out.min_partial_transpose_eig = pt_eigs.front();
  out.realignment = realignment_measure(rho);
  out.reduction = reduction_report(rho);
  out.label = classify(out.negativity, out.realignment);
  return out;
}

}  // namespace entlab
