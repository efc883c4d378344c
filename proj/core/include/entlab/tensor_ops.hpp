#pragma once

// Subsystem bookkeeping for composite density matrices.
//
// Basis ordering is |a> (x) |b> (x) |c> ... with the leftmost factor most
// significant: for dims (d0, d1, d2) the flat index is a*d1*d2 + b*d2 + c.

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "entlab/linalg.hpp"

namespace entlab {

class SubsystemShape {
 public:
  SubsystemShape() = default;
  /// Throws DimensionError if any local dimension is below 2.
  explicit SubsystemShape(std::vector<std::size_t> dims);
  SubsystemShape(std::initializer_list<std::size_t> dims)
      : SubsystemShape(std::vector<std::size_t>(dims)) {}

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t factors() const noexcept { return dims_.size(); }
  std::size_t operator[](std::size_t i) const { return dims_.at(i); }
  std::size_t total() const noexcept;
  SubsystemShape without(std::size_t index) const;
  std::string to_string() const;

  friend bool operator==(const SubsystemShape&, const SubsystemShape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

namespace tol {
inline constexpr double kTrace = 1e-10;
/// Smallest eigenvalue admitted for a physical state.
inline constexpr double kPositivitySlack = 1e-9;
}  // namespace tol

/// A square ComplexMatrix with a subsystem factorization, validated as a state:
/// unit trace, Hermitian, and positive semidefinite up to tol::kPositivitySlack.
class DensityMatrix {
 public:
  /// Marker for constructions whose physicality follows from the inputs
  /// (partial traces, unitary conjugation, tensor products of valid states).
  struct Trusted {};

  /// Full validation; throws DimensionError or DomainError.
  DensityMatrix(ComplexMatrix mat, SubsystemShape shape);
  /// Shape consistency only.
  DensityMatrix(ComplexMatrix mat, SubsystemShape shape, Trusted);

  const ComplexMatrix& matrix() const noexcept { return mat_; }
  const SubsystemShape& shape() const noexcept { return shape_; }
  std::size_t dim() const noexcept { return mat_.rows(); }

  /// Recomputes the state checks, returning a description of the first
  /// failure or an empty string when the matrix is a valid state.
  std::string validation_error() const;

 private:
  ComplexMatrix mat_;
  SubsystemShape shape_;
};

/// Traces out factor `subsystem`; the result's shape drops that factor.
DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t subsystem);

/// Raw-matrix partial trace used by the criteria (input need not be a state).
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::size_t subsystem);

/// Transposes the second factor of a bipartite state: out[(i,j),(k,l)] = rho[(i,l),(k,j)].
ComplexMatrix partial_transpose(const DensityMatrix& rho);

/// Realignment: out[(i,k),(j,l)] = rho[(i,j),(k,l)], size d1^2 x d2^2.
ComplexMatrix realign(const DensityMatrix& rho);

}  // namespace entlab
