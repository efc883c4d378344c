#pragma once

// Dense complex linear algebra sized for few-body density matrices (n <= 18).
//
// Everything here is value-semantic and free of global state: matrices are
// plain row-major buffers and every routine is a pure function of its inputs.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace entlab {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double kHermiticity = 1e-10;
inline constexpr double kUnitarity = 1e-10;
inline constexpr double kEigResidual = 1e-10;
/// Off-diagonal Frobenius norm at which Jacobi sweeps stop (scaled by max(1, |A|_F)).
inline constexpr double kJacobiOffDiagonal = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;
}  // namespace tol

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  /// Zero matrix of the given size. Both dimensions must be positive.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major `entries`; throws if the count or finiteness is wrong.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * cols_ + c];
  }

  std::span<const Complex> data() const noexcept { return data_; }
  std::span<Complex> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  bool all_finite() const noexcept;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale) noexcept;

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise |a - b|. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Largest entrywise |A - A^dagger|; requires a square matrix.
double hermiticity_defect(const ComplexMatrix& a);

/// Largest entrywise |U^dagger U - I|.
double unitarity_defect(const ComplexMatrix& u);

struct HermitianEigensystem {
  std::vector<double> eigenvalues;  // nondecreasing
  ComplexMatrix eigenvectors;       // column k pairs with eigenvalues[k]
};

/// Cyclic complex Jacobi diagonalization.
///
/// Throws DimensionError for non-square input, DomainError when the input is
/// not Hermitian within tol::kHermiticity, and ConvergenceError if the
/// off-diagonal mass has not dropped below threshold after
/// tol::kJacobiMaxSweeps sweeps.
HermitianEigensystem herm_eig(const ComplexMatrix& a);

/// Eigenvalues only, nondecreasing.
std::vector<double> herm_eigenvalues(const ComplexMatrix& a);

/// Singular values, nonincreasing. Computed by one-sided (Hestenes) Jacobi
/// orthogonalization of the columns, which implicitly diagonalizes M^dagger M
/// without squaring the condition number.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& m);

/// Sum of |eigenvalues| for a Hermitian matrix; agrees with trace_norm.
double trace_norm_hermitian(const ComplexMatrix& m);

/// V diag(exp(-i lambda_k t)) V^dagger for a precomputed eigensystem.
ComplexMatrix exp_from_eigensystem(const HermitianEigensystem& eig, double t);

/// exp(-i H t) for Hermitian H.
ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t);

/// Kronecker product, left factor most significant.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace entlab
