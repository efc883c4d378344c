#include "entlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "entlab/errors.hpp"

namespace entlab {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

// Rotation J = D R that annihilates the (p, q) entry of a Hermitian 2x2 block
// [[app, apq], [conj(apq), aqq]], with D = diag(1, e^{-i phi}) making apq real
// and R the real Jacobi rotation [[c, s], [-s, c]].
struct Rotation {
  double c;
  double s;
  Complex phase;  // e^{-i phi}
};

Rotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double mag = std::abs(apq);
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  return {c, t * c, std::conj(apq) / mag};
}

// M <- M J on columns p, q.
void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  for (std::size_t k = 0; k < m.rows(); ++k) {
    const Complex mp = m(k, p);
    const Complex mq = m(k, q);
    m(k, p) = r.c * mp - r.s * r.phase * mq;
    m(k, q) = r.s * mp + r.c * r.phase * mq;
  }
}

// M <- J^dagger M on rows p, q.
void rotate_rows(ComplexMatrix& m, std::size_t p, std::size_t q, const Rotation& r) {
  const Complex phase_conj = std::conj(r.phase);
  for (std::size_t k = 0; k < m.cols(); ++k) {
    const Complex mp = m(p, k);
    const Complex mq = m(q, k);
    m(p, k) = r.c * mp - r.s * phase_conj * mq;
    m(q, k) = r.s * mp + r.c * phase_conj * mq;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i != j) sum += std::norm(a(i, j));
    }
  }
  return std::sqrt(sum);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix: dimensions must be positive");
  if (data_.size() != rows * cols) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(rows * cols) +
                         " entries, got " + std::to_string(data_.size()));
  }
  if (!all_finite()) throw DomainError("ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Complex> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw DimensionError("from_rows: ragged rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return ComplexMatrix(r, c, std::move(entries));
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  }
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace: matrix is not square");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const auto& z : data_) sum += std::norm(z);
  return std::sqrt(sum);
}

bool ComplexMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_shape(*this, rhs, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) noexcept {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("operator*: inner dimensions " + std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  }
  return worst;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (!a.is_square()) throw DimensionError("hermiticity_defect: matrix is not square");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i; j < a.cols(); ++j) {
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    }
  }
  return worst;
}

double unitarity_defect(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.cols()));
}

HermitianEigensystem herm_eig(const ComplexMatrix& input) {
  if (!input.is_square()) {
    throw DimensionError("herm_eig: matrix is " + std::to_string(input.rows()) + "x" +
                         std::to_string(input.cols()));
  }
  if (!input.all_finite()) throw DomainError("herm_eig: non-finite entry");
  const double defect = hermiticity_defect(input);
  if (defect > tol::kHermiticity) {
    throw DomainError("herm_eig: matrix not Hermitian (defect " + std::to_string(defect) + ")");
  }

  const std::size_t n = input.rows();
  ComplexMatrix a = input;
  // Symmetrize so rounding in the input does not leak into the rotations.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double threshold = tol::kJacobiOffDiagonal * std::max(1.0, a.frobenius_norm());
  bool converged = off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (std::abs(apq) < std::numeric_limits<double>::min()) continue;
        const Rotation r = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
        rotate_columns(a, p, q, r);
        rotate_rows(a, p, q, r);
        rotate_columns(v, p, q, r);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
    converged = off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw ConvergenceError("herm_eig: no convergence after " +
                           std::to_string(tol::kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  HermitianEigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

std::vector<double> herm_eigenvalues(const ComplexMatrix& a) { return herm_eig(a).eigenvalues; }

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (!m.all_finite()) throw DomainError("singular_values: non-finite entry");
  // Orthogonalize columns of the wider-than-tall orientation; singular values
  // of M and M^dagger coincide.
  ComplexMatrix w = m.rows() >= m.cols() ? m : m.adjoint();
  const std::size_t n = w.cols();
  constexpr double kRelTol = 1e-15;
  // Columns at rounding level cannot be orthogonalized further; a pair is done
  // once |gamma| / |larger column| is below kRelTol * |M|_F.
  const double floor = kRelTol * w.frobenius_norm();

  auto column_dot = [&w](std::size_t p, std::size_t q) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < w.rows(); ++k) s += std::conj(w(k, p)) * w(k, q);
    return s;
  };

  bool rotated = true;
  int sweep = 0;
  for (; sweep < tol::kJacobiMaxSweeps && rotated; ++sweep) {
    rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = column_dot(p, p).real();
        const double beta = column_dot(q, q).real();
        const Complex gamma = column_dot(p, q);
        const double mag = std::abs(gamma);
        if (mag < std::numeric_limits<double>::min() || mag <= kRelTol * std::sqrt(alpha * beta) ||
            mag <= floor * std::sqrt(std::max(alpha, beta))) {
          continue;
        }
        rotate_columns(w, p, q, jacobi_rotation(alpha, beta, gamma));
        rotated = true;
      }
    }
  }
  if (rotated) {
    throw ConvergenceError("singular_values: no convergence after " +
                           std::to_string(tol::kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<double> sv(n);
  for (std::size_t k = 0; k < n; ++k) sv[k] = std::sqrt(std::max(0.0, column_dot(k, k).real()));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.is_square()) throw DimensionError("trace_norm: matrix is not square");
  const auto sv = singular_values(m);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  const auto ev = herm_eigenvalues(m);
  return std::accumulate(ev.begin(), ev.end(), 0.0,
                         [](double acc, double x) { return acc + std::abs(x); });
}

ComplexMatrix exp_from_eigensystem(const HermitianEigensystem& eig, double t) {
  if (!std::isfinite(t)) throw DomainError("exp_from_eigensystem: non-finite time");
  const ComplexMatrix& v = eig.eigenvectors;
  const std::size_t n = v.rows();
  std::vector<Complex> phase(n);
  for (std::size_t k = 0; k < n; ++k) phase[k] = std::polar(1.0, -eig.eigenvalues[k] * t);

  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * phase[k] * std::conj(v(j, k));
      out(i, j) = s;
    }
  }
  return out;
}

ComplexMatrix expm_hermitian_generator(const ComplexMatrix& h, double t) {
  return exp_from_eigensystem(herm_eig(h), t);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t r = 0; r < b.rows(); ++r) {
        for (std::size_t c = 0; c < b.cols(); ++c) {
          out(i * b.rows() + r, k * b.cols() + c) = aik * b(r, c);
        }
      }
    }
  }
  return out;
}

namespace pauli {
ComplexMatrix x() { return ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }
ComplexMatrix y() {
  return ComplexMatrix::from_rows({{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}});
}
ComplexMatrix z() { return ComplexMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }
}  // namespace pauli

}  // namespace entlab
