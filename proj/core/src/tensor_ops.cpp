#include "entlab/tensor_ops.hpp"

#include <cmath>
#include <functional>
#include <numeric>

#include "entlab/errors.hpp"

namespace entlab {

SubsystemShape::SubsystemShape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw DimensionError("SubsystemShape: no factors");
  for (std::size_t d : dims_) {
    if (d < 2) throw DimensionError("SubsystemShape: local dimension " + std::to_string(d) + " < 2");
  }
}

std::size_t SubsystemShape::total() const noexcept {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

SubsystemShape SubsystemShape::without(std::size_t index) const {
  if (index >= dims_.size()) {
    throw DimensionError("subsystem index " + std::to_string(index) + " out of range for shape " +
                         to_string());
  }
  if (dims_.size() == 1) throw DimensionError("cannot remove the only factor of " + to_string());
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i != index) rest.push_back(dims_[i]);
  }
  return SubsystemShape(std::move(rest));
}

std::string SubsystemShape::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < dims_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(dims_[i]);
  }
  return s + ")";
}

namespace {

void check_shape(const ComplexMatrix& mat, const SubsystemShape& shape) {
  if (!mat.is_square()) throw DimensionError("DensityMatrix: matrix is not square");
  if (shape.factors() == 0 || shape.total() != mat.rows()) {
    throw DimensionError("DensityMatrix: shape " + shape.to_string() + " does not match dimension " +
                         std::to_string(mat.rows()));
  }
}

std::size_t product(const std::vector<std::size_t>& dims, std::size_t begin, std::size_t end) {
  std::size_t p = 1;
  for (std::size_t i = begin; i < end; ++i) p *= dims[i];
  return p;
}

void require_bipartite(const SubsystemShape& shape, const char* op) {
  if (shape.factors() != 2) {
    throw ShapeError(std::string(op) + ": expected a bipartite shape, got " + shape.to_string());
  }
}

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat, SubsystemShape shape)
    : mat_(std::move(mat)), shape_(std::move(shape)) {
  check_shape(mat_, shape_);
  if (auto err = validation_error(); !err.empty()) throw DomainError("DensityMatrix: " + err);
}

DensityMatrix::DensityMatrix(ComplexMatrix mat, SubsystemShape shape, Trusted)
    : mat_(std::move(mat)), shape_(std::move(shape)) {
  check_shape(mat_, shape_);
}

std::string DensityMatrix::validation_error() const {
  if (!mat_.all_finite()) return "non-finite entry";
  const double herm = hermiticity_defect(mat_);
  if (herm > tol::kHermiticity) return "not Hermitian (defect " + std::to_string(herm) + ")";
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > tol::kTrace) return "trace " + std::to_string(tr.real()) + " != 1";
  const double min_eig = herm_eigenvalues(mat_).front();
  if (min_eig < -tol::kPositivitySlack) {
    return "negative eigenvalue " + std::to_string(min_eig);
  }
  return {};
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemShape& shape,
                            std::size_t subsystem) {
  check_shape(m, shape);
  const SubsystemShape rest = shape.without(subsystem);
  const auto& dims = shape.dims();
  const std::size_t left = product(dims, 0, subsystem);
  const std::size_t mid = dims[subsystem];
  const std::size_t right = product(dims, subsystem + 1, dims.size());

  ComplexMatrix out(left * right, left * right);
  for (std::size_t l1 = 0; l1 < left; ++l1) {
    for (std::size_t r1 = 0; r1 < right; ++r1) {
      for (std::size_t l2 = 0; l2 < left; ++l2) {
        for (std::size_t r2 = 0; r2 < right; ++r2) {
          Complex s = 0.0;
          for (std::size_t x = 0; x < mid; ++x) {
            s += m((l1 * mid + x) * right + r1, (l2 * mid + x) * right + r2);
          }
          out(l1 * right + r1, l2 * right + r2) = s;
        }
      }
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::size_t subsystem) {
  return DensityMatrix(partial_trace(rho.matrix(), rho.shape(), subsystem),
                       rho.shape().without(subsystem), DensityMatrix::Trusted{});
}

ComplexMatrix partial_transpose(const DensityMatrix& rho) {
  require_bipartite(rho.shape(), "partial_transpose");
  const std::size_t d1 = rho.shape()[0];
  const std::size_t d2 = rho.shape()[1];
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      for (std::size_t k = 0; k < d1; ++k) {
        for (std::size_t l = 0; l < d2; ++l) {
          out(i * d2 + j, k * d2 + l) = m(i * d2 + l, k * d2 + j);
        }
      }
    }
  }
  return out;
}

ComplexMatrix realign(const DensityMatrix& rho) {
  require_bipartite(rho.shape(), "realign");
  const std::size_t d1 = rho.shape()[0];
  const std::size_t d2 = rho.shape()[1];
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(d1 * d1, d2 * d2);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) {
      for (std::size_t k = 0; k < d1; ++k) {
        for (std::size_t l = 0; l < d2; ++l) {
          out(i * d1 + k, j * d2 + l) = m(i * d2 + j, k * d2 + l);
        }
      }
    }
  }
  return out;
}

}  // namespace entlab
