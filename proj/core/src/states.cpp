#include "entlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "entlab/errors.hpp"

namespace entlab {

namespace {

constexpr double kNormTol = 1e-12;

std::string alpha_text(double alpha) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", alpha);
  return buf;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  return family == Family::kState1 ? "1" : "2";
}

Family parse_family(std::string_view text) {
  if (text == "1" || text == "state1") return Family::kState1;
  if (text == "2" || text == "state2") return Family::kState2;
  throw ConfigError("unknown state family '" + std::string(text) + "' (expected 1 or 2)");
}

bool in_domain(const HorodeckiParams& params) noexcept {
  if (params.family == Family::kState1) return params.alpha >= 2.0 && params.alpha <= 5.0;
  return params.alpha > 0.0 && params.alpha < 1.0;
}

DensityMatrix horodecki_state1(double alpha, DomainPolicy policy) {
  if (!std::isfinite(alpha)) throw ParameterError("state 1: alpha is not finite");
  const bool ok = policy == DomainPolicy::kStrict ? (alpha >= 2.0 && alpha <= 5.0)
                                                  : (alpha >= 0.0 && alpha <= 5.0);
  if (!ok) {
    throw ParameterError("state 1: alpha = " + alpha_text(alpha) +
                         (policy == DomainPolicy::kStrict ? " outside [2, 5]"
                                                          : " does not give a valid state"));
  }
  ComplexMatrix m(9, 9);
  // P = |psi><psi| with psi = (|00> + |11> + |22>)/sqrt(3).
  for (std::size_t a : {0u, 4u, 8u}) {
    for (std::size_t b : {0u, 4u, 8u}) m(a, b) = (2.0 / 7.0) / 3.0;
  }
  // Q on |01>, |12>, |20>; R on |10>, |21>, |02>.
  for (std::size_t idx : {1u, 5u, 6u}) m(idx, idx) += alpha / 21.0;
  for (std::size_t idx : {3u, 7u, 2u}) m(idx, idx) += (5.0 - alpha) / 21.0;
  return DensityMatrix(std::move(m), SubsystemShape{3, 3}, DensityMatrix::Trusted{});
}

DensityMatrix horodecki_state2(double alpha, DomainPolicy policy) {
  if (!std::isfinite(alpha)) throw ParameterError("state 2: alpha is not finite");
  const bool ok = policy == DomainPolicy::kStrict ? (alpha > 0.0 && alpha < 1.0)
                                                  : (alpha >= 0.0 && alpha <= 1.0);
  if (!ok) {
    throw ParameterError("state 2: alpha = " + alpha_text(alpha) +
                         (policy == DomainPolicy::kStrict ? " outside (0, 1)"
                                                          : " does not give a valid state"));
  }
  ComplexMatrix m(9, 9);
  for (std::size_t a : {0u, 4u, 8u}) {
    for (std::size_t b : {0u, 4u, 8u}) m(a, b) = alpha;
  }
  for (std::size_t idx : {1u, 2u, 3u, 5u, 7u}) m(idx, idx) = alpha;
  m(6, 6) = (1.0 + alpha) / 2.0;
  m(8, 8) = (1.0 + alpha) / 2.0;
  const double off = std::sqrt(1.0 - alpha * alpha) / 2.0;
  m(6, 8) = off;
  m(8, 6) = off;
  m *= 1.0 / (8.0 * alpha + 1.0);
  return DensityMatrix(std::move(m), SubsystemShape{3, 3}, DensityMatrix::Trusted{});
}

DensityMatrix horodecki_state(const HorodeckiParams& params, DomainPolicy policy) {
  return params.family == Family::kState1 ? horodecki_state1(params.alpha, policy)
                                          : horodecki_state2(params.alpha, policy);
}

ComplexMatrix QubitState::density() const {
  return ComplexMatrix::from_rows({{c0 * std::conj(c0), c0 * std::conj(c1)},
                                   {c1 * std::conj(c0), c1 * std::conj(c1)}});
}

QubitState aux_qubit(Complex c0) {
  if (!std::isfinite(c0.real()) || !std::isfinite(c0.imag())) {
    throw ParameterError("aux_qubit: c0 is not finite");
  }
  const double p0 = std::norm(c0);
  if (p0 > 1.0 + kNormTol) {
    throw ParameterError("aux_qubit: |c0| = " + alpha_text(std::sqrt(p0)) + " exceeds 1");
  }
  return {c0, Complex(std::sqrt(std::max(0.0, 1.0 - p0)), 0.0)};
}

DensityMatrix compose(const DensityMatrix& rho, const QubitState& qubit) {
  if (std::abs(std::norm(qubit.c0) + std::norm(qubit.c1) - 1.0) > kNormTol) {
    throw ParameterError("compose: qubit amplitudes are not normalized");
  }
  std::vector<std::size_t> dims = rho.shape().dims();
  dims.push_back(2);
  return DensityMatrix(kron(rho.matrix(), qubit.density()), SubsystemShape(std::move(dims)),
                       DensityMatrix::Trusted{});
}

DensityMatrix maximally_entangled(std::size_t d) {
  ComplexMatrix m(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = 0; b < d; ++b) m(a * d + a, b * d + b) = 1.0 / static_cast<double>(d);
  }
  return DensityMatrix(std::move(m), SubsystemShape{d, d}, DensityMatrix::Trusted{});
}

}  // namespace entlab
