#include "entlab/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "entlab/errors.hpp"

namespace entlab {

std::string_view to_string(HamiltonianVariant v) noexcept {
  return v == HamiltonianVariant::kSpin1 ? "spin1" : "gellmann12";
}

std::string_view to_string(Embedding e) noexcept {
  return e == Embedding::kRightIdentity ? "right-identity" : "tensor-local";
}

HamiltonianVariant parse_variant(std::string_view text) {
  if (text == "spin1") return HamiltonianVariant::kSpin1;
  if (text == "gellmann12") return HamiltonianVariant::kGellMann12;
  throw ConfigError("unknown Hamiltonian variant '" + std::string(text) +
                    "' (expected spin1 or gellmann12)");
}

Embedding parse_embedding(std::string_view text) {
  if (text == "right-identity") return Embedding::kRightIdentity;
  if (text == "tensor-local") return Embedding::kTensorLocal;
  throw ConfigError("unknown embedding '" + std::string(text) +
                    "' (expected right-identity or tensor-local)");
}

ComplexMatrix dm_hamiltonian_bc(HamiltonianVariant variant) {
  const Complex i(0.0, 1.0);
  ComplexMatrix bx(3, 3);
  ComplexMatrix by(3, 3);
  if (variant == HamiltonianVariant::kGellMann12) {
    bx = ComplexMatrix::from_rows({{0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}});
    by = ComplexMatrix::from_rows({{0.0, -i, 0.0}, {i, 0.0, 0.0}, {0.0, 0.0, 0.0}});
  } else {
    const double k = 1.0 / std::numbers::sqrt2;
    bx = ComplexMatrix::from_rows({{0.0, k, 0.0}, {k, 0.0, k}, {0.0, k, 0.0}});
    by = ComplexMatrix::from_rows({{0.0, -i * k, 0.0}, {i * k, 0.0, -i * k}, {0.0, i * k, 0.0}});
  }
  return kron(bx, pauli::y()) - kron(by, pauli::x());
}

ComplexMatrix embed_full(const ComplexMatrix& h_bc) {
  return embed_full(h_bc, Embedding::kTensorLocal);
}

ComplexMatrix embed_full(const ComplexMatrix& h_bc, Embedding embedding) {
  if (h_bc.rows() != 6 || h_bc.cols() != 6) {
    throw DimensionError("embed_full: expected a 6x6 operator, got " + std::to_string(h_bc.rows()) +
                         "x" + std::to_string(h_bc.cols()));
  }
  const ComplexMatrix id3 = ComplexMatrix::identity(3);
  return embedding == Embedding::kTensorLocal ? kron(id3, h_bc) : kron(h_bc, id3);
}

Evolver::Evolver(HamiltonianVariant variant, Embedding embedding)
    : variant_(variant),
      embedding_(embedding),
      hamiltonian_(embed_full(dm_hamiltonian_bc(variant), embedding)),
      eig_(herm_eig(hamiltonian_)) {}

ComplexMatrix Evolver::propagator(double dt) const { return exp_from_eigensystem(eig_, dt); }

DensityMatrix Evolver::evolve_and_reduce(const DensityMatrix& rho_ab, const QubitState& qubit,
                                         double dt) const {
  if (!std::isfinite(dt)) throw ParameterError("evolve_and_reduce: Dt is not finite");
  return evolve_and_reduce(rho_ab, qubit, propagator(dt));
}

DensityMatrix Evolver::evolve_and_reduce(const DensityMatrix& rho_ab, const QubitState& qubit,
                                         const ComplexMatrix& u) const {
  if (rho_ab.shape() != SubsystemShape{3, 3}) {
    throw ShapeError("evolve_and_reduce: expected a (3,3) state, got " +
                     rho_ab.shape().to_string());
  }
  if (u.rows() != 18 || u.cols() != 18) throw DimensionError("evolve_and_reduce: U must be 18x18");
  const DensityMatrix composite = compose(rho_ab, qubit);
  const ComplexMatrix evolved = u * composite.matrix() * u.adjoint();
  return DensityMatrix(partial_trace(evolved, composite.shape(), 2), SubsystemShape{3, 3},
                       DensityMatrix::Trusted{});
}

DensityMatrix evolve_and_reduce(const DensityMatrix& rho_ab, const QubitState& qubit,
                                const EvolutionParams& params) {
  return Evolver(params.variant, params.embedding)
      .evolve_and_reduce(rho_ab, qubit, params.dm_strength_time);
}

// ---------------------------------------------------------------------------

ComplexMatrix ClosedFormEntries::matrix() const {
  std::vector<Complex> entries(x.begin(), x.end());
  return ComplexMatrix(9, 9, std::move(entries));
}

std::string entry_label(std::size_t row, std::size_t col) {
  return "X" + std::to_string(row + 1) + std::to_string(col + 1);
}

ClosedFormEntries closed_form_state1(double alpha, double c0, double dt) {
  if (!(alpha >= 2.0 && alpha <= 5.0)) {
    throw ParameterError("closed_form_state1: alpha outside [2, 5]");
  }
  if (!(c0 >= 0.0 && c0 <= 1.0) || !std::isfinite(dt)) {
    throw ParameterError("closed_form_state1: need 0 <= c0 <= 1 and finite Dt");
  }
  if (c0 == 0.0 || c0 == 1.0) {
    const char* undefined = c0 == 0.0 ? "X33, X44, X77 (division by c0)"
                                      : "X22, X33, X66 (division by c1)";
    throw SingularEntryError("closed_form_state1: c0 = " + std::to_string(c0) + " makes " +
                             undefined + " undefined");
  }

  const double c1 = std::sqrt(1.0 - c0 * c0);
  const double w = std::numbers::sqrt2 * dt;
  const double a = alpha;
  const double c0s = c0 * c0;
  const double c1s = c1 * c1;

  ClosedFormEntries e;
  e.p = std::sin(w) * c0 * c1;
  e.q = std::cos(w);
  e.r = std::sin(2.0 * w) * c0 * c1 / 42.0;
  e.s = std::cos(2.0 * w) * c0 * c1 / 42.0;
  const double p = e.p, q = e.q, r = e.r, s = e.s;

  auto set = [&e](int row, int col, double v) { e.x[(row - 1) * 9 + (col - 1)] = v; };

  for (auto [i, j] : {std::pair{1, 1}, {1, 9}, {9, 1}, {9, 9}}) set(i, j, 2.0 / 21.0);
  // X13 = -X17 = X31 = -X39 = X71 = X79 = X93 = -X97 = 2p/21.
  set(1, 3, 2.0 * p / 21.0);
  set(1, 7, -2.0 * p / 21.0);
  set(3, 1, 2.0 * p / 21.0);
  set(3, 9, -2.0 * p / 21.0);
  set(7, 1, 2.0 * p / 21.0);
  set(7, 9, 2.0 * p / 21.0);
  set(9, 3, 2.0 * p / 21.0);
  set(9, 7, -2.0 * p / 21.0);
  for (auto [i, j] : {std::pair{1, 5}, {5, 1}, {5, 9}, {9, 5}}) set(i, j, 2.0 * q / 21.0);

  set(2, 2, (a * c0s - (a - 5.0) * p * p / c1s + a * c1s * q * q) / 21.0);
  set(2, 4, -(a + (a - 5.0) * q) * p / 21.0);
  set(4, 2, -(a + (a - 5.0) * q) * p / 21.0);
  set(3, 3, (7.0 - a) / 42.0 - (a - 3.0) * s / (c0 * c1) - 2.0 * (a - 5.0) * c1s);
  set(3, 5, (a - 3.0) * r);
  set(5, 3, (a - 3.0) * r);
  set(4, 4, -(a - 5.0) * c0s / 21.0 + (5.0 - 2.0 * a) * s * c1 / c0 + 5.0 / 42.0);
  set(5, 5, ((a + 2.0) * c0s - (a - 7.0) * c1s) / 42.0 - s);
  set(5, 7, (a - 2.0) * r);
  set(7, 5, (a - 2.0) * r);
  set(6, 6, 5.0 * c0s / 42.0 + (2.0 * a - 5.0) * s * c0 / c1 + a * c1s / 21.0);
  set(6, 8, -(a - 5.0 + a * q) * p / 21.0);
  set(8, 6, -(a - 5.0 + a * q) * p / 21.0);
  set(7, 7, a * c0s / 21.0 + (a + 2.0) / 42.0 * c1s + (a - 2.0) * s * c1 / c0);
  set(8, 8, (5.0 * c1s - ((a - 5.0) * c0s + a * c1s) * q * q) / 21.0);
  return e;
}

std::array<double, 81> closed_form_residuals(const Evolver& evolver, double alpha, double c0,
                                             double dt) {
  const ClosedFormEntries cf = closed_form_state1(alpha, c0, dt);
  const DensityMatrix rho =
      evolver.evolve_and_reduce(horodecki_state1(alpha), aux_qubit(c0), dt);
  std::array<double, 81> res{};
  for (std::size_t i = 0; i < 9; ++i) {
    for (std::size_t j = 0; j < 9; ++j) res[i * 9 + j] = std::abs(rho.matrix()(i, j) - cf.at(i, j));
  }
  return res;
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1);
  }
  return v;
}

// Max deviation of row 1 and column 1 from the first-row formulas (column
// entries compared against the conjugate of their row partner).
double first_row_deviation(const ComplexMatrix& numeric, const ClosedFormEntries& cf) {
  double worst = 0.0;
  for (std::size_t j = 0; j < 9; ++j) {
    worst = std::max(worst, std::abs(numeric(0, j) - cf.at(0, j)));
    worst = std::max(worst, std::abs(numeric(j, 0) - std::conj(Complex(cf.at(0, j)))));
  }
  return worst;
}

}  // namespace

ClosedFormGridReport verify_closed_form(const Evolver& evolver, std::size_t n) {
  if (n == 0) throw ConfigError("verify_closed_form: grid size must be positive");
  ClosedFormGridReport report;
  report.alphas = linspace(2.0, 5.0, n);
  report.dts = linspace(0.0, 5.0, n);
  for (std::size_t k = 0; k < n; ++k) {
    report.c0s.push_back((static_cast<double>(k) + 0.5) / static_cast<double>(n));
  }
  for (double c0 : report.c0s) {
    const QubitState qubit = aux_qubit(c0);
    for (double dt : report.dts) {
      const ComplexMatrix u = evolver.propagator(dt);
      for (double alpha : report.alphas) {
        const ClosedFormEntries cf = closed_form_state1(alpha, c0, dt);
        const ComplexMatrix numeric =
            evolver.evolve_and_reduce(horodecki_state1(alpha), qubit, u).matrix();
        for (std::size_t i = 0; i < 9; ++i) {
          for (std::size_t j = 0; j < 9; ++j) {
            double& slot = report.max_residual[i * 9 + j];
            slot = std::max(slot, std::abs(numeric(i, j) - cf.at(i, j)));
          }
        }
        report.first_row_max_residual =
            std::max(report.first_row_max_residual, first_row_deviation(numeric, cf));
        ++report.points;
      }
    }
  }
  return report;
}

VariantSelection select_variant() {
  const std::vector<double> alphas = {2.5, 3.5, 4.5};
  const std::vector<double> c0s = {0.3, 0.5, 0.7};
  const std::vector<double> dts = linspace(0.0, 5.0, 11);

  VariantSelection out{};
  bool first = true;
  for (auto variant : {HamiltonianVariant::kGellMann12, HamiltonianVariant::kSpin1}) {
    for (auto embedding : {Embedding::kTensorLocal, Embedding::kRightIdentity}) {
      const Evolver evolver(variant, embedding);
      double worst = 0.0;
      for (double c0 : c0s) {
        for (double dt : dts) {
          const ComplexMatrix u = evolver.propagator(dt);
          for (double alpha : alphas) {
            const auto numeric =
                evolver.evolve_and_reduce(horodecki_state1(alpha), aux_qubit(c0), u).matrix();
            worst = std::max(worst, first_row_deviation(numeric, closed_form_state1(alpha, c0, dt)));
          }
        }
      }
      VariantCandidate cand{variant, embedding, worst};
      out.candidates.push_back(cand);
      if (first || worst < out.winner.max_deviation) out.winner = cand;
      first = false;
    }
  }
  return out;
}

}  // namespace entlab
