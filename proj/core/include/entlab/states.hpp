#pragma once

// Initial states: the two Horodecki qutrit-qutrit families, the auxiliary
// qubit, and the tripartite product state.

#include <string_view>

#include "entlab/linalg.hpp"
#include "entlab/tensor_ops.hpp"

namespace entlab {

enum class Family { kState1, kState2 };

/// "1" / "2".
std::string_view to_string(Family family) noexcept;
/// Accepts "1", "2", "state1", "state2"; throws ConfigError otherwise.
Family parse_family(std::string_view text);

/// Whether constructors reject parameters outside the family's proven domain.
enum class DomainPolicy { kStrict, kAllowOutOfDomain };

struct HorodeckiParams {
  Family family = Family::kState1;
  double alpha = 0.0;
};

/// Proven domain: State1 requires 2 <= alpha <= 5, State2 requires 0 < alpha < 1.
bool in_domain(const HorodeckiParams& params) noexcept;

/// (2/7) P + (alpha/21) Q + ((5 - alpha)/21) R on the 3x3 system.
///
/// With kAllowOutOfDomain any alpha is accepted as long as the resulting
/// matrix is still a valid state (0 <= alpha <= 5); otherwise ParameterError.
DensityMatrix horodecki_state1(double alpha, DomainPolicy policy = DomainPolicy::kStrict);

/// The 9x9 one-parameter PPT family normalized by 1/(8 alpha + 1).
/// Out-of-domain override admits 0 <= alpha <= 1.
DensityMatrix horodecki_state2(double alpha, DomainPolicy policy = DomainPolicy::kStrict);

DensityMatrix horodecki_state(const HorodeckiParams& params,
                              DomainPolicy policy = DomainPolicy::kStrict);

struct QubitState {
  Complex c0;
  Complex c1;

  /// |phi><phi| with |phi> = c0|0> + c1|1>.
  ComplexMatrix density() const;
};

/// c1 = sqrt(1 - |c0|^2), real and nonnegative. Throws ParameterError if |c0| > 1.
QubitState aux_qubit(Complex c0);

/// rho (x) |phi><phi| with the qubit appended as the last factor.
DensityMatrix compose(const DensityMatrix& rho, const QubitState& qubit);

/// (|00> + |11> + ... ) / sqrt(d) projected, on d (x) d.
DensityMatrix maximally_entangled(std::size_t d);

}  // namespace entlab
