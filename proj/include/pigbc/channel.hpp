#pragma once

#include <array>
#include <variant>

// Phase-insensitive single-mode Gaussian bosonic channels, parametrized by a
// multiplicative noise parameter x >= 0 and an additive noise parameter M >= 0.
// The triple view attenuator/additive-noise/amplifier is available as a
// canonical form; composition is closed on (x, M) and verified independently
// through the action on Gaussian moments.

namespace pigbc {

struct Channel {
  double x = 1.0;
  double m = 0.0;

  friend bool operator==(const Channel&, const Channel&) = default;
};

// Thermal attenuator: x = eta in [0,1], M = (1-eta)N.
struct Attenuator {
  double eta;
  double n;
};

// Additive classical noise: x = 1, M = N.
struct AdditiveNoise {
  double n;
};

// Thermal amplifier: x = g >= 1, M = (g-1)N.
struct Amplifier {
  double gain;
  double n;
};

using CanonicalForm = std::variant<Attenuator, AdditiveNoise, Amplifier>;

// First and second moments of a single-mode Gaussian state. Only the affine
// bookkeeping is tracked; physicality of V is not enforced.
struct GaussianMoments {
  std::array<double, 2> mean{0.0, 0.0};
  std::array<std::array<double, 2>, 2> cov{{{1.0, 0.0}, {0.0, 1.0}}};
};

// Heaviside step with theta(0) = 1. Every formula using it is continuous at
// its breakpoints, so the convention is observationally irrelevant.
inline double theta(double t) { return t >= 0.0 ? 1.0 : 0.0; }

// Throws std::domain_error on negative, NaN or infinite parameters.
Channel make_channel(double x, double m);

// x < 1 -> Attenuator, x == 1 -> AdditiveNoise, x > 1 -> Amplifier.
CanonicalForm to_canonical(const Channel& c);
Channel from_canonical(const CanonicalForm& f);

// Concatenation: result acts as outer applied after inner.
//   x3 = x2*x1,  M3 = M2 + x2*M1 + (|x2-1| + x2|x1-1| - |x2*x1-1|)/2
Channel compose(const Channel& inner, const Channel& outer);

// Same concatenation expressed through the attenuator/amplifier composition
// rules (C1, C2, C3.1/C3.2, C4.1/C4.2), dispatched on the operand tags.
CanonicalForm compose_canonical(const CanonicalForm& inner, const CanonicalForm& outer);

// m' = sqrt(x) m,  V' = x V + (2M + |1-x|) I.
GaussianMoments apply_to_moments(const Channel& c, const GaussianMoments& s);

// Independent composition oracle: extracts (x3, M3) from the affine action of
// the doubly-applied moment map. Must agree with compose to 1e-12.
Channel oracle_compose(const Channel& inner, const Channel& outer);

}  // namespace pigbc
