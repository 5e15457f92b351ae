#pragma once

#include <string>
#include <vector>

#include "pigbc/channel.hpp"

// Capacity bounds and exact values for PI-GBCs: the bosonic entropy helper,
// PLOB upper bounds, twist bounds, FKG bounds, exact M = 0 capacities, lower
// bounds, zero-capacity predicates and the per-channel aggregate report.
//
// All values are in bits per channel use. Capacities referenced below:
//   Q  - quantum capacity        P  - private capacity
//   Q2 - two-way capacity        K  - secret-key capacity

namespace pigbc {

// h(x) = (x+1)log2(x+1) - x log2(x), h(0) = 0 by limit.
double entropy_h(double x);

struct BoundValue {
  double value = 0.0;
  bool applicable = false;
};

// PLOB upper bound on all capacities; not claimed inside the EB region.
// For x = 1 the attenuator and amplifier limits coincide at
// (M-1)/ln2 - log2(M).
BoundValue plob_upper(const Channel& c);

struct ExactM0 {
  double q_and_p;   // Q = P = max{0, log2(x/|1-x|)}
  double k_and_q2;  // K = Q2 = log2(max{1,x}/|1-x|)
};
// Requires M = 0 and x != 1 (the identity channel is unbounded).
ExactM0 exact_m0(const Channel& c);

// Twist bound on Q and P from the zero-noise attenuator/amplifier
// decomposition; applicable up to the AD border, where it vanishes.
BoundValue twist_upper(const Channel& c);

// FKG upper bound for thermal attenuators; null for eta <= 1/2.
double fkg_att_upper(double eta, double n);

// FKG upper bound for amplifiers as a function of Mk = (g-1)N; diverges at
// Mk = 0 and is monotonically decreasing on (0, 1/2].
double fkg_amp_upper(double mk);

// Lower bound on K and Q2 (reverse coherent information).
double lower_q2_k(const Channel& c);

// Coherent-information lower bound on Q and P. Stated for attenuators; the
// amplifier analogue is carried with an extrapolated flag in reports.
double lower_q(const Channel& c);

struct ZeroPredicates {
  bool zero_all;  // all four capacities vanish  <=>  EB (exact)
  bool zero_qp;   // Q = P = 0                    <=  AD (sufficient)
};
ZeroPredicates zero_predicates(const Channel& c);

enum class BoundSide { Upper, Lower, Exact };

struct BoundEntry {
  std::string name;
  BoundSide side = BoundSide::Upper;
  double value = 0.0;
  bool applicable = false;
  bool unbounded = false;
  bool extrapolated = false;  // amplifier-side lower bound, extrapolated form
};

struct BoundReport {
  Channel channel;
  std::vector<BoundEntry> q_p;   // bounds on Q and P
  std::vector<BoundEntry> q2_k;  // bounds on Q2 and K
  double best_upper_q = 0.0;
  bool best_upper_q_unbounded = false;
  double best_lower_q = 0.0;
  bool zero_q = false;    // via the AD predicate
  bool zero_all = false;  // via the EB predicate
  bool additive_noise = false;  // x = 1: directional-limit bounds reported
};

BoundReport report(const Channel& c);

}  // namespace pigbc
