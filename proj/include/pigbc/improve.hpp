#pragma once

#include <functional>

#include "pigbc/channel.hpp"

// Bound improvement by extremizing bound functions over the low/high-ground
// regions, plus the concrete improved upper bounds on the quantum capacity
// obtained from the FKG bounds.

namespace pigbc {

enum class ImproveBranch {
  Q1_1,      // attenuator-side minimization over epsilon in [0,1]
  Q1_2,      // direct x' parametrization on [x, 1)
  Q2,        // amplifier-side corner evaluation
  Combined,  // generic region extremization
};

struct ImprovedBound {
  double value = 0.0;
  Channel argmin{1.0, 0.0};  // extremizing point, inside H (resp. L) of the reference
  ImproveBranch branch = ImproveBranch::Combined;
  int iterations = 0;
  bool tolerance_met = true;
};

// Maximum additive noise reachable in the high-ground region at x' >= 1:
// M / min{1, x}. Requires x >= 1/2 and the ratio <= 1/2 (outside the
// interior of the AD region).
double m_max_gt(const Channel& c);

// Closed-form improved bound from the amplifier FKG function evaluated at
// the reachable-noise cap; for x >= 1 it reproduces the unimproved bound.
ImprovedBound improved_q2(const Channel& c);

// One-dimensional minimization of the attenuator FKG function along the
// high-ground border. Endpoints recover the unimproved FKG bound (eps = 0)
// and the twist bound (eps = 1).
ImprovedBound improved_q1(const Channel& c, double tol = 1e-9);

// min{improved_q1, improved_q2} with the winning branch recorded.
ImprovedBound improved_upper(const Channel& c, double tol = 1e-9);

using BoundFunction = std::function<double(const Channel&)>;

// Generic machinery: minimize f over the high-ground region of c (reduced to
// its border when f is non-increasing in M at fixed x, which is checked by
// sampling; otherwise a full 2-D grid scan is used).
ImprovedBound minimize_over_high_ground(const Channel& c, const BoundFunction& f,
                                        int grid = 129, double tol = 1e-9);

// Dual: maximize f over the low-ground region border of c.
ImprovedBound maximize_over_low_ground(const Channel& c, const BoundFunction& f,
                                       int grid = 129, double tol = 1e-9);

}  // namespace pigbc
