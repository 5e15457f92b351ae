#pragma once

#include <functional>
#include <optional>

#include "pigbc/channel.hpp"

// Entanglement-breaking / anti-degradability classification, the border
// curves of the low-ground and high-ground capacity regions, membership
// tests, and constructive concatenation witnesses.

namespace pigbc {

enum class EbRegime {
  NonEbOrBorder,  // M <= min{1, x}
  DeepEb,         // M >  min{1, x}
};

struct RegionVerdict {
  double m_eb = 0.0;   // EB threshold at this x
  double m_ad = 0.0;   // AD threshold at this x (clamped at 0)
  bool is_eb = false;
  bool is_ad = false;
  EbRegime regime = EbRegime::NonEbOrBorder;
};

// Explicit factors reconstructing a target from a reference channel:
//   target = post o ref o pre
// For deep-EB references the two-stage chain passes through `mid`.
struct Witness {
  Channel pre{1.0, 0.0};
  Channel post{1.0, 0.0};
  std::optional<Channel> mid;
  double residual = 0.0;  // max of |dx|, |dM| after reconstruction
};

// EB threshold min{1, x}.
double m_eb(double x);

// AD threshold max{0, min{x - 1/2, 1/2}}; for x < 1/2 every channel is AD.
double m_ad(double x);

RegionVerdict classify(const Channel& c);

// Border functions of the low/high-ground regions of a reference channel.
// f2 requires ref.x > 0.
double border_f1(const Channel& ref, double xp);
double border_f2(const Channel& ref, double xp);

// Membership tests. Non-EB references use the closed-inequality polytope
// tests; deep-EB references use the strict-EB rules. References with x = 0
// are answered by the deep-EB convention (low ground = strict EB plus the
// x' = 0 axis; high ground = everything).
bool in_low_ground(const Channel& ref, const Channel& p);
bool in_high_ground(const Channel& ref, const Channel& p);

// Contract: in_high_ground(a, b) == in_low_ground(b, a), always.
bool complementarity_check(const Channel& a, const Channel& b);

// Two-element concatenation border curves for an attenuator reference,
// eta in (0,1), N >= 0. n1, n2 are functions of eta'; n3, n4 of g'.
struct AttenuatorBorders {
  double eta;
  double n;
  double n1(double eta_p) const;
  double n2(double eta_p) const;
  double n3(double g_p) const;
  double n4(double g_p) const;
};
AttenuatorBorders two_element_borders_att(double eta, double n);

// Analogous curves for an amplifier reference, g > 1, N >= 0.
// n1, n2 are functions of g'; n3, n4 of eta'.
struct AmplifierBorders {
  double gain;
  double n;
  double n1(double g_p) const;
  double n2(double g_p) const;
  double n3(double eta_p) const;
  double n4(double eta_p) const;
};
AmplifierBorders two_element_borders_amp(double g, double n);

// Border pieces M^(j)(x') in the (x, M) parametrization. Throws outside the
// row's applicability interval.
double table2_border(const Channel& ref, int j, double xp);

// Constructive low-ground witness; requires in_low_ground(ref, p) and
// ref.x > 0. Targets with p.x = 0 get the absorbing post-factor {0, M'}.
Witness witness_low_ground(const Channel& ref, const Channel& p);

// Reconstructs post o ref o pre (and reports the residual against target).
Channel reconstruct(const Witness& w, const Channel& ref);

}  // namespace pigbc
