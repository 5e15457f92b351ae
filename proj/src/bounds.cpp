#include "pigbc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pigbc/regions.hpp"

namespace pigbc {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kLog2E = std::log2(std::exp(1.0));
}  // namespace

double entropy_h(double x) {
  if (x < 0.0 || std::isnan(x)) throw std::domain_error("entropy_h: x must be >= 0");
  if (x == 0.0) return 0.0;
  return (x + 1.0) * std::log2(x + 1.0) - x * std::log2(x);
}

BoundValue plob_upper(const Channel& c) {
  const bool applicable = c.m <= m_eb(c.x);  // claimed outside EB, closed at the border
  double value;
  if (c.x < 1.0) {
    const double n = c.m / (1.0 - c.x);
    // eta^N evaluated in log-domain; N log2(0) only arises for EB channels.
    const double n_log_eta = c.x == 0.0 ? (n == 0.0 ? 0.0 : -kInf) : n * std::log2(c.x);
    value = -entropy_h(n) - std::log2(1.0 - c.x) - n_log_eta;
  } else if (c.x > 1.0) {
    const double n = c.m / (c.x - 1.0);
    value = -entropy_h(n) + (n + 1.0) * std::log2(c.x) - std::log2(c.x - 1.0);
  } else {
    // Both directional limits coincide for additive noise.
    value = c.m == 0.0 ? kInf : (c.m - 1.0) * kLog2E - std::log2(c.m);
  }
  return BoundValue{value, applicable};
}

ExactM0 exact_m0(const Channel& c) {
  if (c.m != 0.0) throw std::domain_error("exact_m0: requires M = 0");
  if (c.x == 1.0) throw std::domain_error("exact_m0: identity channel is unbounded");
  const double gap = std::abs(1.0 - c.x);
  const double qp = c.x == 0.0 ? 0.0 : std::max(0.0, std::log2(c.x / gap));
  const double kq2 = std::log2(std::max(1.0, c.x) / gap);
  return ExactM0{qp, kq2};
}

BoundValue twist_upper(const Channel& c) {
  const bool applicable = c.m <= std::min(c.x - 0.5, 0.5);
  if (!applicable) return BoundValue{0.0, false};
  const double value = c.x <= 1.0 ? std::log2((c.x - c.m) / (1.0 - c.x + c.m))
                                  : std::log2((1.0 - c.m) / c.m);
  return BoundValue{value, true};
}

double fkg_att_upper(double eta, double n) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::domain_error("fkg_att_upper: eta must lie in (0,1)");
  if (n < 0.0) throw std::domain_error("fkg_att_upper: N must be >= 0");
  if (eta <= 0.5) return 0.0;
  return std::log2(eta / (1.0 - eta)) + entropy_h((1.0 - eta) * n) - entropy_h(eta * n);
}

double fkg_amp_upper(double mk) {
  if (mk < 0.0) throw std::domain_error("fkg_amp_upper: Mk must be >= 0");
  if (mk == 0.0) return kInf;
  return -std::log2(mk) - kLog2E + 2.0 * entropy_h((std::sqrt(mk * mk + 1.0) - 1.0) / 2.0);
}

double lower_q2_k(const Channel& c) {
  if (c.x < 1.0) {
    return std::max(0.0, -entropy_h(c.m / (1.0 - c.x)) - std::log2(1.0 - c.x));
  }
  if (c.x > 1.0) {
    return std::max(0.0, -entropy_h(c.m / (c.x - 1.0)) + std::log2(c.x / (c.x - 1.0)));
  }
  return c.m == 0.0 ? kInf : std::max(0.0, -std::log2(c.m) - kLog2E);
}

double lower_q(const Channel& c) {
  if (c.x == 0.0) return 0.0;
  if (c.x < 1.0) {
    return std::max(0.0,
                    std::log2(c.x / (1.0 - c.x)) - entropy_h(c.m / (1.0 - c.x)));
  }
  if (c.x > 1.0) {
    // Amplifier analogue of the coherent-information bound (extrapolated).
    return std::max(0.0,
                    std::log2(c.x / (c.x - 1.0)) - entropy_h(c.m / (c.x - 1.0)));
  }
  return c.m == 0.0 ? kInf : std::max(0.0, -std::log2(c.m) - kLog2E);
}

ZeroPredicates zero_predicates(const Channel& c) {
  const RegionVerdict v = classify(c);
  return ZeroPredicates{v.is_eb, v.is_ad};
}

namespace {

BoundEntry entry(std::string name, BoundSide side, double value, bool applicable) {
  BoundEntry e;
  e.name = std::move(name);
  e.side = side;
  e.value = value;
  e.applicable = applicable;
  e.unbounded = std::isinf(value);
  return e;
}

}  // namespace

BoundReport report(const Channel& c) {
  BoundReport r;
  r.channel = c;
  r.additive_noise = c.x == 1.0;

  const ZeroPredicates zp = zero_predicates(c);
  r.zero_all = zp.zero_all;
  r.zero_q = zp.zero_qp;

  if (c.m == 0.0 && c.x != 1.0) {
    const ExactM0 ex = exact_m0(c);
    r.q_p.push_back(entry("exact_m0", BoundSide::Exact, ex.q_and_p, true));
    r.q2_k.push_back(entry("exact_m0", BoundSide::Exact, ex.k_and_q2, true));
  }

  const BoundValue plob = plob_upper(c);
  r.q_p.push_back(entry("plob", BoundSide::Upper, plob.value, plob.applicable));
  r.q2_k.push_back(entry("plob", BoundSide::Upper, plob.value, plob.applicable));

  const BoundValue tw = twist_upper(c);
  r.q_p.push_back(entry("twist", BoundSide::Upper, tw.value, tw.applicable));

  if (c.x == 0.0) {
    r.q_p.push_back(entry("fkg_att", BoundSide::Upper, 0.0, false));
  } else if (c.x < 1.0) {
    r.q_p.push_back(entry("fkg_att", BoundSide::Upper,
                          fkg_att_upper(c.x, c.m / (1.0 - c.x)), true));
  } else if (c.x > 1.0) {
    r.q_p.push_back(
        entry("fkg_amp", BoundSide::Upper, fkg_amp_upper(c.m), c.m <= 0.5));
  } else {
    // Additive noise: the FKG bounds are stated for attenuators/amplifiers
    // only; both directional limits are reported.
    const double att_limit =
        c.m == 0.0 ? kInf : entropy_h(c.m) - std::log2(c.m) - kLog2E;
    r.q_p.push_back(entry("fkg_att_limit", BoundSide::Upper, att_limit, true));
    r.q_p.push_back(
        entry("fkg_amp_limit", BoundSide::Upper, fkg_amp_upper(c.m), c.m <= 0.5));
  }

  BoundEntry ci = entry("coherent_info", BoundSide::Lower, lower_q(c), true);
  ci.extrapolated = c.x > 1.0;
  r.q_p.push_back(ci);

  r.q2_k.push_back(
      entry("reverse_coherent", BoundSide::Lower, lower_q2_k(c), true));

  if (r.zero_q) {
    r.best_upper_q = 0.0;
  } else {
    double best = kInf;
    for (const BoundEntry& e : r.q_p) {
      if (!e.applicable || e.unbounded || e.side == BoundSide::Lower) continue;
      best = std::min(best, e.value);
    }
    r.best_upper_q_unbounded = std::isinf(best);
    r.best_upper_q = r.best_upper_q_unbounded ? 0.0 : best;
  }

  double lower = 0.0;
  for (const BoundEntry& e : r.q_p) {
    if (!e.applicable || e.unbounded) continue;
    if (e.side == BoundSide::Lower || e.side == BoundSide::Exact) {
      lower = std::max(lower, e.value);
    }
  }
  r.best_lower_q = r.zero_q ? 0.0 : lower;
  return r;
}

}  // namespace pigbc
