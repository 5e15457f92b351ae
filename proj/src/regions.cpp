#include "pigbc/regions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pigbc {

double m_eb(double x) {
  if (x < 0.0 || !std::isfinite(x)) throw std::domain_error("m_eb: x must be non-negative");
  return std::min(1.0, x);
}

double m_ad(double x) {
  if (x < 0.0 || !std::isfinite(x)) throw std::domain_error("m_ad: x must be non-negative");
  return std::max(0.0, std::min(x - 0.5, 0.5));
}

RegionVerdict classify(const Channel& c) {
  RegionVerdict v;
  v.m_eb = m_eb(c.x);
  v.m_ad = m_ad(c.x);
  v.is_eb = c.m >= v.m_eb;
  v.is_ad = c.m >= v.m_ad;
  v.regime = c.m > v.m_eb ? EbRegime::DeepEb : EbRegime::NonEbOrBorder;
  return v;
}

double border_f1(const Channel& ref, double xp) {
  // Grouping keeps f1(x) = M exact at the contact point x' = x.
  return ref.m +
         ((1.0 - ref.x) * theta(1.0 - ref.x) + (xp - 1.0) * theta(1.0 - xp));
}

double border_f2(const Channel& ref, double xp) {
  if (ref.x == 0.0) throw std::domain_error("border_f2: undefined for reference x = 0");
  // Distributed form keeps f2(x) = M exact at the contact point x' = x.
  const double scale = xp / ref.x;
  return scale * ref.m + (scale * ((ref.x - 1.0) * theta(ref.x - 1.0)) -
                          (xp - 1.0) * theta(xp - 1.0));
}

bool in_low_ground(const Channel& ref, const Channel& p) {
  if (p.x == 0.0) return true;  // absorbing channels are below everything
  if (ref.x == 0.0 || classify(ref).regime == EbRegime::DeepEb) {
    return p.m > m_eb(p.x);
  }
  return p.m >= std::max(border_f1(ref, p.x), border_f2(ref, p.x));
}

bool in_high_ground(const Channel& ref, const Channel& p) {
  if (ref.x == 0.0 || classify(ref).regime == EbRegime::DeepEb) return true;
  return p.m <= std::min(border_f1(ref, p.x), border_f2(ref, p.x));
}

bool complementarity_check(const Channel& a, const Channel& b) {
  return in_high_ground(a, b) == in_low_ground(b, a);
}

double AttenuatorBorders::n1(double eta_p) const {
  return n * ((1.0 - eta) / eta) * (eta_p / (1.0 - eta_p));
}
double AttenuatorBorders::n2(double eta_p) const {
  return (n + 1.0) * ((1.0 - eta) / (1.0 - eta_p)) - 1.0;
}
double AttenuatorBorders::n3(double g_p) const {
  return n * ((1.0 - eta) / eta) * (g_p / (g_p - 1.0)) - 1.0;
}
double AttenuatorBorders::n4(double g_p) const {
  return (n + 1.0) * (1.0 - eta) / (g_p - 1.0);
}

AttenuatorBorders two_element_borders_att(double eta, double n) {
  if (!(eta > 0.0 && eta < 1.0)) {
    throw std::domain_error("two_element_borders_att: eta must lie in (0,1)");
  }
  if (n < 0.0) throw std::domain_error("two_element_borders_att: N must be non-negative");
  return AttenuatorBorders{eta, n};
}

double AmplifierBorders::n1(double g_p) const { return n * (gain - 1.0) / (g_p - 1.0); }
double AmplifierBorders::n2(double g_p) const {
  return (n + 1.0) * ((gain - 1.0) / gain) * (g_p / (g_p - 1.0)) - 1.0;
}
double AmplifierBorders::n3(double eta_p) const {
  return n * (gain - 1.0) / (1.0 - eta_p) - 1.0;
}
double AmplifierBorders::n4(double eta_p) const {
  return (n + 1.0) * ((gain - 1.0) / gain) * (eta_p / (1.0 - eta_p));
}

AmplifierBorders two_element_borders_amp(double g, double n) {
  if (!(g > 1.0)) throw std::domain_error("two_element_borders_amp: g must exceed 1");
  if (n < 0.0) throw std::domain_error("two_element_borders_amp: N must be non-negative");
  return AmplifierBorders{g, n};
}

double table2_border(const Channel& ref, int j, double xp) {
  const double x = ref.x;
  const double m = ref.m;
  auto in_unit = [&] {
    if (xp < 0.0 || xp > 1.0)
      throw std::domain_error("table2_border: x' outside [0,1] for this row");
  };
  auto above_one = [&] {
    if (xp < 1.0) throw std::domain_error("table2_border: x' must be >= 1 for this row");
  };
  if (x <= 1.0) {
    switch (j) {
      case 1: in_unit(); return m * xp / x;
      case 2: in_unit(); return m - x + xp;
      case 3: above_one(); return (m - x) * xp / x + 1.0;
      case 4: above_one(); return m + 1.0 - x;
    }
  } else {
    switch (j) {
      case 1: above_one(); return m;
      case 2: above_one(); return (m - 1.0) * xp / x + 1.0;
      case 3: in_unit(); return m - 1.0 + xp;
      case 4: in_unit(); return (m + x - 1.0) * xp / x;
    }
  }
  throw std::domain_error("table2_border: j must be in 1..4");
}

namespace {

Channel clamp_factor(double x, double m) {
  // Border points land a rounding error below zero; snap them back.
  if (m < 0.0 && m > -1e-9) m = 0.0;
  return make_channel(x, m);
}

// Solve target = factor o ref for the factor applied after ref.
Channel solve_post(const Channel& ref, const Channel& target) {
  const double xb = target.x / ref.x;
  const double corr =
      (std::abs(xb - 1.0) + xb * std::abs(ref.x - 1.0) - std::abs(target.x - 1.0)) / 2.0;
  return clamp_factor(xb, target.m - xb * ref.m - corr);
}

// Solve target = ref o factor for the factor applied before ref.
Channel solve_pre(const Channel& ref, const Channel& target) {
  const double xb = target.x / ref.x;
  const double corr =
      (std::abs(ref.x - 1.0) + ref.x * std::abs(xb - 1.0) - std::abs(target.x - 1.0)) / 2.0;
  return clamp_factor(xb, (target.m - ref.m - corr) / ref.x);
}

}  // namespace

Channel reconstruct(const Witness& w, const Channel& ref) {
  return compose(compose(w.pre, ref), w.post);
}

Witness witness_low_ground(const Channel& ref, const Channel& p) {
  if (!in_low_ground(ref, p)) {
    throw std::invalid_argument("witness_low_ground: target is not in the low-ground region");
  }
  if (ref.x == 0.0) {
    throw std::domain_error("witness_low_ground: degenerate reference x = 0");
  }

  Witness w;
  if (p.x == 0.0) {
    // Absorbing target: a post-factor {0, M'} erases the reference entirely.
    w.post = make_channel(0.0, p.m);
  } else if (classify(ref).regime == EbRegime::NonEbOrBorder) {
    if (ref.x <= 1.0) {
      if (p.x <= ref.x) {
        w.post = solve_post(ref, p);  // target on/above the f2 side
      } else {
        const double f1 = border_f1(ref, p.x);
        w.pre = clamp_factor(p.x / ref.x, (p.m - f1) / ref.x);
      }
    } else {
      if (p.x >= ref.x) {
        w.pre = clamp_factor(p.x / ref.x, (p.m - ref.m) / ref.x);
      } else {
        w.post = clamp_factor(p.x / ref.x, p.m - border_f2(ref, p.x));
      }
    }
  } else {
    // Deep-EB regime: route through an intermediate point on the reference's
    // f2 border, small enough that the target sits above the intermediate's
    // own low-ground border. Both legs are single-factor constructions.
    const double gap = p.m - m_eb(p.x);
    const double lift = ref.m + std::max(ref.x - 1.0, 0.0);
    const double xpp = std::min(ref.x, 1.0) * std::min(0.5, gap / (lift + 1.0));
    const Channel post1 = make_channel(xpp / ref.x, 0.0);
    const Channel mid = compose(ref, post1);  // lands exactly on (x'', M'')
    const Channel pre2 = solve_pre(mid, p);
    w.post = post1;
    w.pre = pre2;
    w.mid = mid;
  }

  const Channel back = reconstruct(w, ref);
  w.residual = std::max(std::abs(back.x - p.x), std::abs(back.m - p.m));
  return w;
}

}  // namespace pigbc
