#include "pigbc/improve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pigbc/bounds.hpp"
#include "pigbc/regions.hpp"

namespace pigbc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEpsGuard = 1e-9;   // guard for objectives diverging at eps = 0
constexpr double kGoldenWidth = 1e-10;

void require_improvable(const Channel& c) {
  if (c.x < 0.5 || c.m / m_eb(c.x) > 0.5 + 1e-12) {
    throw std::domain_error(
        "improved bounds require x >= 1/2 and M <= min{1,x}/2 (outside the AD interior)");
  }
}

struct ScalarMin {
  double arg = 0.0;
  double value = kInf;
  int iterations = 0;
  bool tolerance_met = true;
};

// Uniform scan to bracket, then golden-section refinement. The objectives are
// smooth but not proven unimodal, so the scan stage is kept deterministic.
ScalarMin minimize_scalar(const std::function<double(double)>& f, double lo, double hi,
                          int grid, double width_tol) {
  ScalarMin best;
  if (hi <= lo) {
    best.arg = lo;
    best.value = f(lo);
    return best;
  }
  grid = std::max(grid, 3);
  int best_i = 0;
  for (int i = 0; i < grid; ++i) {
    const double t = lo + (hi - lo) * i / (grid - 1);
    const double v = f(t);
    if (v < best.value) {
      best.value = v;
      best.arg = t;
      best_i = i;
    }
  }
  double a = lo + (hi - lo) * std::max(0, best_i - 1) / (grid - 1);
  double b = lo + (hi - lo) * std::min(grid - 1, best_i + 1) / (grid - 1);

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = b - phi * (b - a);
  double c2 = a + phi * (b - a);
  double f1 = f(c1);
  double f2 = f(c2);
  int iters = 0;
  const int max_iters = 200;
  while (b - a > width_tol && iters < max_iters) {
    if (f1 <= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - phi * (b - a);
      f1 = f(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + phi * (b - a);
      f2 = f(c2);
    }
    ++iters;
  }
  const double mid = (a + b) / 2.0;
  const double fm = f(mid);
  if (fm < best.value) {
    best.value = fm;
    best.arg = mid;
  }
  if (f1 < best.value) {
    best.value = f1;
    best.arg = c1;
  }
  if (f2 < best.value) {
    best.value = f2;
    best.arg = c2;
  }
  best.iterations = iters;
  best.tolerance_met = (b - a) <= width_tol;
  return best;
}

}  // namespace

double m_max_gt(const Channel& c) {
  require_improvable(c);
  return c.m / m_eb(c.x);
}

ImprovedBound improved_q2(const Channel& c) {
  const double cap = m_max_gt(c);
  ImprovedBound out;
  out.value = fkg_amp_upper(cap);
  out.argmin = make_channel(1.0, cap);
  out.branch = ImproveBranch::Q2;
  return out;
}

ImprovedBound improved_q1(const Channel& c, double tol) {
  require_improvable(c);
  if (tol <= 0.0) throw std::domain_error("improved_q1: tol must be positive");

  ImprovedBound out;
  if (c.x >= 1.0 && c.m == 0.0) {
    // Degenerate interval x' in [1-M, 1]: the attenuator FKG bound diverges.
    out.value = kInf;
    out.argmin = make_channel(1.0, 0.0);
    out.branch = ImproveBranch::Q1_1;
    return out;
  }

  if (c.x < 1.0) {
    const auto obj1 = [&](double eps) {
      const double eta = c.x - eps * c.m;
      return fkg_att_upper(eta, (1.0 - eps) * c.m / (1.0 - c.x + eps * c.m));
    };
    const ScalarMin m1 = minimize_scalar(obj1, 0.0, 1.0, 129, kGoldenWidth);

    out.value = m1.value;
    out.argmin = make_channel(c.x - m1.arg * c.m, (1.0 - m1.arg) * c.m);
    out.branch = ImproveBranch::Q1_1;
    out.iterations = m1.iterations;
    out.tolerance_met = m1.tolerance_met;

    if (c.x < 1.0 - kEpsGuard) {
      const auto obj2 = [&](double xp) {
        return fkg_att_upper(xp, xp * c.m / ((1.0 - xp) * c.x));
      };
      const ScalarMin m2 = minimize_scalar(obj2, c.x, 1.0 - kEpsGuard, 129, kGoldenWidth);
      if (m2.value < out.value) {
        out.value = m2.value;
        out.argmin = make_channel(m2.arg, m2.arg * c.m / c.x);
        out.branch = ImproveBranch::Q1_2;
        out.iterations += m2.iterations;
        out.tolerance_met = out.tolerance_met && m2.tolerance_met;
      }
    }
    return out;
  }

  // x >= 1: the interval x' in [1-M, 1] parametrized by eps; the objective's
  // N = (1-eps)/eps diverges at eps -> 0 but the bound is decreasing in N,
  // so a small positive floor is benign.
  const auto obj = [&](double eps) {
    return fkg_att_upper(1.0 - eps * c.m, (1.0 - eps) / eps);
  };
  const ScalarMin m1 = minimize_scalar(obj, kEpsGuard, 1.0, 129, kGoldenWidth);
  out.value = m1.value;
  out.argmin = make_channel(1.0 - m1.arg * c.m, (1.0 - m1.arg) * c.m);
  out.branch = ImproveBranch::Q1_1;
  out.iterations = m1.iterations;
  out.tolerance_met = m1.tolerance_met;
  return out;
}

ImprovedBound improved_upper(const Channel& c, double tol) {
  const ImprovedBound q1 = improved_q1(c, tol);
  const ImprovedBound q2 = improved_q2(c);
  return q2.value < q1.value ? q2 : q1;
}

namespace {

struct BorderDomain {
  double lo;
  double hi;
};

BorderDomain high_ground_span(const Channel& c) {
  const double lo = std::max(0.0, c.x <= 1.0 ? c.x - c.m : 1.0 - c.m);
  double hi;
  if (c.x <= 1.0) {
    hi = c.m < c.x ? c.x / (c.x - c.m) : kInf;
  } else {
    hi = c.m < 1.0 ? c.x / (1.0 - c.m) : kInf;
  }
  if (!std::isfinite(hi)) hi = std::max(4.0, 2.0 * c.x + 2.0);
  return BorderDomain{lo, hi};
}

// Sampled pre-check that f is non-increasing in M at fixed x, which reduces
// the region extremum to the border curve.
bool monotone_in_m(const BoundFunction& f, const Channel& c, double border_hint) {
  const double xs[] = {std::max(0.05, c.x * 0.5), c.x, c.x * 1.5 + 0.1};
  for (double xp : xs) {
    const double m_top = std::max(border_hint, 0.1);
    double prev = f(make_channel(xp, 0.0));
    for (int k = 1; k <= 4; ++k) {
      const double cur = f(make_channel(xp, m_top * k / 4.0));
      if (cur > prev + 1e-9) return false;
      prev = cur;
    }
  }
  return true;
}

}  // namespace

ImprovedBound minimize_over_high_ground(const Channel& c, const BoundFunction& f,
                                        int grid, double tol) {
  if (c.x == 0.0 || classify(c).regime == EbRegime::DeepEb) {
    throw std::domain_error("minimize_over_high_ground: degenerate (deep-EB) region");
  }
  if (grid < 2) throw std::domain_error("minimize_over_high_ground: grid must be >= 2");

  const BorderDomain dom = high_ground_span(c);
  const auto border = [&](double xp) {
    return std::min(border_f1(c, xp), border_f2(c, xp));
  };

  ImprovedBound out;
  out.branch = ImproveBranch::Combined;

  if (monotone_in_m(f, c, c.m + 0.5)) {
    const auto g = [&](double xp) {
      const double b = border(xp);
      if (b < -1e-12) return kInf;  // outside the region
      return f(make_channel(xp, std::max(0.0, b)));
    };
    const ScalarMin m = minimize_scalar(g, dom.lo, dom.hi, grid, kGoldenWidth);
    out.value = m.value;
    out.argmin = make_channel(m.arg, std::max(0.0, border(m.arg)));
    out.iterations = m.iterations;
    out.tolerance_met = m.tolerance_met;
  } else {
    // Fallback: full 2-D scan of the polytope.
    out.value = kInf;
    for (int i = 0; i < grid; ++i) {
      const double xp = dom.lo + (dom.hi - dom.lo) * i / (grid - 1);
      const double b = border(xp);
      if (b < 0.0) continue;
      for (int j = 0; j < grid; ++j) {
        const double mp = b * j / (grid - 1);
        const double v = f(make_channel(xp, mp));
        if (v < out.value) {
          out.value = v;
          out.argmin = make_channel(xp, mp);
        }
      }
    }
    out.tolerance_met = false;  // grid-limited accuracy
  }

  const double at_ref = f(c);
  if (at_ref < out.value) {  // the reference sits on the border (contact point)
    out.value = at_ref;
    out.argmin = c;
  }
  (void)tol;
  return out;
}

ImprovedBound maximize_over_low_ground(const Channel& c, const BoundFunction& f,
                                       int grid, double tol) {
  if (c.x == 0.0) {
    throw std::domain_error("maximize_over_low_ground: degenerate reference x = 0");
  }
  if (grid < 2) throw std::domain_error("maximize_over_low_ground: grid must be >= 2");

  const double hi = std::max(4.0, 2.0 * c.x + 2.0);
  const auto border = [&](double xp) {
    return std::max(0.0, std::max(border_f1(c, xp), border_f2(c, xp)));
  };

  ImprovedBound out;
  out.branch = ImproveBranch::Combined;

  if (monotone_in_m(f, c, c.m + 0.5)) {
    const auto g = [&](double xp) { return -f(make_channel(xp, border(xp))); };
    const ScalarMin m = minimize_scalar(g, 0.0, hi, grid, kGoldenWidth);
    out.value = -m.value;
    out.argmin = make_channel(m.arg, border(m.arg));
    out.iterations = m.iterations;
    out.tolerance_met = m.tolerance_met;
  } else {
    out.value = -kInf;
    const double span = c.m + 1.0;
    for (int i = 0; i < grid; ++i) {
      const double xp = hi * i / (grid - 1);
      const double b = border(xp);
      for (int j = 0; j < grid; ++j) {
        const double mp = b + span * j / (grid - 1);
        const double v = f(make_channel(xp, mp));
        if (v > out.value) {
          out.value = v;
          out.argmin = make_channel(xp, mp);
        }
      }
    }
    out.tolerance_met = false;
  }

  const double at_ref = f(c);
  if (at_ref > out.value) {
    out.value = at_ref;
    out.argmin = c;
  }
  (void)tol;
  return out;
}

}  // namespace pigbc
