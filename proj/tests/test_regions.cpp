#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "pigbc/regions.hpp"

using namespace pigbc;

TEST_CASE("EB and AD thresholds") {
  CHECK(m_eb(0.3) == 0.3);
  CHECK(m_eb(1.0) == 1.0);
  CHECK(m_eb(2.5) == 1.0);
  CHECK(m_ad(0.3) == 0.0);
  CHECK(m_ad(0.5) == 0.0);
  CHECK(m_ad(0.8) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(m_ad(1.7) == 0.5);
  CHECK_THROWS_AS(m_eb(-0.1), std::domain_error);
  CHECK_THROWS_AS(m_ad(-0.1), std::domain_error);
}

TEST_CASE("classify verdicts") {
  const RegionVerdict v = classify({0.5, 0.7});
  CHECK(v.is_eb);
  CHECK(v.is_ad);
  CHECK(v.regime == EbRegime::DeepEb);

  const RegionVerdict b = classify({0.5, 0.5});  // exactly on the EB border
  CHECK(b.is_eb);
  CHECK(b.regime == EbRegime::NonEbOrBorder);

  const RegionVerdict g = classify({0.8, 0.1});
  CHECK_FALSE(g.is_eb);
  CHECK_FALSE(g.is_ad);
}

TEST_CASE("border corner values, attenuator reference") {
  const Channel ref{0.6, 0.1};
  CHECK(std::abs(border_f1(ref, 0.5)) <= 1e-12);
  CHECK(std::abs(border_f1(ref, 1.0) - 0.5) <= 1e-12);
  CHECK(std::abs(border_f2(ref, 1.0) - 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(border_f2(ref, 1.2)) <= 1e-12);
}

TEST_CASE("border corner values, amplifier reference") {
  const Channel ref{1.15, 0.1};
  CHECK(std::abs(border_f1(ref, 0.9)) <= 1e-12);                // corner A
  CHECK(std::abs(border_f1(ref, 1.0) - 0.1) <= 1e-12);          // corner B
  CHECK(std::abs(border_f2(ref, 1.0) - 0.25 / 1.15) <= 1e-12);  // corner C
  CHECK(std::abs(border_f2(ref, 1.15 / 0.9)) <= 1e-12);         // corner D
}

TEST_CASE("table2 pieces coincide with f1/f2") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_real_distribution<double> u1(1.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const Channel att{0.3 + 0.6 * u01(rng), 0.25 * u01(rng)};
    const double xl = u01(rng);
    const double xh = u1(rng);
    CHECK(std::abs(table2_border(att, 1, xl) - border_f2(att, xl)) <= 1e-12);
    CHECK(std::abs(table2_border(att, 2, xl) - border_f1(att, xl)) <= 1e-12);
    CHECK(std::abs(table2_border(att, 3, xh) - border_f2(att, xh)) <= 1e-12);
    CHECK(std::abs(table2_border(att, 4, xh) - border_f1(att, xh)) <= 1e-12);

    const Channel amp{1.0 + u01(rng), 0.8 * u01(rng)};
    CHECK(std::abs(table2_border(amp, 1, xh) - border_f1(amp, xh)) <= 1e-12);
    CHECK(std::abs(table2_border(amp, 2, xh) - border_f2(amp, xh)) <= 1e-12);
    CHECK(std::abs(table2_border(amp, 3, xl) - border_f1(amp, xl)) <= 1e-12);
    CHECK(std::abs(table2_border(amp, 4, xl) - border_f2(amp, xl)) <= 1e-12);
  }
  CHECK_THROWS_AS(table2_border({0.6, 0.1}, 1, 1.5), std::domain_error);
  CHECK_THROWS_AS(table2_border({0.6, 0.1}, 3, 0.5), std::domain_error);
  CHECK_THROWS_AS(table2_border({0.6, 0.1}, 5, 0.5), std::domain_error);
}

TEST_CASE("two-element attenuator borders sit on f1/f2") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  for (int i = 0; i < 500; ++i) {
    const double eta = u01(rng);
    const double n = u01(rng);
    const AttenuatorBorders b = two_element_borders_att(eta, n);
    const Channel ref{eta, (1.0 - eta) * n};
    const double ep = u01(rng);
    const double gp = 1.0 + u01(rng);
    CHECK(std::abs((1.0 - ep) * b.n1(ep) - border_f2(ref, ep)) <= 1e-12);
    CHECK(std::abs((1.0 - ep) * b.n2(ep) - border_f1(ref, ep)) <= 1e-12);
    CHECK(std::abs((gp - 1.0) * b.n3(gp) - border_f2(ref, gp)) <= 1e-12);
    CHECK(std::abs((gp - 1.0) * b.n4(gp) - border_f1(ref, gp)) <= 1e-12);
  }
  CHECK_THROWS_AS(two_element_borders_att(0.0, 0.1), std::domain_error);
  CHECK_THROWS_AS(two_element_borders_att(0.5, -0.1), std::domain_error);
}

TEST_CASE("two-element amplifier borders sit on f1/f2") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u01(0.05, 0.95);
  for (int i = 0; i < 500; ++i) {
    const double g = 1.05 + u01(rng);
    const double n = u01(rng);
    const AmplifierBorders b = two_element_borders_amp(g, n);
    const Channel ref{g, (g - 1.0) * n};
    const double ep = u01(rng);
    const double gp = 1.0 + u01(rng);
    CHECK(std::abs((gp - 1.0) * b.n1(gp) - border_f1(ref, gp)) <= 1e-12);
    CHECK(std::abs((gp - 1.0) * b.n2(gp) - border_f2(ref, gp)) <= 1e-12);
    CHECK(std::abs((1.0 - ep) * b.n3(ep) - border_f1(ref, ep)) <= 1e-12);
    CHECK(std::abs((1.0 - ep) * b.n4(ep) - border_f2(ref, ep)) <= 1e-12);
  }
  CHECK_THROWS_AS(two_element_borders_amp(1.0, 0.1), std::domain_error);
}

namespace {

std::mt19937_64 g_rng(24);

Channel random_non_eb(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> ux(0.05, 2.5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double x = ux(rng);
  return make_channel(x, 0.95 * u01(rng) * m_eb(x));
}

Channel random_in_low_ground(std::mt19937_64& rng, const Channel& ref) {
  std::uniform_real_distribution<double> ux(0.0, 2.5);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (;;) {
    const double xp = ux(rng);
    if (classify(ref).regime == EbRegime::DeepEb || ref.x == 0.0) {
      // Strict-EB targets.
      return make_channel(xp, m_eb(xp) + 0.01 + u01(rng));
    }
    const double base = std::max(border_f1(ref, xp), border_f2(ref, xp));
    const double mp = std::max(0.0, base) + u01(rng);
    const Channel p = make_channel(xp, mp);
    if (in_low_ground(ref, p)) return p;
  }
}

}  // namespace

TEST_CASE("trivial inclusions and deep-EB conventions") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int i = 0; i < 500; ++i) {
    const Channel ref = random_non_eb(rng);
    CHECK(in_low_ground(ref, make_channel(0.0, u(rng))));  // absorbing channels
    CHECK(in_low_ground(ref, ref));                        // contact point
    CHECK(in_high_ground(ref, ref));
  }
  const Channel deep{0.5, 0.9};
  REQUIRE(classify(deep).regime == EbRegime::DeepEb);
  for (int i = 0; i < 500; ++i) {
    const Channel p = make_channel(u(rng), u(rng));
    CHECK(in_high_ground(deep, p));  // high ground is everything
    CHECK(in_low_ground(deep, p) == (p.x == 0.0 || p.m > m_eb(p.x)));
  }
}

TEST_CASE("complementarity of membership tests") {
  std::mt19937_64 rng(26);
  std::uniform_real_distribution<double> ux(0.0, 2.5);
  std::uniform_real_distribution<double> um(0.0, 1.5);
  for (int i = 0; i < 10000; ++i) {
    const Channel a = make_channel(ux(rng), um(rng));
    const Channel b = make_channel(ux(rng), um(rng));
    CHECK(complementarity_check(a, b));
  }
}

TEST_CASE("low/high-ground nesting along chains") {
  for (int i = 0; i < 1000; ++i) {
    const Channel a = random_non_eb(g_rng);
    const Channel b = random_in_low_ground(g_rng, a);
    const Channel c = random_in_low_ground(g_rng, b);
    CHECK(in_low_ground(a, c));  // L_b subset of L_a
    // H_a subset of H_b: sample a high-ground point of a.
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double xp = u01(g_rng) * 2.0;
    const double top = std::min(border_f1(a, xp), border_f2(a, xp));
    if (top >= 0.0) {
      const Channel h = make_channel(xp, top * u01(g_rng));
      CHECK(in_high_ground(a, h));
      CHECK(in_high_ground(b, h));
    }
  }
}

TEST_CASE("witness soundness on random low-ground pairs") {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int deep_count = 0;
  for (int i = 0; i < 1000; ++i) {
    Channel ref = random_non_eb(rng);
    if (i % 5 == 0) {  // force deep-EB references regularly
      ref = make_channel(ref.x, m_eb(ref.x) + 0.05 + u01(rng));
      ++deep_count;
    }
    const Channel p = random_in_low_ground(rng, ref);
    const Witness w = witness_low_ground(ref, p);
    CHECK(w.residual <= 1e-9);
    const Channel back = reconstruct(w, ref);
    CHECK(std::abs(back.x - p.x) <= 1e-9);
    CHECK(std::abs(back.m - p.m) <= 1e-9);
    if (classify(ref).regime == EbRegime::NonEbOrBorder) {
      // Single-factor construction: the unused side stays the identity.
      const Channel id{1.0, 0.0};
      CHECK_FALSE(w.mid.has_value());
      CHECK((w.pre == id || w.post == id));
    } else {
      CHECK(w.mid.has_value());
    }
  }
  CHECK(deep_count >= 100);
}

TEST_CASE("witness error handling") {
  const Channel ref{0.6, 0.1};
  CHECK_THROWS_AS(witness_low_ground(ref, {0.9, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(witness_low_ground({0.0, 0.2}, {0.5, 0.9}), std::domain_error);
}
