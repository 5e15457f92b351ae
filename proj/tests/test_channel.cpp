#include <cmath>
#include <random>
#include <stdexcept>

#include <doctest.h>

#include "pigbc/channel.hpp"

using namespace pigbc;

namespace {

Channel random_channel(std::mt19937_64& rng, double x_max = 3.0, double m_max = 2.0) {
  std::uniform_real_distribution<double> ux(0.0, x_max);
  std::uniform_real_distribution<double> um(0.0, m_max);
  return make_channel(ux(rng), um(rng));
}

}  // namespace

TEST_CASE("make_channel rejects invalid parameters") {
  CHECK_THROWS_AS(make_channel(-1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(make_channel(0.5, -0.1), std::domain_error);
  CHECK_THROWS_AS(make_channel(std::nan(""), 0.0), std::domain_error);
  CHECK_THROWS_AS(make_channel(0.5, std::numeric_limits<double>::infinity()),
                  std::domain_error);
  CHECK(make_channel(0.0, 0.0) == Channel{0.0, 0.0});
}

TEST_CASE("canonical form tagging and round trip") {
  CHECK(std::holds_alternative<Attenuator>(to_canonical({0.5, 0.2})));
  CHECK(std::holds_alternative<AdditiveNoise>(to_canonical({1.0, 0.2})));
  CHECK(std::holds_alternative<Amplifier>(to_canonical({1.5, 0.2})));

  const auto att = std::get<Attenuator>(to_canonical({0.6, 0.1}));
  CHECK(att.eta == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(att.n == doctest::Approx(0.25).epsilon(1e-15));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Channel c = random_channel(rng);
    const Channel back = from_canonical(to_canonical(c));
    CHECK(std::abs(back.x - c.x) <= 1e-13);
    CHECK(std::abs(back.m - c.m) <= 1e-13);
  }
}

TEST_CASE("compose closed form: frozen value and identity") {
  const Channel c3 = compose({0.8, 0.1}, {1.5, 0.2});
  CHECK(c3.x == doctest::Approx(1.2000000000000002).epsilon(1e-15));
  CHECK(c3.m == doctest::Approx(0.6499999999999999).epsilon(1e-15));

  const Channel id{1.0, 0.0};
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const Channel c = random_channel(rng);
    CHECK(compose(c, id) == c);
    CHECK(compose(id, c) == c);
  }
}

TEST_CASE("compose is associative") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 3000; ++i) {
    const Channel a = random_channel(rng);
    const Channel b = random_channel(rng);
    const Channel c = random_channel(rng);
    const Channel left = compose(compose(a, b), c);
    const Channel right = compose(a, compose(b, c));
    CHECK(std::abs(left.x - right.x) <= 1e-12);
    CHECK(std::abs(left.m - right.m) <= 1e-12);
  }
}

TEST_CASE("compose agrees with the moment-map oracle") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 10000; ++i) {
    const Channel a = random_channel(rng);
    const Channel b = random_channel(rng);
    const Channel direct = compose(a, b);
    const Channel oracle = oracle_compose(a, b);
    CHECK(std::abs(direct.x - oracle.x) <= 1e-12);
    CHECK(std::abs(direct.m - oracle.m) <= 1e-12);
  }
}

TEST_CASE("compose_canonical agrees with compose on all tag pairs") {
  std::mt19937_64 rng(15);
  // Forced tag combinations: att/add/amp in each slot.
  const double xs[] = {0.4, 1.0, 1.7};
  std::uniform_real_distribution<double> um(0.0, 2.0);
  for (int i = 0; i < 3000; ++i) {
    for (double xa : xs) {
      for (double xb : xs) {
        const Channel a = make_channel(xa, um(rng));
        const Channel b = make_channel(xb, um(rng));
        const Channel direct = compose(a, b);
        const Channel tagged =
            from_canonical(compose_canonical(to_canonical(a), to_canonical(b)));
        CHECK(std::abs(direct.x - tagged.x) <= 1e-12);
        CHECK(std::abs(direct.m - tagged.m) <= 1e-12);
      }
    }
  }
}

TEST_CASE("attenuator after amplifier hits the additive-noise boundary") {
  // eta2 * g1 = 1 exactly.
  const CanonicalForm f =
      compose_canonical(Amplifier{2.0, 0.3}, Attenuator{0.5, 0.2});
  REQUIRE(std::holds_alternative<AdditiveNoise>(f));
  CHECK(std::get<AdditiveNoise>(f).n == doctest::Approx(0.75).epsilon(1e-15));

  const Channel direct =
      compose(from_canonical(Amplifier{2.0, 0.3}), from_canonical(Attenuator{0.5, 0.2}));
  CHECK(direct.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(direct.m == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("amplifier after attenuator hits the additive-noise boundary") {
  const CanonicalForm f =
      compose_canonical(Attenuator{0.25, 0.1}, Amplifier{4.0, 0.05});
  REQUIRE(std::holds_alternative<AdditiveNoise>(f));
  CHECK(std::get<AdditiveNoise>(f).n == doctest::Approx(3.0 * 1.15).epsilon(1e-15));
}

TEST_CASE("apply_to_moments acts affinely on the covariance") {
  GaussianMoments vac;
  const GaussianMoments out = apply_to_moments({0.5, 0.2}, vac);
  CHECK(out.cov[0][0] == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(out.cov[1][1] == doctest::Approx(1.4).epsilon(1e-15));
  CHECK(out.cov[0][1] == 0.0);
  CHECK(out.mean[0] == 0.0);

  GaussianMoments displaced;
  displaced.mean = {2.0, -1.0};
  const GaussianMoments d = apply_to_moments({4.0, 0.0}, displaced);
  CHECK(d.mean[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(d.mean[1] == doctest::Approx(-2.0).epsilon(1e-15));
  CHECK(d.cov[0][0] == doctest::Approx(4.0 + 3.0).epsilon(1e-15));
}
