#include "pigbc/channel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pigbc {

Channel make_channel(double x, double m) {
  if (!std::isfinite(x) || !std::isfinite(m)) {
    throw std::domain_error("channel parameters must be finite");
  }
  if (x < 0.0 || m < 0.0) {
    throw std::domain_error("channel parameters must be non-negative (got x=" +
                            std::to_string(x) + ", M=" + std::to_string(m) + ")");
  }
  return Channel{x, m};
}

CanonicalForm to_canonical(const Channel& c) {
  if (c.x < 1.0) {
    return Attenuator{c.x, c.m / (1.0 - c.x)};
  }
  if (c.x > 1.0) {
    return Amplifier{c.x, c.m / (c.x - 1.0)};
  }
  // x = 1 is triple-degenerate; tagged as additive noise.
  return AdditiveNoise{c.m};
}

Channel from_canonical(const CanonicalForm& f) {
  if (const auto* att = std::get_if<Attenuator>(&f)) {
    return make_channel(att->eta, (1.0 - att->eta) * att->n);
  }
  if (const auto* amp = std::get_if<Amplifier>(&f)) {
    return make_channel(amp->gain, (amp->gain - 1.0) * amp->n);
  }
  return make_channel(1.0, std::get<AdditiveNoise>(f).n);
}

Channel compose(const Channel& inner, const Channel& outer) {
  const double x3 = outer.x * inner.x;
  const double corr = (std::abs(outer.x - 1.0) + outer.x * std::abs(inner.x - 1.0) -
                       std::abs(x3 - 1.0)) /
                      2.0;
  const double m3 = outer.m + outer.x * inner.m + corr;
  return make_channel(x3, m3);
}

namespace {

// Rules C3/C4 share the mean-photon-number bookkeeping 2N+1.
double photon(double n) { return 2.0 * n + 1.0; }

// E_{eta2,N2} o A_{g1,N1}  (C3.1 / C3.2, additive-noise boundary at eta2*g1 = 1)
CanonicalForm att_after_amp(const Amplifier& a1, const Attenuator& e2) {
  const double t = e2.eta * a1.gain;
  const double rhs = (1.0 - e2.eta) * photon(e2.n) + (t - e2.eta) * photon(a1.n);
  if (t < 1.0) {
    const double n3 = (rhs / (1.0 - t) - 1.0) / 2.0;
    return Attenuator{t, n3};
  }
  if (t > 1.0) {
    const double n3 = (rhs / (t - 1.0) - 1.0) / 2.0;
    return Amplifier{t, n3};
  }
  return AdditiveNoise{(1.0 - e2.eta) * (a1.n + e2.n + 1.0)};
}

// A_{g2,N2} o E_{eta1,N1}  (C4.1 / C4.2)
CanonicalForm amp_after_att(const Attenuator& e1, const Amplifier& a2) {
  const double t = a2.gain * e1.eta;
  const double rhs = (a2.gain - 1.0) * photon(a2.n) + (a2.gain - t) * photon(e1.n);
  if (t < 1.0) {
    const double n3 = (rhs / (1.0 - t) - 1.0) / 2.0;
    return Attenuator{t, n3};
  }
  if (t > 1.0) {
    const double n3 = (rhs / (t - 1.0) - 1.0) / 2.0;
    return Amplifier{t, n3};
  }
  return AdditiveNoise{(a2.gain - 1.0) * (e1.n + a2.n + 1.0)};
}

}  // namespace

CanonicalForm compose_canonical(const CanonicalForm& inner, const CanonicalForm& outer) {
  // Additive-noise operands are the degenerate x = 1 rows; fold them in via
  // the closed forms obtained from the (x, M) law with one factor at x = 1.
  if (const auto* n1 = std::get_if<AdditiveNoise>(&inner)) {
    if (const auto* n2 = std::get_if<AdditiveNoise>(&outer)) {
      return AdditiveNoise{n1->n + n2->n};
    }
    if (const auto* e2 = std::get_if<Attenuator>(&outer)) {
      return Attenuator{e2->eta, e2->n + e2->eta * n1->n / (1.0 - e2->eta)};
    }
    const auto& a2 = std::get<Amplifier>(outer);
    return Amplifier{a2.gain, a2.n + a2.gain * n1->n / (a2.gain - 1.0)};
  }
  if (const auto* n2 = std::get_if<AdditiveNoise>(&outer)) {
    if (const auto* e1 = std::get_if<Attenuator>(&inner)) {
      return Attenuator{e1->eta, e1->n + n2->n / (1.0 - e1->eta)};
    }
    const auto& a1 = std::get<Amplifier>(inner);
    return Amplifier{a1.gain, a1.n + n2->n / (a1.gain - 1.0)};
  }

  if (const auto* e1 = std::get_if<Attenuator>(&inner)) {
    if (const auto* e2 = std::get_if<Attenuator>(&outer)) {
      // C1
      const double eta3 = e2->eta * e1->eta;
      if (eta3 == 1.0) return AdditiveNoise{0.0};  // both identity
      const double n3 =
          ((1.0 - e2->eta) * e2->n + (1.0 - e1->eta) * e2->eta * e1->n) / (1.0 - eta3);
      return Attenuator{eta3, n3};
    }
    return amp_after_att(*e1, std::get<Amplifier>(outer));
  }

  const auto& a1 = std::get<Amplifier>(inner);
  if (const auto* e2 = std::get_if<Attenuator>(&outer)) {
    return att_after_amp(a1, *e2);
  }
  // C2
  const auto& a2 = std::get<Amplifier>(outer);
  const double g3 = a2.gain * a1.gain;
  if (g3 == 1.0) return AdditiveNoise{0.0};
  const double n3 =
      ((a2.gain - 1.0) * a2.n + (a1.gain - 1.0) * a2.gain * a1.n) / (g3 - 1.0);
  return Amplifier{g3, n3};
}

GaussianMoments apply_to_moments(const Channel& c, const GaussianMoments& s) {
  GaussianMoments out;
  const double scale = std::sqrt(c.x);
  const double add = 2.0 * c.m + std::abs(1.0 - c.x);
  out.mean = {scale * s.mean[0], scale * s.mean[1]};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.cov[i][j] = c.x * s.cov[i][j] + (i == j ? add : 0.0);
    }
  }
  return out;
}

Channel oracle_compose(const Channel& inner, const Channel& outer) {
  // The chained map acts as V -> x3 V + c3 I. Probe with V = 0 and V = I.
  GaussianMoments zero;
  zero.cov = {{{0.0, 0.0}, {0.0, 0.0}}};
  GaussianMoments one;

  const GaussianMoments z_out = apply_to_moments(outer, apply_to_moments(inner, zero));
  const GaussianMoments o_out = apply_to_moments(outer, apply_to_moments(inner, one));

  const double c3 = z_out.cov[0][0];
  const double x3 = o_out.cov[0][0] - c3;
  const double m3 = (c3 - std::abs(1.0 - x3)) / 2.0;
  return make_channel(x3, m3 < 0.0 ? 0.0 : m3);
}

}  // namespace pigbc
