#include "wiretap/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace wiretap {

namespace {

constexpr int kGammaGridPoints = 1000;   // dense grid on (0, 0.5]
constexpr double kGammaTol = 1e-7;       // golden-section bracket width

template <class F>
double golden_max(F&& f, double a, double b, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::wyner: return "wyner";
    case Scheme::pure_feedback: return "pure_feedback";
    case Scheme::pure_feedback_repetition: return "pure_feedback_repetition";
    case Scheme::mixed_feedback: return "mixed_feedback";
    case Scheme::reversed_feedback: return "reversed_feedback";
  }
  return "unknown";
}

BitsPerUse wyner_secrecy_capacity(CrossoverProb eps_f, CrossoverProb delta_f) {
  return std::max(binary_entropy(delta_f.value()) - binary_entropy(eps_f.value()), 0.0);
}

SchemeReport wyner_report(const SystemChannels& ch) {
  SchemeReport rep;
  rep.scheme = Scheme::wyner;
  rep.overall_rate = wyner_secrecy_capacity(ch.eps_f, ch.delta_f);
  rep.detail["C_AB"] = capacity(ch.eps_f);
  rep.detail["C_AE"] = capacity(ch.delta_f);
  return rep;
}

UnscaledRates unscaled_rates(CrossoverProb eps_b, CrossoverProb delta_b) {
  const double he = binary_entropy(eps_b.value());
  return {1.0 - he, binary_entropy(concat(eps_b, delta_b).value()) - he};
}

SchemeReport pure_feedback_rate(const SystemChannels& ch,
                                std::optional<double> forwarding_rate) {
  const double c_ab = capacity(ch.eps_f);
  double f = c_ab;
  if (forwarding_rate) {
    f = *forwarding_rate;
    if (!(f > 0.0 && f <= c_ab)) {
      throw std::invalid_argument("forwarding rate must lie in (0, C_AB]");
    }
  }
  const UnscaledRates u = unscaled_rates(ch.eps_b, ch.delta_b);
  SchemeReport rep;
  rep.scheme = Scheme::pure_feedback;
  rep.overall_rate = u.secrecy * f / (f + 1.0);
  rep.detail["R_t_u"] = u.transmission;
  rep.detail["R_s_u"] = u.secrecy;
  rep.detail["C_AB"] = c_ab;
  rep.detail["forwarding_rate"] = f;
  return rep;
}

CrossoverProb repetition_equivalent(CrossoverProb p, int n_rep) {
  if (n_rep < 1 || n_rep % 2 == 0) {
    throw std::invalid_argument(
        "repetition order must be a positive odd integer (even orders are "
        "strictly dominated)");
  }
  const double pv = p.value();
  const int k = (n_rep - 1) / 2;
  double sum = 0.0;
  for (int i = k + 1; i <= n_rep; ++i) {
    sum += binomial(n_rep, i) * std::pow(pv, i) * std::pow(1.0 - pv, n_rep - i);
  }
  return CrossoverProb(std::min(sum, 0.5));
}

SchemeReport repetition_feedback_rate(const SystemChannels& ch, int n_rep) {
  const CrossoverProb eb_eff = repetition_equivalent(ch.eps_b, n_rep);
  const CrossoverProb db_eff = repetition_equivalent(ch.delta_b, n_rep);
  const UnscaledRates u = unscaled_rates(eb_eff, db_eff);
  const double c_ab = capacity(ch.eps_f);
  SchemeReport rep;
  rep.scheme = Scheme::pure_feedback_repetition;
  rep.overall_rate = u.secrecy * c_ab / (n_rep * c_ab + 1.0);
  rep.detail["R_s_u"] = u.secrecy;
  rep.detail["C_AB"] = c_ab;
  rep.detail["n_rep"] = n_rep;
  rep.detail["eps_b_eff"] = eb_eff.value();
  rep.detail["delta_b_eff"] = db_eff.value();
  return rep;
}

SchemeReport optimize_repetition(const SystemChannels& ch, int n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  SchemeReport best;
  bool have = false;
  for (int n = 1; n <= n_max; n += 2) {
    SchemeReport cand = repetition_feedback_rate(ch, n);
    if (!have || cand.overall_rate > best.overall_rate) {
      best = cand;
      have = true;
    }
  }
  best.detail["n_star"] = best.detail["n_rep"];
  return best;
}

MixedComponentRates mixed_component_rates(CrossoverProb gamma,
                                          CrossoverProb eps_f,
                                          CrossoverProb delta_f) {
  if (!(eps_f.value() < delta_f.value())) {
    throw std::invalid_argument(
        "mixed scheme requires eps_f < delta_f (Bob's forward channel less noisy)");
  }
  const double hgd = binary_entropy(concat(gamma, delta_f).value());
  const double hge = binary_entropy(concat(gamma, eps_f).value());
  const double gap = binary_entropy(delta_f.value()) - binary_entropy(eps_f.value());
  return {1.0 - hgd, gap - (hgd - hge)};
}

SchemeReport mixed_feedback_rate(const SystemChannels& ch) {
  if (!(ch.eps_f.value() < ch.delta_f.value())) {
    throw std::invalid_argument(
        "mixed scheme requires eps_f < delta_f (Bob's forward channel less noisy)");
  }
  const UnscaledRates u = unscaled_rates(ch.eps_b, ch.delta_b);
  const double r_s_u = u.secrecy;
  const double c_ab = capacity(ch.eps_f);
  const double c_ae = capacity(ch.delta_f);

  const auto objective = [&](double g) {
    const MixedComponentRates c =
        mixed_component_rates(CrossoverProb(g), ch.eps_f, ch.delta_f);
    return (c.secret + c.common * r_s_u) / (c.common + 1.0);
  };

  // Dense grid on (0, 0.5]; gamma = 0 is excluded and handled by the
  // explicit pure-feedback branch below.
  std::vector<double> val(kGammaGridPoints + 1, 0.0);
  int best_i = 1;
  for (int i = 1; i <= kGammaGridPoints; ++i) {
    val[i] = objective(0.5 * i / kGammaGridPoints);
    if (val[i] > val[best_i]) best_i = i;
  }
  int n_local_max = 0;
  for (int i = 1; i <= kGammaGridPoints; ++i) {
    const double left = (i > 1) ? val[i - 1] : -1.0;
    const double right = (i < kGammaGridPoints) ? val[i + 1] : -1.0;
    if (val[i] > left && val[i] > right) ++n_local_max;
  }

  const double step = 0.5 / kGammaGridPoints;
  const double lo = std::max(0.5 * best_i / kGammaGridPoints - step, step * 0.5);
  const double hi = std::min(0.5 * best_i / kGammaGridPoints + step, 0.5);
  const double g_star = golden_max(objective, lo, hi, kGammaTol);
  double mixed_val = objective(g_star);
  double mixed_gamma = g_star;
  if (val[best_i] > mixed_val) {  // refinement never loses to the grid
    mixed_val = val[best_i];
    mixed_gamma = 0.5 * best_i / kGammaGridPoints;
  }

  const SchemeReport pure = pure_feedback_rate(ch);

  SchemeReport rep;
  rep.scheme = Scheme::mixed_feedback;
  rep.detail["R_s_u"] = r_s_u;
  rep.detail["C_AB"] = c_ab;
  rep.detail["C_AE"] = c_ae;
  rep.detail["C_s"] = wyner_secrecy_capacity(ch.eps_f, ch.delta_f);
  rep.detail["n_local_maxima"] = n_local_max;
  if (mixed_val >= pure.overall_rate) {
    const MixedComponentRates c =
        mixed_component_rates(CrossoverProb(mixed_gamma), ch.eps_f, ch.delta_f);
    rep.overall_rate = mixed_val;
    rep.detail["gamma_star"] = mixed_gamma;
    rep.detail["R_c_star"] = c.common;
    rep.detail["R_e_star"] = c.secret;
  } else {
    rep.overall_rate = pure.overall_rate;
    rep.detail["pure_branch"] = 1.0;
  }
  return rep;
}

SchemeReport reversed_key_rate(const SystemChannels& ch) {
  const SystemChannels sw = ch.swapped();
  if (ch.eps_b.value() < ch.delta_b.value()) return mixed_feedback_rate(sw);
  return pure_feedback_rate(sw);
}

BitsPerUse key_scaled_rate(double c_ab, double c_f, double r_s_p) {
  if (r_s_p <= 0.0) return 0.0;
  return c_ab * r_s_p / (c_f + r_s_p);
}

SchemeReport reversed_feedback_rate(const SystemChannels& ch) {
  const SchemeReport key = reversed_key_rate(ch);
  const double c_ab = capacity(ch.eps_f);
  const double c_ae = capacity(ch.delta_f);
  const double c_f = std::min(c_ab, c_ae);
  SchemeReport rep;
  rep.scheme = Scheme::reversed_feedback;
  rep.overall_rate = key_scaled_rate(c_ab, c_f, key.overall_rate);
  rep.detail["R_s_p"] = key.overall_rate;
  rep.detail["C_AB"] = c_ab;
  rep.detail["C_AE"] = c_ae;
  rep.detail["C_F"] = c_f;
  if (auto it = key.detail.find("gamma_star"); it != key.detail.end()) {
    rep.detail["gamma_star"] = it->second;
  }
  return rep;
}

BitsPerUse full_encryption_rate(const SystemChannels& ch) {
  const double c_ab = capacity(ch.eps_f);
  return key_scaled_rate(c_ab, c_ab, reversed_key_rate(ch).overall_rate);
}

SchemeReport best_scheme(const SystemChannels& ch) {
  const double c_ab = capacity(ch.eps_f);
  const double c_ae = capacity(ch.delta_f);
  const double c_ba = capacity(ch.eps_b);
  const double c_be = capacity(ch.delta_b);

  std::vector<SchemeReport> candidates;
  if (c_ab > c_ae) {
    candidates.push_back(mixed_feedback_rate(ch));
  } else {
    candidates.push_back(pure_feedback_rate(ch));
  }
  const bool reversed_applicable = c_ba > c_be || c_ab > c_ae;
  if (reversed_applicable) candidates.push_back(reversed_feedback_rate(ch));

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].overall_rate > candidates[best].overall_rate) best = i;
  }
  SchemeReport rep = candidates[best];
  rep.detail["C_BA"] = c_ba;
  rep.detail["C_BE"] = c_be;
  rep.detail["C_AB"] = c_ab;
  rep.detail["C_AE"] = c_ae;
  return rep;
}

}  // namespace wiretap
