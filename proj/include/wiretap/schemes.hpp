#pragma once

#include <map>
#include <optional>
#include <string>

#include "wiretap/entropy.hpp"

namespace wiretap {

// The four crossover probabilities of the system: forward channels from
// Alice to Bob (eps_f) and to Eve (delta_f), feedback channels from Bob to
// Alice (eps_b) and to Eve (delta_b).
struct SystemChannels {
  CrossoverProb eps_f;
  CrossoverProb delta_f;
  CrossoverProb eps_b;
  CrossoverProb delta_b;

  // Forward/feedback roles exchanged: eps_f <-> eps_b, delta_f <-> delta_b.
  SystemChannels swapped() const { return {eps_b, delta_b, eps_f, delta_f}; }
};

enum class Scheme {
  wyner,
  pure_feedback,
  pure_feedback_repetition,
  mixed_feedback,
  reversed_feedback,
};

const char* scheme_name(Scheme s);

// Scheme result: the overall secrecy rate plus named intermediate
// quantities.  Keys used by the producers below:
//   R_t_u, R_s_u          unscaled transmission / secrecy rates
//   C_AB, C_AE, C_BA, C_BE, C_F, C_s   channel capacities and Wyner gap
//   forwarding_rate       rate used on the forward link
//   n_rep, eps_b_eff, delta_b_eff      repetition preprocessing
//   n_star                optimal repetition order
//   R_c_star, R_e_star    common / secret component rates
//   gamma_star            optimal auxiliary crossover (absent when the
//                         pure branch of the mixed maximization wins;
//                         pure_branch = 1 flags that case)
//   n_local_maxima        gamma-grid local maxima count (diagnostic)
//   R_s_p                 key rate of the reversed link
struct SchemeReport {
  Scheme scheme{};
  BitsPerUse overall_rate = 0.0;
  std::map<std::string, double> detail;
};

struct UnscaledRates {
  BitsPerUse transmission;  // R_t_u = 1 - h(eps_b)
  BitsPerUse secrecy;       // R_s_u = h(concat(eps_b, delta_b)) - h(eps_b)
};

// Wyner secrecy capacity of the forward pair: max(h(delta_f) - h(eps_f), 0).
BitsPerUse wyner_secrecy_capacity(CrossoverProb eps_f, CrossoverProb delta_f);

SchemeReport wyner_report(const SystemChannels& ch);

// Rates of the equivalent degraded pair created by the XOR feedback kernel,
// before accounting for forward and feedback channel uses.
UnscaledRates unscaled_rates(CrossoverProb eps_b, CrossoverProb delta_b);

// Stand-alone feedback scheme: R_s_u * f/(f + 1) with f the forwarding rate,
// by default the forward capacity C_AB.  A sub-capacity forwarding rate may
// be supplied to model slower forward links.
SchemeReport pure_feedback_rate(const SystemChannels& ch,
                                std::optional<double> forwarding_rate = {});

// Equivalent crossover after rate-1/N repetition with majority decoding.
// N must be odd: an even order 2K+2 gives the same equivalent crossover as
// 2K+1 while spending more channel uses, so it is strictly dominated.
CrossoverProb repetition_equivalent(CrossoverProb p, int n_rep);

// Feedback scheme with repetition preprocessing of the feedback sequence:
// R_s_u(eps_b', delta_b') * C_AB / (N * C_AB + 1).
SchemeReport repetition_feedback_rate(const SystemChannels& ch, int n_rep);

// Exhaustive search over odd N in [1, n_max].  The rate is not unimodal in
// N in general, so every candidate is evaluated.
SchemeReport optimize_repetition(const SystemChannels& ch, int n_max = 31);

struct MixedComponentRates {
  BitsPerUse common;  // R_c* = 1 - h(concat(gamma, delta_f))
  BitsPerUse secret;  // R_e* = [h(delta_f)-h(eps_f)] - [h(concat(gamma,delta_f))-h(concat(gamma,eps_f))]
};

// Component rates of the mixed scheme for auxiliary crossover gamma.
// Requires eps_f < delta_f.
MixedComponentRates mixed_component_rates(CrossoverProb gamma,
                                          CrossoverProb eps_f,
                                          CrossoverProb delta_f);

// Mixed scheme: max over gamma in (0, 0.5] of
// (R_e* + R_c* R_s_u)/(R_c* + 1), compared against the pure-feedback rate
// which covers the gamma = 0 discontinuity.  Requires eps_f < delta_f.
SchemeReport mixed_feedback_rate(const SystemChannels& ch);

// Secret-key rate achievable on the reversed link (the system with forward
// and feedback roles exchanged), using the mixed scheme when eps_b < delta_b
// and the pure scheme otherwise.
SchemeReport reversed_key_rate(const SystemChannels& ch);

// Saturating key-consumption form C_AB * r / (c_f + r).
BitsPerUse key_scaled_rate(double c_ab, double c_f, double r_s_p);

// Reversed scheme: generate a key of rate R_s_p on the reversed link, then
// spend it on the forward link next to Wyner coset coding when C_AB > C_AE.
// Overall rate C_AB * R_s_p / (C_F + R_s_p) with C_F = min(C_AB, C_AE).
SchemeReport reversed_feedback_rate(const SystemChannels& ch);

// Comparison rate when the whole forward message is encrypted with the
// generated key: C_AB * R_s_p / (C_AB + R_s_p).
BitsPerUse full_encryption_rate(const SystemChannels& ch);

// Scheme selection by channel ordering.  Candidates per ordering of
// (C_BA vs C_BE, C_AB vs C_AE):
//   C_BA <= C_BE, C_AB <= C_AE   pure feedback only
//   C_BA  > C_BE, C_AB <= C_AE   pure feedback or reversed (mixed) feedback
//   C_BA <= C_BE, C_AB  > C_AE   mixed feedback or reversed (pure) feedback
//   C_BA  > C_BE, C_AB  > C_AE   mixed feedback or reversed (mixed) feedback
// Ties break toward the earlier Scheme enumerator.
SchemeReport best_scheme(const SystemChannels& ch);

}  // namespace wiretap
