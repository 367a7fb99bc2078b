#pragma once

#include <json.hpp>

#include "wiretap/aux_channel.hpp"
#include "wiretap/montecarlo.hpp"
#include "wiretap/schemes.hpp"

namespace wiretap {

inline nlohmann::json to_json(const SchemeReport& rep) {
  nlohmann::json j;
  j["scheme"] = scheme_name(rep.scheme);
  j["overall_rate"] = rep.overall_rate;
  j["detail"] = rep.detail;
  return j;
}

inline nlohmann::json to_json(const SimResult& r) {
  return nlohmann::json{
      {"bob_ber", r.bob_ber},
      {"bob_ber_std", r.bob_ber_std},
      {"eve_ber", r.eve_ber},
      {"eve_ber_std", r.eve_ber_std},
      {"broadcast_bias", r.broadcast_bias},
      {"broadcast_bias_std", r.broadcast_bias_std},
      {"mi_payload_broadcast_bits", r.mi_payload_broadcast_bits},
      {"mi_payload_broadcast_std", r.mi_payload_broadcast_std},
      {"mi_broadcast_eve_bits", r.mi_broadcast_eve_bits},
      {"mi_broadcast_eve_std", r.mi_broadcast_eve_std},
      {"mi_pairwise_bits", r.mi_pairwise_bits},
      {"mi_pairwise_std", r.mi_pairwise_std},
      {"mi_payload_bob_bits", r.mi_payload_bob_bits},
      {"n_bits_total", r.n_bits_total},
      {"mi_zero_threshold", mi_zero_threshold(r.n_bits_total)},
  };
}

inline nlohmann::json to_json(const ExperimentReport& rep) {
  nlohmann::json j;
  j["claim"] = rep.claim;
  j["n_samples"] = rep.n_samples;
  j["seed"] = rep.seed;
  j["n_pass"] = rep.n_pass;
  j["n_skip"] = rep.n_skip;
  j["n_fail"] = rep.n_samples - rep.n_pass - rep.n_skip;
  j["worst_margin"] = rep.worst_margin;
  j["counterexamples"] = rep.counterexamples;
  return j;
}

}  // namespace wiretap
