#pragma once

#include <cstdint>
#include <string>

#include "wiretap/entropy.hpp"

namespace wiretap {

// Payload ensemble carried by the broadcast sequence v.
struct Payload {
  enum class Kind { uniform, constant_zero, repetition_coded };
  Kind kind = Kind::uniform;
  int k = 0;  // information bits per block for repetition_coded

  static Payload uniform() { return {Kind::uniform, 0}; }
  static Payload constant_zero() { return {Kind::constant_zero, 0}; }
  static Payload repetition_coded(int k) { return {Kind::repetition_coded, k}; }
};

struct SimConfig {
  int n = 1000;          // block length in bits
  long trials = 1;
  std::uint64_t seed = 0;
  CrossoverProb eps_b;   // feedback crossover toward Alice
  CrossoverProb delta_b; // feedback crossover toward Eve
  Payload payload;
};

// Empirical kernel statistics.  All probabilities carry the binomial
// standard error sqrt(p(1-p)/N); the mutual-information estimates are
// plug-in values on pooled per-position 2x2 joint counts with the
// delta-method standard error.  mi_pairwise_bits pools the joint counts of
// (c_i xor c_j, z_i xor z_j) over same-block position pairs, which is where
// block-structured payloads leak (the per-position marginal of such payloads
// is uniform, so mi_broadcast_eve_bits alone cannot see them).
struct SimResult {
  double bob_ber = 0.0;
  double bob_ber_std = 0.0;
  double eve_ber = 0.0;
  double eve_ber_std = 0.0;
  double broadcast_bias = 0.0;       // empirical Pr{(v xor y) bit = 1}
  double broadcast_bias_std = 0.0;
  double mi_payload_broadcast_bits = 0.0;  // MI(v; v xor y) per bit
  double mi_payload_broadcast_std = 0.0;
  double mi_broadcast_eve_bits = 0.0;      // MI(v xor y; z) per bit
  double mi_broadcast_eve_std = 0.0;
  double mi_pairwise_bits = 0.0;           // MI(c_i^c_j; z_i^z_j), same-block pairs
  double mi_pairwise_std = 0.0;
  double mi_payload_bob_bits = 0.0;        // MI(v; Bob's estimate) per bit
  std::int64_t n_bits_total = 0;
};

// Simulate the XOR feedback kernel: Bob broadcasts uniform x, Alice and Eve
// receive noisy copies y and z, Alice publishes c = v xor y, Bob decodes
// c xor x and Eve decodes c xor z.  Expected error rates are eps_b for Bob
// and concat(eps_b, delta_b) for Eve.
SimResult run_kernel(const SimConfig& cfg);

// run_kernel restricted to the uniform payload: checks the one-time-pad
// behavior of the broadcast (bias 1/2, MI(v; c) consistent with zero).
SimResult crypto_lemma_check(const SimConfig& cfg);

// Leakage demonstration: with a structured payload the broadcast is not
// independent of Eve's feedback copy z.  For constant_zero the per-bit
// MI(c; z) approaches 1 - h(concat(eps_b, delta_b)); the uniform payload is
// accepted as the control arm and stays consistent with zero.
SimResult leakage_demo(const SimConfig& cfg);

struct RepetitionEstimate {
  double crossover = 0.0;
  double std_error = 0.0;
  long trials = 0;
};

// Majority decoding of n_rep noisy copies of a bit; the empirical crossover
// estimates repetition_equivalent(p, n_rep).
RepetitionEstimate repetition_mc(CrossoverProb p, int n_rep, long trials,
                                 std::uint64_t seed);

// Threshold below which a plug-in MI estimate on a 2x2 table is consistent
// with independence: the documented estimator-bias bound 2/(N ln2) plus
// three standard deviations of the chi-square(1) limit law, 3 sqrt(2)/(2 N ln2).
double mi_zero_threshold(std::int64_t n_bits);

// run_kernel with the per-trial bit streams packed into files
// "<prefix>_<name>.bin" for name in {x, y, z, v, c}; bit i of each byte is
// bit (8 byte_index + i) of the stream (little-endian bit order), trials
// concatenated in order.
SimResult run_kernel_dump(const SimConfig& cfg, const std::string& prefix);

}  // namespace wiretap
