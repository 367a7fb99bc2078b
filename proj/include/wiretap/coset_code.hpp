#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wiretap/entropy.hpp"

namespace wiretap {

// Small binary linear code given by a full-row-rank parity check matrix,
// with syndrome-indexed cosets.  The secret message is the syndrome and the
// transmitted word is a uniformly chosen member of its coset.  Block length
// is capped at 14 so that exact enumeration stays below 2^28 work.
class CosetCode {
 public:
  // rows[i] is a bitmask over the n coordinates; bit j = column j.
  CosetCode(std::vector<std::uint32_t> rows, int n);

  // Text form: one row per line of '0'/'1' characters, leftmost character
  // being column 0.
  static CosetCode parse(const std::string& text);

  int n() const noexcept { return n_; }
  int secret_bits() const noexcept { return static_cast<int>(rows_.size()); }
  int dimension() const noexcept { return n_ - secret_bits(); }  // k_c

  std::uint32_t syndrome(std::uint32_t word) const;
  // Any word t with syndrome(t) == s.
  std::uint32_t representative(std::uint32_t s) const;
  // All 2^dimension() codewords (the syndrome-zero coset).
  const std::vector<std::uint32_t>& codewords() const noexcept { return codewords_; }

 private:
  int n_;
  std::vector<std::uint32_t> rows_;
  std::vector<std::uint32_t> rref_;        // reduced rows
  std::vector<std::uint32_t> transform_;   // row-combination masks: rref = T * rows
  std::vector<int> pivot_;
  std::vector<std::uint32_t> codewords_;
};

// Eve's exact per-secret-bit equivocation (1/secret_bits) H(S | W_E) when
// the transmitted word passes through a BSC(delta), computed by full
// enumeration via H(S|W_E) = H(S) + H(W_E|S) - H(W_E) with H(W_E) = n
// (uniform input stays uniform through a BSC).
BitsPerUse exact_equivocation(const CosetCode& code, CrossoverProb delta);

// Equivocation profile over an ascending list of crossovers; the returned
// sequence is nondecreasing (a noisier channel never helps Eve).
std::vector<BitsPerUse> equivocation_monotonicity_scan(
    const CosetCode& code, const std::vector<CrossoverProb>& deltas);

}  // namespace wiretap
