#pragma once

#include <stdexcept>

namespace wiretap {

// Bit-flip probability of a binary symmetric channel, restricted to [0, 0.5].
// A channel with crossover above 0.5 is the relabeled version of one below,
// so construction rejects the upper half-interval instead of silently
// folding it.
class CrossoverProb {
 public:
  CrossoverProb() = default;
  explicit CrossoverProb(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 0.5)) {
      throw std::domain_error(
          "crossover probability must lie in [0, 0.5]; relabel bits "
          "(p -> 1-p) for channels in the upper half-interval");
    }
  }
  double value() const noexcept { return value_; }

 private:
  double value_ = 0.0;
};

// Rates and entropies, in bits per channel use.
using BitsPerUse = double;

// h(p) = -p log2(p) - (1-p) log2(1-p), with the convention 0 log 0 = 0.
// Domain [0, 1]; symmetric about 0.5.
BitsPerUse binary_entropy(double p);

// The unique p in [0, 0.5] with binary_entropy(p) == y.  Bracketed bisection,
// absolute tolerance better than 1e-12, no dependence on an initial guess.
double inv_binary_entropy(BitsPerUse y);

// Crossover of two BSCs in series: a + b - 2ab.  Equals the distribution of
// the XOR of two independent Bernoulli error bits.  Raw arithmetic form;
// operands may lie anywhere in [0, 1].
constexpr double concat(double a, double b) noexcept {
  return a + b - 2.0 * a * b;
}

CrossoverProb concat(CrossoverProb a, CrossoverProb b);

// BSC capacity 1 - h(p), monotone decreasing on [0, 0.5].
BitsPerUse capacity(CrossoverProb p);

// mu(x) = x(1-x)/(1-2x)^2, strictly increasing and strictly convex on
// [0, 0.5).  Pole at x = 0.5 raises instead of returning infinity.
double mu(CrossoverProb x);

// d^2/dx^2 h(concat(a, x)) = -1 / (ln2 * (x(1-x) + mu(a))) for a in [0, 0.5).
double concat_entropy_d2(CrossoverProb a, double x);

}  // namespace wiretap
