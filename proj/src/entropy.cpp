#include "wiretap/entropy.hpp"

#include <cmath>
#include <numbers>

namespace wiretap {

BitsPerUse binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error("binary_entropy: p must lie in [0, 1]");
  }
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double inv_binary_entropy(BitsPerUse y) {
  if (!(y >= 0.0 && y <= 1.0)) {
    throw std::domain_error("inv_binary_entropy: y must lie in [0, 1]");
  }
  if (y == 0.0) return 0.0;
  if (y == 1.0) return 0.5;
  double lo = 0.0, hi = 0.5;
  for (int i = 0; i < 100 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

CrossoverProb concat(CrossoverProb a, CrossoverProb b) {
  return CrossoverProb(concat(a.value(), b.value()));
}

BitsPerUse capacity(CrossoverProb p) { return 1.0 - binary_entropy(p.value()); }

double mu(CrossoverProb x) {
  const double v = x.value();
  if (v == 0.5) {
    throw std::domain_error("mu: pole at x = 0.5");
  }
  const double d = 1.0 - 2.0 * v;
  return v * (1.0 - v) / (d * d);
}

double concat_entropy_d2(CrossoverProb a, double x) {
  const double den = x * (1.0 - x) + mu(a);
  if (den == 0.0) {
    throw std::domain_error("concat_entropy_d2: degenerate at a = 0, x in {0, 1}");
  }
  return -1.0 / (std::numbers::ln2 * den);
}

}  // namespace wiretap
