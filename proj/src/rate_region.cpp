#include "wiretap/rate_region.hpp"

#include <cmath>

namespace wiretap {

bool contains(const RateEquivocationRegion& region, BitsPerUse r, BitsPerUse d) {
  if (!(r >= 0.0 && d >= 0.0)) {
    throw std::domain_error("contains: r and d must be non-negative");
  }
  return r <= region.r_max() && d <= region.h_s() &&
         r * d <= region.h_s() * region.secrecy_rate();
}

RateEquivocationRegion scaled_region(const RateEquivocationRegion& unscaled,
                                     BitsPerUse forwarding_rate) {
  if (!(forwarding_rate > 0.0)) {
    throw std::invalid_argument("scaled_region: forwarding rate must be > 0");
  }
  const double f = forwarding_rate / (forwarding_rate + 1.0);
  return {unscaled.r_max() * f, unscaled.secrecy_rate() * f, unscaled.h_s()};
}

double k_upper_bound(long m, BitsPerUse secrecy_rate, BitsPerUse d) {
  if (m < 0) throw std::invalid_argument("k_upper_bound: m must be >= 0");
  if (!(d > 0.0)) throw std::domain_error("k_upper_bound: d must be > 0");
  return static_cast<double>(m) * secrecy_rate / d;
}

std::vector<BoundaryPoint> boundary(const RateEquivocationRegion& region,
                                    int n_points) {
  if (n_points < 2) throw std::invalid_argument("boundary: n_points must be >= 2");
  const double cap = region.h_s() * region.secrecy_rate();
  std::vector<BoundaryPoint> pts;
  pts.reserve(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    const double r = region.r_max() * i / (n_points - 1);
    double d = region.h_s();
    if (r > region.secrecy_rate()) d = cap / r;
    if (d > region.h_s()) d = region.h_s();
    // keep the product constraint satisfied under rounding
    while (r * d > cap) d = std::nextafter(d, 0.0);
    pts.push_back({r, d});
  }
  return pts;
}

BitsPerUse mixed_region_product(const SystemChannels& ch, CrossoverProb gamma,
                                BitsPerUse h_s) {
  const MixedComponentRates c = mixed_component_rates(gamma, ch.eps_f, ch.delta_f);
  const UnscaledRates u = unscaled_rates(ch.eps_b, ch.delta_b);
  return h_s * (c.secret + c.common * u.secrecy) / (c.common + 1.0);
}

}  // namespace wiretap
