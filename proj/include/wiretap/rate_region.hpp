#pragma once

#include <vector>

#include "wiretap/entropy.hpp"
#include "wiretap/schemes.hpp"

namespace wiretap {

// Rate-equivocation region {(R, d) : R <= r_max, d <= h_s, R d <= h_s * c_s}
// for symmetric channels.  Block-length bookkeeping is collapsed into the
// scalar forwarding rate (the n/(M+n) = f/(f+1) step), so only already-scaled
// quantities appear at this level.
class RateEquivocationRegion {
 public:
  RateEquivocationRegion(BitsPerUse r_max, BitsPerUse secrecy_rate,
                         BitsPerUse h_s = 1.0)
      : r_max_(r_max), secrecy_rate_(secrecy_rate), h_s_(h_s) {
    if (!(secrecy_rate >= 0.0 && secrecy_rate <= r_max)) {
      throw std::invalid_argument("region requires 0 <= secrecy_rate <= r_max");
    }
    if (!(h_s > 0.0)) {
      throw std::invalid_argument("region requires h_s > 0");
    }
  }

  BitsPerUse r_max() const noexcept { return r_max_; }
  BitsPerUse secrecy_rate() const noexcept { return secrecy_rate_; }
  BitsPerUse h_s() const noexcept { return h_s_; }

 private:
  BitsPerUse r_max_;
  BitsPerUse secrecy_rate_;
  BitsPerUse h_s_;
};

// Membership: r <= r_max and d <= h_s and r*d <= h_s * secrecy_rate.
bool contains(const RateEquivocationRegion& region, BitsPerUse r, BitsPerUse d);

// Scale r_max and secrecy_rate by f/(f+1); h_s is unchanged.
RateEquivocationRegion scaled_region(const RateEquivocationRegion& unscaled,
                                     BitsPerUse forwarding_rate);

// Upper bound m * secrecy_rate / d on the number of secret source symbols
// carried by an m-use codeword at equivocation d.
double k_upper_bound(long m, BitsPerUse secrecy_rate, BitsPerUse d);

struct BoundaryPoint {
  BitsPerUse r;
  BitsPerUse d;
};

// Upper boundary sampled at n_points uniformly spaced r in [0, r_max]:
// d(r) = h_s for r <= secrecy_rate, else h_s * secrecy_rate / r.  Every
// returned pair satisfies contains(); pairs are sorted by r.
std::vector<BoundaryPoint> boundary(const RateEquivocationRegion& region,
                                    int n_points);

// Asymptotic R*d product achieved by the mixed construction at parameter
// gamma: h_s * (R_e* + R_c* R_s_u) / (R_c* + 1).  Requires eps_f < delta_f.
BitsPerUse mixed_region_product(const SystemChannels& ch, CrossoverProb gamma,
                                BitsPerUse h_s = 1.0);

}  // namespace wiretap
