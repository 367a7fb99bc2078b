#include "wiretap/montecarlo.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "wiretap/rng.hpp"

namespace wiretap {

namespace {

enum Stream : std::uint64_t { kX = 0, kNoiseA = 1, kNoiseE = 2, kPayload = 3 };

using Joint = std::array<std::array<std::int64_t, 2>, 2>;

struct MiEstimate {
  double bits = 0.0;
  double std_error = 0.0;
};

// Plug-in MI of a 2x2 joint count table, with the delta-method standard
// error sqrt((E[L^2] - MI^2)/N) for L = log2(p_xy/(p_x p_y)).
MiEstimate plugin_mi(const Joint& c) {
  const double n = static_cast<double>(c[0][0] + c[0][1] + c[1][0] + c[1][1]);
  if (n == 0.0) return {};
  const double rx[2] = {double(c[0][0] + c[0][1]), double(c[1][0] + c[1][1])};
  const double ry[2] = {double(c[0][0] + c[1][0]), double(c[0][1] + c[1][1])};
  double mi = 0.0, second = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      if (c[a][b] == 0) continue;
      const double p = c[a][b] / n;
      const double l = std::log2(p * n * n / (rx[a] * ry[b]));
      mi += p * l;
      second += p * l * l;
    }
  }
  const double var = std::max(second - mi * mi, 0.0) / n;
  return {mi, std::sqrt(var)};
}

double binom_std(double p_hat, double n) {
  return std::sqrt(std::max(p_hat * (1.0 - p_hat), 0.0) / n);
}

int payload_block_len(const SimConfig& cfg) {
  if (cfg.payload.kind != Payload::Kind::repetition_coded) return cfg.n;
  const int k = cfg.payload.k;
  if (k < 1 || cfg.n % k != 0) {
    throw std::invalid_argument(
        "repetition payload requires k >= 1 dividing the block length");
  }
  return cfg.n / k;
}

class BitFileWriter {
 public:
  BitFileWriter() = default;
  explicit BitFileWriter(const std::string& path) : f_(std::fopen(path.c_str(), "wb")) {
    if (!f_) throw std::runtime_error("cannot open bit dump file: " + path);
  }
  ~BitFileWriter() { close(); }
  BitFileWriter(const BitFileWriter&) = delete;
  BitFileWriter& operator=(const BitFileWriter&) = delete;
  BitFileWriter(BitFileWriter&& other) noexcept
      : f_(other.f_), byte_(other.byte_), fill_(other.fill_) {
    other.f_ = nullptr;
  }

  void push(int bit) {
    byte_ |= (bit & 1) << fill_;
    if (++fill_ == 8) flush_byte();
  }
  void close() {
    if (f_) {
      if (fill_ > 0) flush_byte();
      std::fclose(f_);
      f_ = nullptr;
    }
  }

 private:
  void flush_byte() {
    std::fputc(byte_, f_);
    byte_ = 0;
    fill_ = 0;
  }
  std::FILE* f_ = nullptr;
  int byte_ = 0;
  int fill_ = 0;
};

SimResult run_kernel_impl(const SimConfig& cfg, const std::string* dump_prefix) {
  if (cfg.n < 1 || cfg.trials < 1) {
    throw std::invalid_argument("kernel simulation requires n >= 1 and trials >= 1");
  }
  const int block = payload_block_len(cfg);
  const double eb = cfg.eps_b.value();
  const double db = cfg.delta_b.value();

  std::int64_t bob_err = 0, eve_err = 0, ones_c = 0;
  Joint j_vc{}, j_cz{}, j_vb{}, j_pair{};

  std::vector<BitFileWriter> dump;
  if (dump_prefix) {
    dump.reserve(5);
    for (const char* name : {"x", "y", "z", "v", "c"}) {
      dump.emplace_back(*dump_prefix + "_" + name + ".bin");
    }
  }

  int prev_c = 0, prev_z = 0;
  for (long t = 0; t < cfg.trials; ++t) {
    for (int i = 0; i < cfg.n; ++i) {
      const std::uint64_t base = static_cast<std::uint64_t>(i) * 8;
      const int x = static_cast<int>(counter_rand(cfg.seed, t, base + kX) & 1);
      const int ea = to_unit(counter_rand(cfg.seed, t, base + kNoiseA)) < eb;
      const int ee = to_unit(counter_rand(cfg.seed, t, base + kNoiseE)) < db;
      int v = 0;
      switch (cfg.payload.kind) {
        case Payload::Kind::uniform:
          v = static_cast<int>(counter_rand(cfg.seed, t, base + kPayload) & 1);
          break;
        case Payload::Kind::constant_zero:
          v = 0;
          break;
        case Payload::Kind::repetition_coded:
          v = static_cast<int>(
              counter_rand(cfg.seed, t, static_cast<std::uint64_t>(i / block) * 8 + kPayload) & 1);
          break;
      }
      const int y = x ^ ea;
      const int z = x ^ ee;
      const int c = v ^ y;
      const int bob = c ^ x;
      const int eve = c ^ z;
      bob_err += bob != v;
      eve_err += eve != v;
      ones_c += c;
      ++j_vc[v][c];
      ++j_cz[c][z];
      ++j_vb[v][bob];
      // same-block even/odd position pairs; the XOR cancels the payload
      if (i % 2 == 1 && (i / block) == ((i - 1) / block)) {
        ++j_pair[c ^ prev_c][z ^ prev_z];
      }
      prev_c = c;
      prev_z = z;
      if (dump_prefix) {
        dump[0].push(x);
        dump[1].push(y);
        dump[2].push(z);
        dump[3].push(v);
        dump[4].push(c);
      }
    }
  }

  const double n_total = static_cast<double>(cfg.trials) * cfg.n;
  SimResult r;
  r.n_bits_total = static_cast<std::int64_t>(cfg.trials) * cfg.n;
  r.bob_ber = bob_err / n_total;
  r.bob_ber_std = binom_std(r.bob_ber, n_total);
  r.eve_ber = eve_err / n_total;
  r.eve_ber_std = binom_std(r.eve_ber, n_total);
  r.broadcast_bias = ones_c / n_total;
  r.broadcast_bias_std = binom_std(r.broadcast_bias, n_total);
  const MiEstimate vc = plugin_mi(j_vc);
  r.mi_payload_broadcast_bits = vc.bits;
  r.mi_payload_broadcast_std = vc.std_error;
  const MiEstimate cz = plugin_mi(j_cz);
  r.mi_broadcast_eve_bits = cz.bits;
  r.mi_broadcast_eve_std = cz.std_error;
  const MiEstimate pw = plugin_mi(j_pair);
  r.mi_pairwise_bits = pw.bits;
  r.mi_pairwise_std = pw.std_error;
  r.mi_payload_bob_bits = plugin_mi(j_vb).bits;
  return r;
}

}  // namespace

SimResult run_kernel(const SimConfig& cfg) { return run_kernel_impl(cfg, nullptr); }

SimResult run_kernel_dump(const SimConfig& cfg, const std::string& prefix) {
  return run_kernel_impl(cfg, &prefix);
}

SimResult crypto_lemma_check(const SimConfig& cfg) {
  if (cfg.payload.kind != Payload::Kind::uniform) {
    throw std::invalid_argument("crypto_lemma_check requires the uniform payload");
  }
  return run_kernel(cfg);
}

SimResult leakage_demo(const SimConfig& cfg) {
  // Structured payloads exhibit the leak; uniform is the control arm.
  return run_kernel(cfg);
}

RepetitionEstimate repetition_mc(CrossoverProb p, int n_rep, long trials,
                                 std::uint64_t seed) {
  if (n_rep < 1 || n_rep % 2 == 0) {
    throw std::invalid_argument("repetition order must be a positive odd integer");
  }
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  const double pv = p.value();
  long errors = 0;
  for (long t = 0; t < trials; ++t) {
    int flips = 0;
    for (int i = 0; i < n_rep; ++i) {
      flips += to_unit(counter_rand(seed, t, static_cast<std::uint64_t>(i))) < pv;
    }
    errors += 2 * flips > n_rep;
  }
  RepetitionEstimate est;
  est.trials = trials;
  est.crossover = static_cast<double>(errors) / static_cast<double>(trials);
  est.std_error = binom_std(est.crossover, static_cast<double>(trials));
  return est;
}

double mi_zero_threshold(std::int64_t n_bits) {
  const double n = static_cast<double>(n_bits);
  const double bias_bound = 2.0 / (n * std::numbers::ln2);
  const double sigma = std::sqrt(2.0) / (2.0 * n * std::numbers::ln2);
  return bias_bound + 3.0 * sigma;
}

}  // namespace wiretap
