#include "wiretap/coset_code.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wiretap {

namespace {

constexpr int kMaxBlockLength = 14;

int parity(std::uint32_t x) { return std::popcount(x) & 1; }

}  // namespace

CosetCode::CosetCode(std::vector<std::uint32_t> rows, int n)
    : n_(n), rows_(std::move(rows)) {
  if (n_ < 1) throw std::invalid_argument("block length must be >= 1");
  if (n_ > kMaxBlockLength) {
    throw std::length_error("block length above 14 exceeds the enumeration bound");
  }
  if (rows_.empty() || static_cast<int>(rows_.size()) > n_) {
    throw std::invalid_argument("parity check needs between 1 and n rows");
  }
  const std::uint32_t col_mask = (1u << n_) - 1;
  for (std::uint32_t r : rows_) {
    if (r & ~col_mask) throw std::invalid_argument("parity row wider than n");
  }

  // Gaussian elimination tracking which original rows combine into each
  // reduced row, so syndromes transform alongside.
  rref_ = rows_;
  transform_.assign(rows_.size(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) transform_[i] = 1u << i;
  std::size_t rank = 0;
  for (int col = 0; col < n_ && rank < rref_.size(); ++col) {
    std::size_t pivot_row = rank;
    while (pivot_row < rref_.size() && !((rref_[pivot_row] >> col) & 1)) ++pivot_row;
    if (pivot_row == rref_.size()) continue;
    std::swap(rref_[rank], rref_[pivot_row]);
    std::swap(transform_[rank], transform_[pivot_row]);
    for (std::size_t r = 0; r < rref_.size(); ++r) {
      if (r != rank && ((rref_[r] >> col) & 1)) {
        rref_[r] ^= rref_[rank];
        transform_[r] ^= transform_[rank];
      }
    }
    pivot_.push_back(col);
    ++rank;
  }
  if (rank != rows_.size()) {
    throw std::invalid_argument("parity check rows are linearly dependent");
  }

  // Null-space basis from the free columns, then all 2^k_c codewords.
  std::vector<std::uint32_t> basis;
  std::vector<bool> is_pivot(n_, false);
  for (int c : pivot_) is_pivot[c] = true;
  for (int col = 0; col < n_; ++col) {
    if (is_pivot[col]) continue;
    std::uint32_t v = 1u << col;
    for (std::size_t i = 0; i < rref_.size(); ++i) {
      if ((rref_[i] >> col) & 1) v |= 1u << pivot_[i];
    }
    basis.push_back(v);
  }
  codewords_.assign(std::size_t{1} << basis.size(), 0);
  for (std::size_t m = 1; m < codewords_.size(); ++m) {
    codewords_[m] = codewords_[m & (m - 1)] ^ basis[std::countr_zero(m)];
  }
}

CosetCode CosetCode::parse(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::uint32_t> rows;
  std::string line;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    if (width == 0) width = line.size();
    if (line.size() != width) {
      throw std::invalid_argument("parity rows must all have the same length");
    }
    std::uint32_t mask = 0;
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (line[j] == '1') {
        mask |= 1u << j;
      } else if (line[j] != '0') {
        throw std::invalid_argument("parity rows may contain only '0' and '1'");
      }
    }
    rows.push_back(mask);
  }
  if (width == 0) throw std::invalid_argument("empty parity check matrix");
  return CosetCode(std::move(rows), static_cast<int>(width));
}

std::uint32_t CosetCode::syndrome(std::uint32_t word) const {
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    s |= static_cast<std::uint32_t>(parity(rows_[i] & word)) << i;
  }
  return s;
}

std::uint32_t CosetCode::representative(std::uint32_t s) const {
  if (s >> rows_.size()) throw std::invalid_argument("syndrome out of range");
  std::uint32_t t = 0;
  for (std::size_t i = 0; i < rref_.size(); ++i) {
    if (parity(transform_[i] & s)) t |= 1u << pivot_[i];
  }
  return t;
}

BitsPerUse exact_equivocation(const CosetCode& code, CrossoverProb delta) {
  const int n = code.n();
  const int r = code.secret_bits();
  const double d = delta.value();

  std::vector<double> flip_prob(n + 1);
  for (int i = 0; i <= n; ++i) {
    flip_prob[i] = std::pow(d, i) * std::pow(1.0 - d, n - i);
  }

  // Every coset is a translate of the code, so H(W_E | S = s) is the same
  // for all syndromes; evaluate it for the zero coset.
  const double inv_coset = 1.0 / static_cast<double>(code.codewords().size());
  double h_we_given_s = 0.0;
  const std::uint32_t words = 1u << n;
  for (std::uint32_t w = 0; w < words; ++w) {
    double p = 0.0;
    for (std::uint32_t c : code.codewords()) {
      p += flip_prob[std::popcount(w ^ c)];
    }
    p *= inv_coset;
    if (p > 0.0) h_we_given_s -= p * std::log2(p);
  }

  // H(S|W_E) = H(S) + H(W_E|S) - H(W_E),  H(S) = r,  H(W_E) = n.
  const double h_s_given_we = r + h_we_given_s - n;
  const double per_bit = h_s_given_we / r;
  return std::min(std::max(per_bit, 0.0), 1.0);
}

std::vector<BitsPerUse> equivocation_monotonicity_scan(
    const CosetCode& code, const std::vector<CrossoverProb>& deltas) {
  for (std::size_t i = 1; i < deltas.size(); ++i) {
    if (!(deltas[i - 1].value() <= deltas[i].value())) {
      throw std::invalid_argument("crossover list must be sorted ascending");
    }
  }
  std::vector<BitsPerUse> out;
  out.reserve(deltas.size());
  for (CrossoverProb d : deltas) out.push_back(exact_equivocation(code, d));
  return out;
}

}  // namespace wiretap
