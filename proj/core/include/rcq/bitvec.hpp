#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace rcq {

/// Dense bit vector over GF(2), packed into 64-bit words.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(std::size_t nbits) : nbits_(nbits), words_(word_count(nbits), 0) {}

  static std::size_t word_count(std::size_t nbits) { return (nbits + 63) / 64; }

  std::size_t size() const { return nbits_; }
  std::size_t words() const { return words_.size(); }

  bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }
  void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

  const std::uint64_t* data() const { return words_.data(); }
  std::uint64_t* data() { return words_.data(); }
  std::uint64_t word(std::size_t w) const { return words_[w]; }

  void clear() {
    for (auto& w : words_) {
      w = 0;
    }
  }

  bool any() const {
    for (auto w : words_) {
      if (w) {
        return true;
      }
    }
    return false;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (auto w : words_) {
      c += static_cast<std::size_t>(std::popcount(w));
    }
    return c;
  }

  void operator^=(const BitVec& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      words_[w] ^= other.words_[w];
    }
  }

  /// Parity of the AND of two vectors (the GF(2) inner product).
  friend bool dot_parity(const BitVec& a, const BitVec& b) {
    std::uint64_t acc = 0;
    for (std::size_t w = 0; w < a.words_.size(); ++w) {
      acc ^= a.words_[w] & b.words_[w];
    }
    return std::popcount(acc) & 1u;
  }

  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }

  /// Index of the lowest set bit, or size() if empty.
  std::size_t lowest_set() const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      if (words_[w]) {
        return (w << 6) + static_cast<std::size_t>(std::countr_zero(words_[w]));
      }
    }
    return nbits_;
  }

  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t x = words_[w];
      while (x) {
        fn((w << 6) + static_cast<std::size_t>(std::countr_zero(x)));
        x &= x - 1;
      }
    }
  }

private:
  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Rank of a set of bit-vector rows over GF(2). Rows are consumed by copy.
std::size_t gf2_rank(std::vector<BitVec> rows);

/// Row-reduces `rows` in place to reduced row echelon form, dropping zero
/// rows. Returns the pivot column of each surviving row, in row order.
std::vector<std::size_t> gf2_row_reduce(std::vector<BitVec>& rows);

/// Solves sum_i x_i rows[i] = target over GF(2). Returns the selector bits
/// (one per row), or nothing if the system is inconsistent.
std::optional<std::vector<std::uint8_t>> gf2_solve_combination(
    const std::vector<BitVec>& rows, const BitVec& target);

}  // namespace rcq
