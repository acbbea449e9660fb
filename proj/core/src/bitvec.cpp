#include "rcq/bitvec.hpp"

namespace rcq {

std::size_t gf2_rank(std::vector<BitVec> rows) {
  std::size_t rank = 0;
  std::size_t ncols = rows.empty() ? 0 : rows[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < rows.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < rows.size() && !rows[pivot].get(col)) {
      ++pivot;
    }
    if (pivot == rows.size()) {
      continue;
    }
    std::swap(rows[row], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != row && rows[r].get(col)) {
        rows[r] ^= rows[row];
      }
    }
    ++row;
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> gf2_row_reduce(std::vector<BitVec>& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) {
    return pivots;
  }
  std::size_t ncols = rows[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < rows.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < rows.size() && !rows[pivot].get(col)) {
      ++pivot;
    }
    if (pivot == rows.size()) {
      continue;
    }
    std::swap(rows[row], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != row && rows[r].get(col)) {
        rows[r] ^= rows[row];
      }
    }
    pivots.push_back(col);
    ++row;
  }
  rows.resize(row);
  return pivots;
}

std::optional<std::vector<std::uint8_t>> gf2_solve_combination(
    const std::vector<BitVec>& rows, const BitVec& target) {
  // Eliminate on an augmented copy: [row | e_i] so the selector falls out.
  const std::size_t m = rows.size();
  std::vector<BitVec> work;
  work.reserve(m);
  const std::size_t ncols = target.size();
  for (std::size_t i = 0; i < m; ++i) {
    BitVec aug(ncols + m);
    for (std::size_t c = 0; c < ncols; ++c) {
      if (rows[i].get(c)) {
        aug.set(c, true);
      }
    }
    aug.set(ncols + i, true);
    work.push_back(std::move(aug));
  }
  BitVec t(ncols + m);
  for (std::size_t c = 0; c < ncols; ++c) {
    if (target.get(c)) {
      t.set(c, true);
    }
  }
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < work.size(); ++col) {
    std::size_t pivot = row;
    while (pivot < work.size() && !work[pivot].get(col)) {
      ++pivot;
    }
    if (pivot == work.size()) {
      continue;
    }
    std::swap(work[row], work[pivot]);
    for (std::size_t r = 0; r < work.size(); ++r) {
      if (r != row && work[r].get(col)) {
        work[r] ^= work[row];
      }
    }
    if (t.get(col)) {
      t ^= work[row];
    }
    ++row;
  }
  for (std::size_t c = 0; c < ncols; ++c) {
    if (t.get(c)) {
      return std::nullopt;  // inconsistent
    }
  }
  std::vector<std::uint8_t> selector(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    selector[i] = t.get(ncols + i) ? 1 : 0;
  }
  return selector;
}

}  // namespace rcq
