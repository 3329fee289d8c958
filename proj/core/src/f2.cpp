#include "mpho/f2.hpp"

#include <algorithm>
#include <bit>

namespace mpho::f2 {

int BitVector::highest_set() const {
  for (std::size_t b = blocks_.size(); b-- > 0;) {
    if (blocks_[b]) {
      return static_cast<int>(b * 64 + (63 - std::countl_zero(blocks_[b])));
    }
  }
  return -1;
}

std::vector<int> BitVector::support() const {
  std::vector<int> out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    std::uint64_t word = blocks_[b];
    while (word) {
      int bit = std::countr_zero(word);
      out.push_back(static_cast<int>(b * 64 + bit));
      word &= word - 1;
    }
  }
  return out;
}

BitVector make_bitvector(std::size_t bits, const std::vector<int>& support) {
  BitVector v(bits);
  for (int i : support) v.set(static_cast<std::size_t>(i));
  return v;
}

bool DenseEliminator::insert(BitVector col) {
  int low = col.highest_set();
  while (low >= 0 && pivot_col_[low] >= 0) {
    col.xor_with(cols_[pivot_col_[low]]);
    low = col.highest_set();
  }
  if (low < 0) return false;
  pivot_col_[low] = static_cast<int>(cols_.size());
  cols_.push_back(std::move(col));
  return true;
}

bool DenseEliminator::in_span(BitVector col) const {
  int low = col.highest_set();
  while (low >= 0 && pivot_col_[low] >= 0) {
    col.xor_with(cols_[pivot_col_[low]]);
    low = col.highest_set();
  }
  return low < 0;
}

namespace {

// Symmetric difference of sorted index lists.
std::vector<int> xor_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      out.push_back(a[i++]);
    } else if (b[j] < a[i]) {
      out.push_back(b[j++]);
    } else {
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), a.begin() + i, a.end());
  out.insert(out.end(), b.begin() + j, b.end());
  return out;
}

} // namespace

bool SparseEliminator::insert(std::vector<int> support) {
  while (!support.empty()) {
    int low = support.back();
    int at = pivot_col_[low];
    if (at < 0) break;
    support = xor_sorted(support, cols_[at]);
  }
  if (support.empty()) return false;
  pivot_col_[support.back()] = static_cast<int>(cols_.size());
  cols_.push_back(std::move(support));
  return true;
}

bool KernelEliminator::insert(BitVector col, std::size_t label) {
  BitVector combo(labels_);
  combo.set(label);
  int low = col.highest_set();
  while (low >= 0 && pivot_col_[low] >= 0) {
    int at = pivot_col_[low];
    col.xor_with(cols_[at]);
    combo.xor_with(combos_[at]);
    low = col.highest_set();
  }
  if (low < 0) {
    kernel_.push_back(std::move(combo));
    return false;
  }
  pivot_col_[low] = static_cast<int>(cols_.size());
  cols_.push_back(std::move(col));
  combos_.push_back(std::move(combo));
  return true;
}

int column_rank(std::size_t rows, const std::vector<std::vector<int>>& columns) {
  if (rows == 0) return 0;
  if (rows <= dense_row_limit) {
    DenseEliminator elim(rows);
    for (const auto& col : columns) elim.insert(make_bitvector(rows, col));
    return elim.rank();
  }
  SparseEliminator elim(rows);
  for (const auto& col : columns) elim.insert(col);
  return elim.rank();
}

} // namespace mpho::f2
