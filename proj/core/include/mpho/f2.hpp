#pragma once

#include <cstdint>
#include <vector>

namespace mpho::f2 {

/// Bit-packed vector over the two-element field.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t bits) : bits_(bits), blocks_((bits + 63) / 64, 0) {}

  std::size_t bits() const { return bits_; }

  void set(std::size_t i) { blocks_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const { return (blocks_[i >> 6] >> (i & 63)) & 1; }

  void xor_with(const BitVector& other) {
    for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] ^= other.blocks_[b];
  }

  bool any() const {
    for (auto b : blocks_)
      if (b) return true;
    return false;
  }

  /// Index of the highest set bit, or -1 when zero.
  int highest_set() const;

  std::vector<int> support() const;

private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> blocks_;
};

BitVector make_bitvector(std::size_t bits, const std::vector<int>& support);

/// Incremental Gaussian elimination over F2, dense bit-packed columns.
/// Columns are inserted one at a time and reduced against the pivots kept so
/// far (pivot = highest set bit); the rank is the number of surviving
/// columns. Insertion order never changes earlier results, which makes this
/// usable for sublevel sweeps where columns only ever get added.
class DenseEliminator {
public:
  explicit DenseEliminator(std::size_t rows) : rows_(rows), pivot_col_(rows, -1) {}

  /// Reduces `col` in place; keeps it as a new pivot if nonzero.
  /// Returns true when the rank grew.
  bool insert(BitVector col);

  /// Reduces a copy of `col` without inserting; true if it reduces to zero.
  bool in_span(BitVector col) const;

  int rank() const { return static_cast<int>(cols_.size()); }
  std::size_t rows() const { return rows_; }

  const std::vector<BitVector>& columns() const { return cols_; }
  const std::vector<int>& pivot_map() const { return pivot_col_; }

private:
  std::size_t rows_;
  std::vector<BitVector> cols_;
  std::vector<int> pivot_col_; // row -> index into cols_, or -1
};

/// Same contract as DenseEliminator with columns stored as sorted index
/// lists. Used above the dense size threshold; produces identical ranks.
class SparseEliminator {
public:
  explicit SparseEliminator(std::size_t rows) : rows_(rows), pivot_col_(rows, -1) {}

  bool insert(std::vector<int> support); // sorted ascending
  int rank() const { return static_cast<int>(cols_.size()); }
  std::size_t rows() const { return rows_; }

private:
  std::size_t rows_;
  std::vector<std::vector<int>> cols_;
  std::vector<int> pivot_col_;
};

/// Eliminator that also records, for every column that reduces to zero, the
/// F2 combination of input columns producing it. Combinations are expressed
/// in a caller-chosen label space, so kernels come out in a global indexing.
class KernelEliminator {
public:
  KernelEliminator(std::size_t rows, std::size_t label_space)
      : rows_(rows), labels_(label_space), pivot_col_(rows, -1) {}

  /// Inserts the column whose combination starts as the unit vector at
  /// `label`. Returns true when the rank grew (no kernel element produced).
  bool insert(BitVector col, std::size_t label);

  int rank() const { return static_cast<int>(cols_.size()); }
  const std::vector<BitVector>& kernel() const { return kernel_; }

private:
  std::size_t rows_;
  std::size_t labels_;
  std::vector<BitVector> cols_;
  std::vector<BitVector> combos_;
  std::vector<int> pivot_col_;
  std::vector<BitVector> kernel_;
};

/// Rank of an arbitrary column set (each column a list of row indices),
/// dispatching between the dense and sparse eliminators on size.
int column_rank(std::size_t rows, const std::vector<std::vector<int>>& columns);

/// Largest row count for which the dense path is used by default.
inline constexpr std::size_t dense_row_limit = std::size_t{1} << 12;

} // namespace mpho::f2
