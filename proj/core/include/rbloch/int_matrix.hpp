#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rbloch {

using Int = mpz_class;
using IntVector = std::vector<Int>;

/// Integer matrix with arbitrary-precision entries.
///
/// Storage is dense or sparse (per-row sorted (column, value) lists); the form
/// is picked by fill ratio in compact() and never changes results.
class IntMatrix {
 public:
  /// Zero-fill fraction above which compact() switches to sparse rows.
  static constexpr double kSparseThreshold = 0.70;

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(std::span<const IntVector> rows, std::size_t cols);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix diagonal(std::span<const Int> diag, std::size_t rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Int at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Int& value);
  IntVector row(std::size_t r) const;
  /// Nonzero entries of row r as (column, value), columns increasing.
  std::vector<std::pair<std::size_t, Int>> row_entries(std::size_t r) const;
  void append_row(std::span<const Int> values);

  std::size_t nonzeros() const;
  double zero_fill() const;
  bool is_sparse() const noexcept { return sparse_; }
  /// Re-selects the storage form from the current fill ratio.
  void compact();

  IntMatrix transposed() const;
  IntMatrix operator*(const IntMatrix& rhs) const;
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

  /// Row vector times matrix.
  IntVector left_multiply(std::span<const Int> x) const;

  std::string to_string() const;

 private:
  using SparseRow = std::vector<std::pair<std::uint32_t, Int>>;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  bool sparse_ = false;
  std::vector<Int> dense_;
  std::vector<SparseRow> sparse_rows_;
};

/// Determinant via fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& m);

/// a mod m reduced into [0, |m|); m == 0 leaves a unchanged.
Int floor_mod(const Int& a, const Int& m);

/// n with every factor 2 removed; odd_part(0) == 0.
Int odd_part(const Int& n);

IntVector add(std::span<const Int> a, std::span<const Int> b);
IntVector scale(const Int& s, std::span<const Int> a);
bool is_zero(std::span<const Int> v);

}  // namespace rbloch
