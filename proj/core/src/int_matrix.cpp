#include "rbloch/int_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "rbloch/errors.hpp"

namespace rbloch {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), dense_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.dense_[i * n + i] = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(std::span<const IntVector> rows, std::size_t cols) {
  IntMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  m.compact();
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
  IntMatrix m(0, cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw StructuralError("ragged matrix literal");
    IntVector v;
    for (long x : r) v.emplace_back(x);
    m.append_row(v);
  }
  return m;
}

IntMatrix IntMatrix::diagonal(std::span<const Int> diag, std::size_t rows, std::size_t cols) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < diag.size() && i < rows && i < cols; ++i) m.set(i, i, diag[i]);
  return m;
}

Int IntMatrix::at(std::size_t r, std::size_t c) const {
  if (r >= rows_ || c >= cols_) throw StructuralError("matrix index out of range");
  if (!sparse_) return dense_[r * cols_ + c];
  const auto& row = sparse_rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  if (it != row.end() && it->first == c) return it->second;
  return 0;
}

void IntMatrix::set(std::size_t r, std::size_t c, const Int& value) {
  if (r >= rows_ || c >= cols_) throw StructuralError("matrix index out of range");
  if (!sparse_) {
    dense_[r * cols_ + c] = value;
    return;
  }
  auto& row = sparse_rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c,
                             [](const auto& e, std::size_t col) { return e.first < col; });
  bool present = it != row.end() && it->first == c;
  if (value == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = value;
  } else {
    row.insert(it, {static_cast<std::uint32_t>(c), value});
  }
}

IntVector IntMatrix::row(std::size_t r) const {
  if (r >= rows_) throw StructuralError("row index out of range");
  IntVector out(cols_);
  if (!sparse_) {
    std::copy_n(dense_.begin() + static_cast<std::ptrdiff_t>(r * cols_), cols_, out.begin());
  } else {
    for (const auto& [c, v] : sparse_rows_[r]) out[c] = v;
  }
  return out;
}

std::vector<std::pair<std::size_t, Int>> IntMatrix::row_entries(std::size_t r) const {
  std::vector<std::pair<std::size_t, Int>> out;
  if (!sparse_) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Int& v = dense_[r * cols_ + c];
      if (v != 0) out.emplace_back(c, v);
    }
  } else {
    for (const auto& [c, v] : sparse_rows_[r]) out.emplace_back(c, v);
  }
  return out;
}

void IntMatrix::append_row(std::span<const Int> values) {
  if (values.size() != cols_) throw StructuralError("row width does not match column count");
  if (!sparse_) {
    dense_.insert(dense_.end(), values.begin(), values.end());
  } else {
    SparseRow row;
    for (std::size_t c = 0; c < cols_; ++c)
      if (values[c] != 0) row.emplace_back(static_cast<std::uint32_t>(c), values[c]);
    sparse_rows_.push_back(std::move(row));
  }
  ++rows_;
}

std::size_t IntMatrix::nonzeros() const {
  std::size_t n = 0;
  if (!sparse_) {
    for (const auto& v : dense_) n += (v != 0);
  } else {
    for (const auto& r : sparse_rows_) n += r.size();
  }
  return n;
}

double IntMatrix::zero_fill() const {
  std::size_t total = rows_ * cols_;
  if (total == 0) return 1.0;
  return 1.0 - static_cast<double>(nonzeros()) / static_cast<double>(total);
}

void IntMatrix::compact() {
  bool want_sparse = zero_fill() > kSparseThreshold && !empty();
  if (want_sparse == sparse_) return;
  if (want_sparse) {
    std::vector<SparseRow> rows(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) {
        Int& v = dense_[r * cols_ + c];
        if (v != 0) rows[r].emplace_back(static_cast<std::uint32_t>(c), std::move(v));
      }
    sparse_rows_ = std::move(rows);
    dense_.clear();
    dense_.shrink_to_fit();
  } else {
    dense_.assign(rows_ * cols_, Int(0));
    for (std::size_t r = 0; r < rows_; ++r)
      for (auto& [c, v] : sparse_rows_[r]) dense_[r * cols_ + c] = std::move(v);
    sparse_rows_.clear();
  }
  sparse_ = want_sparse;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (const auto& [c, v] : row_entries(r)) t.dense_[c * rows_ + r] = v;
  return t;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw StructuralError("matrix product dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    IntVector acc = rhs.left_multiply(row(r));
    std::move(acc.begin(), acc.end(), out.dense_.begin() + static_cast<std::ptrdiff_t>(r * rhs.cols_));
  }
  return out;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t r = 0; r < a.rows_; ++r)
    if (a.row_entries(r) != b.row_entries(r)) return false;
  return true;
}

IntVector IntMatrix::left_multiply(std::span<const Int> x) const {
  if (x.size() != rows_) throw StructuralError("vector length does not match row count");
  IntVector out(cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (x[r] == 0) continue;
    if (!sparse_) {
      const Int* row = dense_.data() + r * cols_;
      for (std::size_t c = 0; c < cols_; ++c)
        if (row[c] != 0) out[c] += x[r] * row[c];
    } else {
      for (const auto& [c, v] : sparse_rows_[r]) out[c] += x[r] * v;
    }
  }
  return out;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "; " : "");
    auto v = row(r);
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? " " : "") << v[c];
  }
  os << ']';
  return os.str();
}

Int determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw StructuralError("determinant of a non-square matrix");
  std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<IntVector> a(n);
  for (std::size_t i = 0; i < n; ++i) a[i] = m.row(i);
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(a[k], a[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Int floor_mod(const Int& a, const Int& m) {
  if (m == 0) return a;
  Int r;
  Int am = abs(m);
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), am.get_mpz_t());
  return r;
}

Int odd_part(const Int& n) {
  if (n == 0) return 0;
  Int r = abs(n);
  mp_bitcnt_t twos = mpz_scan1(r.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(r.get_mpz_t(), r.get_mpz_t(), twos);
  return r;
}

IntVector add(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw StructuralError("vector length mismatch");
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

IntVector scale(const Int& s, std::span<const Int> a) {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = s * a[i];
  return out;
}

bool is_zero(std::span<const Int> v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

}  // namespace rbloch
