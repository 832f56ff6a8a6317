#include "rbloch/smith.hpp"

#include <algorithm>
#include <utility>

#include "rbloch/errors.hpp"

namespace rbloch {
namespace {

using Rows = std::vector<IntVector>;

int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Quotient of a by b rounded to nearest, so |a - q b| <= |b| / 2.
Int nearest_quotient(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int twice = 2 * abs(r);
  if (twice > abs(b)) q += 1;
  return q;
}

void row_addmul(IntVector& dst, const IntVector& src, const Int& q, std::size_t from = 0) {
  for (std::size_t k = from; k < dst.size(); ++k)
    if (src[k] != 0) dst[k] += q * src[k];
}

Rows identity_rows(std::size_t n) {
  Rows r(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

IntMatrix to_matrix(const Rows& rows, std::size_t cols) { return IntMatrix::from_rows(rows, cols); }

// Smith elimination on a working copy, optionally tracking U, V and V^-1.
class SmithWork {
 public:
  SmithWork(Rows a, std::size_t cols, Rows* u, Rows* v, Rows* vinv)
      : a_(std::move(a)), rows_(a_.size()), cols_(cols), u_(u), v_(v), vinv_(vinv) {}

  void run() {
    std::size_t limit = std::min(rows_, cols_);
    for (std::size_t t = 0; t < limit; ++t) {
      if (!move_min_to(t)) break;
      reduce_pivot(t);
      if (a_[t][t] < 0) row_neg(t);
    }
  }

  Rows& matrix() { return a_; }

 private:
  bool move_min_to(std::size_t t) {
    std::size_t bi = rows_, bj = cols_;
    Int best;
    for (std::size_t i = t; i < rows_; ++i)
      for (std::size_t j = t; j < cols_; ++j) {
        const Int& x = a_[i][j];
        if (x == 0) continue;
        if (bi == rows_ || cmpabs(x, best) < 0) {
          best = x;
          bi = i;
          bj = j;
          if (best == 1 || best == -1) goto found;
        }
      }
    if (bi == rows_) return false;
  found:
    row_swap(t, bi);
    col_swap(t, bj);
    return true;
  }

  void reduce_pivot(std::size_t t) {
    for (;;) {
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (a_[i][t] == 0) continue;
        Int q = nearest_quotient(a_[i][t], a_[t][t]);
        row_addmul_ops(i, t, -q);
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (a_[t][j] == 0) continue;
        Int q = nearest_quotient(a_[t][j], a_[t][t]);
        col_addmul_ops(j, t, -q);
      }
      // Any surviving entry in the pivot row/column is smaller than the pivot.
      std::size_t best_i = 0, best_j = 0;
      Int best;
      bool found = false;
      for (std::size_t i = t + 1; i < rows_; ++i)
        if (a_[i][t] != 0 && (!found || cmpabs(a_[i][t], best) < 0)) {
          best = a_[i][t], best_i = i, best_j = t, found = true;
        }
      for (std::size_t j = t + 1; j < cols_; ++j)
        if (a_[t][j] != 0 && (!found || cmpabs(a_[t][j], best) < 0)) {
          best = a_[t][j], best_i = t, best_j = j, found = true;
        }
      if (found) {
        row_swap(t, best_i);
        col_swap(t, best_j);
        continue;
      }
      if (!fix_divisibility(t)) return;
    }
  }

  // Adds a row holding an entry not divisible by the pivot; returns false when
  // the pivot already divides the whole trailing block.
  bool fix_divisibility(std::size_t t) {
    const Int& p = a_[t][t];
    if (p == 1 || p == -1) return false;
    for (std::size_t i = t + 1; i < rows_; ++i)
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (a_[i][j] != 0 && !mpz_divisible_p(a_[i][j].get_mpz_t(), p.get_mpz_t())) {
          row_addmul_ops(t, i, 1);
          return true;
        }
      }
    return false;
  }

  void row_addmul_ops(std::size_t dst, std::size_t src, const Int& q) {
    row_addmul(a_[dst], a_[src], q);
    if (u_) row_addmul((*u_)[dst], (*u_)[src], q);
  }
  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    if (u_) std::swap((*u_)[i], (*u_)[j]);
  }
  void row_neg(std::size_t i) {
    for (auto& x : a_[i]) x = -x;
    if (u_)
      for (auto& x : (*u_)[i]) x = -x;
  }
  // col_dst += q * col_src
  void col_addmul_ops(std::size_t dst, std::size_t src, const Int& q) {
    for (auto& row : a_)
      if (row[src] != 0) row[dst] += q * row[src];
    if (v_)
      for (auto& row : *v_)
        if (row[src] != 0) row[dst] += q * row[src];
    if (vinv_) row_addmul((*vinv_)[src], (*vinv_)[dst], -q);
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    if (v_)
      for (auto& row : *v_) std::swap(row[i], row[j]);
    if (vinv_) std::swap((*vinv_)[i], (*vinv_)[j]);
  }

  Rows a_;
  std::size_t rows_;
  std::size_t cols_;
  Rows* u_;
  Rows* v_;
  Rows* vinv_;
};

Rows matrix_rows(const IntMatrix& m) {
  Rows r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) r[i] = m.row(i);
  return r;
}

// Incremental echelon insertion shared by the Hermite routines.
class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t width) : width_(width), pivots_(width) {}

  void insert(IntVector r) {
    for (std::size_t c = 0; c < width_; ++c) {
      if (r[c] == 0) continue;
      auto& slot = pivots_[c];
      if (!slot) {
        install(c, std::move(r));
        return;
      }
      Pivot& p = *slot;
      const Int& lead = p.v[c];
      if (mpz_divisible_p(r[c].get_mpz_t(), lead.get_mpz_t())) {
        Int q = r[c] / lead;
        subtract(r, p, q);
        continue;
      }
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), lead.get_mpz_t(), r[c].get_mpz_t());
      Int alpha = lead / g;
      Int beta = r[c] / g;
      IntVector np(width_), nr(width_);
      for (std::size_t k = c; k < width_; ++k) {
        np[k] = s * p.v[k] + t * r[k];
        nr[k] = alpha * r[k] - beta * p.v[k];
      }
      install(c, std::move(np));
      r = std::move(nr);
    }
  }

  HermiteBasis finish() && {
    HermiteBasis out;
    out.width = width_;
    for (std::size_t c = 0; c < width_; ++c) {
      if (!pivots_[c]) continue;
      out.rows.push_back(std::move(pivots_[c]->v));
      out.pivot_columns.push_back(c);
    }
    return out;
  }

 private:
  struct Pivot {
    IntVector v;
    std::vector<std::uint32_t> support;
    void refresh() {
      support.clear();
      for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) support.push_back(static_cast<std::uint32_t>(k));
    }
  };

  static void subtract(IntVector& r, const Pivot& p, const Int& q) {
    for (std::uint32_t k : p.support) r[k] -= q * p.v[k];
  }

  // Reduces entries at pivot columns after `from` into [0, pivot).
  void reduce_tail(IntVector& r, std::size_t from) const {
    for (std::size_t k = from + 1; k < width_; ++k) {
      if (r[k] == 0 || !pivots_[k]) continue;
      const Pivot& p = *pivots_[k];
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), r[k].get_mpz_t(), p.v[k].get_mpz_t());
      if (q != 0) subtract(r, p, q);
    }
  }

  // Keeps the stored rows in reduced Hermite form; without this, tails of
  // pivot rows compound through successive eliminations.
  void install(std::size_t c, IntVector row) {
    if (row[c] < 0)
      for (auto& x : row) x = -x;
    reduce_tail(row, c);
    Pivot p{std::move(row), {}};
    p.refresh();
    pivots_[c] = std::move(p);
    const Pivot& fresh = *pivots_[c];
    for (std::size_t i = 0; i < c; ++i) {
      if (!pivots_[i] || pivots_[i]->v[c] == 0) continue;
      Pivot& above = *pivots_[i];
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), above.v[c].get_mpz_t(), fresh.v[c].get_mpz_t());
      if (q == 0) continue;
      subtract(above.v, fresh, q);
      reduce_tail(above.v, c);
      above.refresh();
    }
  }

  std::size_t width_;
  std::vector<std::optional<Pivot>> pivots_;
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  Rows u = identity_rows(m.rows());
  Rows v = identity_rows(m.cols());
  SmithWork work(matrix_rows(m), m.cols(), &u, &v, nullptr);
  work.run();
  return {to_matrix(work.matrix(), m.cols()), to_matrix(u, m.rows()), to_matrix(v, m.cols())};
}

ColumnSmith smith_column_transform(const IntMatrix& m) {
  std::size_t n = m.cols();
  HermiteBasis h = hermite_basis(m);
  Rows v = identity_rows(n);
  Rows vinv = identity_rows(n);
  SmithWork work(std::move(h.rows), n, nullptr, &v, &vinv);
  work.run();
  ColumnSmith out;
  out.diagonal.assign(n, Int(0));
  Rows& d = work.matrix();
  for (std::size_t i = 0; i < d.size() && i < n; ++i) out.diagonal[i] = d[i][i];
  out.v = to_matrix(v, n);
  out.v_inverse = to_matrix(vinv, n);
  return out;
}

IntMatrix HermiteBasis::matrix() const { return IntMatrix::from_rows(rows, width); }

HermiteBasis hermite_basis(const IntMatrix& m) {
  EchelonBuilder b(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto entries = m.row_entries(r);
    if (entries.empty()) continue;
    IntVector row(m.cols());
    for (auto& [c, v] : entries) row[c] = std::move(v);
    b.insert(std::move(row));
  }
  return std::move(b).finish();
}

HermiteBasis hermite_basis(std::span<const IntVector> rows, std::size_t width) {
  EchelonBuilder b(width);
  for (const auto& r : rows) {
    if (r.size() != width) throw StructuralError("lattice generator has wrong width");
    if (!is_zero(r)) b.insert(r);
  }
  return std::move(b).finish();
}

std::optional<IntVector> solve_in_lattice(const HermiteBasis& basis, std::span<const Int> target) {
  if (target.size() != basis.width) throw StructuralError("target width does not match lattice");
  IntVector residual(target.begin(), target.end());
  IntVector coeffs(basis.rank());
  std::size_t k = 0;
  for (std::size_t c = 0; c < basis.width; ++c) {
    if (residual[c] == 0) {
      if (k < basis.rank() && basis.pivot_columns[k] == c) ++k;
      continue;
    }
    if (k >= basis.rank() || basis.pivot_columns[k] != c) return std::nullopt;
    const Int& lead = basis.rows[k][c];
    if (!mpz_divisible_p(residual[c].get_mpz_t(), lead.get_mpz_t())) return std::nullopt;
    coeffs[k] = residual[c] / lead;
    row_addmul(residual, basis.rows[k], -coeffs[k], c);
    ++k;
  }
  return coeffs;
}

HermiteTransform hermite_with_transform(const IntMatrix& m) {
  Rows a = matrix_rows(m);
  std::size_t rows = m.rows(), cols = m.cols();
  Rows t = identity_rows(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || cmpabs(a[i][c], a[best][c]) < 0)) best = i;
      if (best == rows) break;
      std::swap(a[r], a[best]);
      std::swap(t[r], t[best]);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Int q = nearest_quotient(a[i][c], a[r][c]);
        row_addmul(a[i], a[r], -q);
        row_addmul(t[i], t[r], -q);
        if (a[i][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (r < rows && a[r][c] != 0) {
      if (a[r][c] < 0) {
        for (auto& x : a[r]) x = -x;
        for (auto& x : t[r]) x = -x;
      }
      ++r;
    }
  }
  return {to_matrix(a, cols), to_matrix(t, rows), r};
}

HermiteBasis left_kernel(const IntMatrix& m) {
  HermiteTransform ht = hermite_with_transform(m);
  std::vector<IntVector> kernel;
  for (std::size_t i = ht.rank; i < m.rows(); ++i) kernel.push_back(ht.t.row(i));
  return hermite_basis(kernel, m.rows());
}

}  // namespace rbloch
