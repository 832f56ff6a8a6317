#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rbloch/int_matrix.hpp"

namespace rbloch {

/// U * m * V == D with U, V unimodular and D diagonal, its nonzero diagonal
/// entries positive and forming a divisibility chain followed by zeros.
struct SmithForm {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};

/// Full Smith normal form with both transforms. Pivots on the entry of least
/// absolute value. Deterministic.
SmithForm smith_normal_form(const IntMatrix& m);

/// Smith data sufficient to work in the quotient Z^cols / rowspace(m):
/// diagonal has one entry per column (zeros past the rank), and x * v gives
/// coordinates in the Smith basis whose i-th vector is row i of v_inverse.
struct ColumnSmith {
  IntVector diagonal;
  IntMatrix v;
  IntMatrix v_inverse;
};

/// Reduces the rows of m to a Hermite basis first, so tall sparse relation
/// matrices cost O(cols^2) storage in the Smith phase.
ColumnSmith smith_column_transform(const IntMatrix& m);

/// Row-style Hermite basis of a lattice: rows in echelon form, positive pivots,
/// entries above each pivot reduced into [0, pivot). Canonical for the lattice.
struct HermiteBasis {
  std::size_t width = 0;
  std::vector<IntVector> rows;
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const noexcept { return rows.size(); }
  IntMatrix matrix() const;
  friend bool operator==(const HermiteBasis&, const HermiteBasis&) = default;
};

HermiteBasis hermite_basis(const IntMatrix& m);
HermiteBasis hermite_basis(std::span<const IntVector> rows, std::size_t width);

/// Coefficients c with c * basis == target, or nullopt when target lies
/// outside the lattice.
std::optional<IntVector> solve_in_lattice(const HermiteBasis& basis, std::span<const Int> target);

/// T * m == H with T unimodular and H in row echelon form; rows of H from
/// `rank` onward are zero, so the matching rows of T span the left kernel.
struct HermiteTransform {
  IntMatrix h;
  IntMatrix t;
  std::size_t rank = 0;
};

HermiteTransform hermite_with_transform(const IntMatrix& m);

/// Hermite basis of {x : x * m == 0}.
HermiteBasis left_kernel(const IntMatrix& m);

}  // namespace rbloch
