#pragma once

// Exact integer linear algebra on small dense matrices (rows are vectors).

#include <cstdint>
#include <optional>
#include <vector>

#include "subsum/scalar.hpp"

namespace subsum {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

// Fraction-free Gaussian elimination (Bareiss). T is std::int64_t or Integer;
// the int64 instantiation is only safe for small entries (callers keep
// |entries| tiny, e.g. grid searches).
template <class T>
std::size_t bareiss_rank(std::vector<std::vector<T>> m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  T prev = 1;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        T v = m[rank][c] * m[i][j] - m[i][c] * m[rank][j];
        m[i][j] = v / prev;
      }
      m[i][c] = 0;
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t rank(const IntMatrix& rows);

// Row-style Hermite normal form of the lattice spanned by `rows`: nonzero
// rows only, pivots positive and strictly increasing in column, entries above
// each pivot reduced into [0, pivot).
IntMatrix hermite_basis(const IntMatrix& rows, std::size_t dim);

// Coefficients c with sum_j c_j * basis[j] = v, if v lies in the lattice.
// `basis` must be in hermite_basis form.
std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& v);

// Primitive integer normal of the hyperplane spanned by r-1 vectors in Z^r,
// sign-normalized so the first nonzero entry is positive; nullopt when the
// vectors are dependent.
std::optional<IntVector> primitive_normal(const IntMatrix& rows);

Integer determinant(IntMatrix m);
Integer content(const IntVector& v);  // gcd of entries, 0 for the zero vector
IntVector primitive(const IntVector& v);

}  // namespace subsum
