#include "subsum/integer_matrix.hpp"

#include "subsum/error.hpp"

namespace subsum {

std::size_t rank(const IntMatrix& rows) { return bareiss_rank<Integer>(rows); }

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVector primitive(const IntVector& v) {
  Integer g = content(v);
  if (g == 0) return v;
  IntVector out = v;
  for (auto& x : out) x /= g;
  for (const auto& x : out) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : out) y = -y;
    break;
  }
  return out;
}

Integer determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sgn_flip = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(m[piv], m[k]);
      sgn_flip = -sgn_flip;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  return sgn_flip * m[n - 1][n - 1];
}

IntMatrix hermite_basis(const IntMatrix& rows, std::size_t dim) {
  IntMatrix m;
  for (const auto& r : rows) {
    if (r.size() != dim) fail(ErrorKind::DomainMismatch, "hermite_basis: row length mismatch");
    m.push_back(r);
  }
  IntMatrix out;
  std::size_t top = 0;
  for (std::size_t c = 0; c < dim && top < m.size(); ++c) {
    // Euclid on column c among rows [top, end) until one nonzero remains.
    while (true) {
      std::size_t best = m.size();
      for (std::size_t i = top; i < m.size(); ++i)
        if (m[i][c] != 0 && (best == m.size() || abs(m[i][c]) < abs(m[best][c]))) best = i;
      if (best == m.size()) break;
      std::swap(m[top], m[best]);
      bool done = true;
      for (std::size_t i = top + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[top][c].get_mpz_t());
        for (std::size_t j = c; j < dim; ++j) m[i][j] -= q * m[top][j];
        if (m[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (m[top][c] == 0) continue;
    if (m[top][c] < 0)
      for (auto& x : m[top]) x = -x;
    ++top;
  }
  m.resize(top);
  // Reduce entries above pivots.
  for (std::size_t k = 0; k < m.size(); ++k) {
    std::size_t pc = 0;
    while (m[k][pc] == 0) ++pc;
    for (std::size_t i = 0; i < k; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m[i][pc].get_mpz_t(), m[k][pc].get_mpz_t());
      if (q != 0)
        for (std::size_t j = pc; j < dim; ++j) m[i][j] -= q * m[k][j];
    }
  }
  out = std::move(m);
  return out;
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& v) {
  IntVector rest = v;
  IntVector coeff(basis.size(), Integer(0));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    std::size_t pc = 0;
    while (basis[k][pc] == 0) ++pc;
    for (std::size_t j = 0; j < pc; ++j)
      if (rest[j] != 0) return std::nullopt;
    if (!mpz_divisible_p(rest[pc].get_mpz_t(), basis[k][pc].get_mpz_t())) return std::nullopt;
    coeff[k] = rest[pc] / basis[k][pc];
    for (std::size_t j = pc; j < rest.size(); ++j) rest[j] -= coeff[k] * basis[k][j];
  }
  for (const auto& x : rest)
    if (x != 0) return std::nullopt;
  return coeff;
}

std::optional<IntVector> primitive_normal(const IntMatrix& rows) {
  if (rows.empty()) return std::nullopt;
  const std::size_t r = rows[0].size();
  if (rows.size() + 1 != r) fail(ErrorKind::InvalidArgument, "primitive_normal needs r-1 vectors in Z^r");
  // Generalized cross product: n_i = (-1)^i det(rows with column i deleted).
  IntVector n(r);
  for (std::size_t i = 0; i < r; ++i) {
    IntMatrix minor;
    for (const auto& row : rows) {
      IntVector m;
      for (std::size_t j = 0; j < r; ++j)
        if (j != i) m.push_back(row[j]);
      minor.push_back(std::move(m));
    }
    Integer d = determinant(std::move(minor));
    n[i] = (i % 2 == 0) ? d : Integer(-d);
  }
  if (content(n) == 0) return std::nullopt;
  return primitive(n);
}

}  // namespace subsum
