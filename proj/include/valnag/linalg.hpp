#pragma once

#include "valnag/rational.hpp"

#include <optional>
#include <vector>

namespace valnag {

using RationalMatrix = std::vector<std::vector<Rational>>;

inline bool is_symmetric(const RationalMatrix& m) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != m.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (m[i][j] != m[j][i]) return false;
  }
  return true;
}

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Rational prev = 1;
  int swaps = 0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      ++swaps;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  Rational det = m[n - 1][n - 1];
  return swaps % 2 ? Rational(-det) : det;
}

/// det(A[0..k, 0..k]) for k = 0..n-1.
inline std::vector<Rational> leading_principal_minors(const RationalMatrix& a) {
  std::vector<Rational> minors;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    RationalMatrix sub(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[i][j];
    minors.push_back(determinant(std::move(sub)));
  }
  return minors;
}

/// Exact negative-definiteness test: (-1)^k * minor_k > 0 for every leading
/// principal minor. The empty matrix counts as negative definite.
inline bool negative_definite(const RationalMatrix& gram) {
  if (!is_symmetric(gram)) throw InvalidInput("negative_definite: matrix is not symmetric");
  auto minors = leading_principal_minors(gram);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    int expected = (k % 2 == 0) ? -1 : 1;  // minor of size k+1
    if (sign(minors[k]) != expected) return false;
  }
  return true;
}

/// Solves A x = b exactly by fraction-free elimination on the augmented matrix.
/// Returns nullopt when A is singular.
inline std::optional<std::vector<Rational>> solve(RationalMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InvalidInput("solve: dimension mismatch");
  for (std::size_t i = 0; i < n; ++i) a[i].push_back(b[i]);
  Rational prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return std::nullopt;
      std::swap(a[k], a[p]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  std::vector<Rational> x(n);
  for (std::size_t i = n; i-- > 0;) {
    Rational acc = a[i][n];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace valnag
