#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Small exact integer/rational linear algebra used by the root-datum layer.
// Everything here is desk scale: dimensions are single digits, entries small.

namespace grcycle {

using Int = long long;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row major

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline IntVec vec_add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec vec_sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec vec_scale(const IntVec& a, Int c) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline IntVec vec_neg(const IntVec& a) { return vec_scale(a, -1); }

inline bool vec_is_zero(const IntVec& a) {
  return std::all_of(a.begin(), a.end(), [](Int x) { return x == 0; });
}

inline Int vec_l1(const IntVec& a) {
  Int s = 0;
  for (Int x : a) s += x < 0 ? -x : x;
  return s;
}

inline IntMat mat_identity(std::size_t n) {
  IntMat m(n, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntVec mat_apply(const IntMat& m, const IntVec& v) {
  IntVec r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  return r;
}

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMat r(n, IntVec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

inline IntMat mat_transpose(const IntMat& a) {
  std::size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  IntMat r(m, IntVec(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

// Solve M x = b over the rationals by Gaussian elimination.
// Returns false when the system is inconsistent; when the solution space is
// positive dimensional an arbitrary member is produced (free variables 0).
inline bool solve_rational(const IntMat& m, const IntVec& b, std::vector<BigRat>& out) {
  std::size_t rows = m.size(), cols = m.empty() ? 0 : m[0].size();
  std::vector<std::vector<BigRat>> a(rows, std::vector<BigRat>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m[i][j];
    a[i][cols] = b[i];
  }
  std::vector<long> pivot_col(rows, -1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    BigRat inv = a[r][c];
    for (std::size_t j = c; j <= cols; ++j) a[r][j] /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      BigRat f = a[i][c];
      for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col[r] = static_cast<long>(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0) return false;
  out.assign(cols, BigRat(0));
  for (std::size_t i = 0; i < r; ++i) out[static_cast<std::size_t>(pivot_col[i])] = a[i][cols];
  return true;
}

// True when every entry is an integer; writes the integer vector.
inline bool rational_to_int(const std::vector<BigRat>& v, IntVec& out) {
  out.assign(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (boost::multiprecision::denominator(v[i]) != 1) return false;
    BigInt n = boost::multiprecision::numerator(v[i]);
    out[i] = static_cast<Int>(n);
  }
  return true;
}

// Smith normal form over Z: returns (U, D, V) with U*A*V = D diagonal.
// Uses cpp_int internally so intermediate growth is harmless.
struct SmithResult {
  std::vector<std::vector<BigInt>> u, d, v;
};

inline SmithResult smith_normal_form(const IntMat& a0) {
  std::size_t rows = a0.size(), cols = a0.empty() ? 0 : a0[0].size();
  SmithResult s;
  s.d.assign(rows, std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) s.d[i][j] = a0[i][j];
  s.u.assign(rows, std::vector<BigInt>(rows, 0));
  s.v.assign(cols, std::vector<BigInt>(cols, 0));
  for (std::size_t i = 0; i < rows; ++i) s.u[i][i] = 1;
  for (std::size_t j = 0; j < cols; ++j) s.v[j][j] = 1;
  auto& d = s.d;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot in the lower-right block
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < rows && !found; ++i)
      for (std::size_t j = t; j < cols && !found; ++j)
        if (d[i][j] != 0) { pi = i; pj = j; found = true; }
    if (!found) break;
    std::swap(d[pi], d[t]);
    std::swap(s.u[pi], s.u[t]);
    if (pj != t) {
      for (std::size_t i = 0; i < rows; ++i) std::swap(d[i][pj], d[i][t]);
      for (std::size_t i = 0; i < cols; ++i) std::swap(s.v[i][pj], s.v[i][t]);
    }
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d[i][t] == 0) continue;
        BigInt q = d[i][t] / d[t][t];
        for (std::size_t j = 0; j < cols; ++j) d[i][j] -= q * d[t][j];
        for (std::size_t j = 0; j < rows; ++j) s.u[i][j] -= q * s.u[t][j];
        if (d[i][t] != 0) {
          std::swap(d[i], d[t]);
          std::swap(s.u[i], s.u[t]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d[t][j] == 0) continue;
        BigInt q = d[t][j] / d[t][t];
        for (std::size_t i = 0; i < rows; ++i) d[i][j] -= q * d[i][t];
        for (std::size_t i = 0; i < cols; ++i) s.v[i][j] -= q * s.v[i][t];
        if (d[t][j] != 0) {
          for (std::size_t i = 0; i < rows; ++i) std::swap(d[i][j], d[i][t]);
          for (std::size_t i = 0; i < cols; ++i) std::swap(s.v[i][j], s.v[i][t]);
          clean = false;
        }
      }
    }
    ++t;
  }
  return s;
}

}  // namespace grcycle
