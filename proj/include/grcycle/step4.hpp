#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "errors.hpp"
#include "lattice.hpp"
#include "series_matrix.hpp"

// GL_n coordinate families inside the nabla locus over a Schubert cell, and
// the adjoint slope condition on unipotent group elements.

namespace grcycle {

struct Step4Root {
  int i = 0, j = 0;   // root e_i - e_j, matrix entry (i, j)
  Int pairing = 0;    // <e_i - e_j, lam> = lam_i - lam_j
  int n_free = 0;     // min{e, pairing} free coefficients
};

// The roots entering the cell coordinates for u^lam, ordered by increasing
// pairing (the solve below is triangular in this order).
inline std::vector<Step4Root> step4_roots(const IntVec& lam, int e) {
  std::vector<Step4Root> roots;
  int n = static_cast<int>(lam.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Int pr = lam[static_cast<std::size_t>(i)] - lam[static_cast<std::size_t>(j)];
      if (pr > 0) roots.push_back({i, j, pr, static_cast<int>(std::min<Int>(e, pr))});
    }
  std::stable_sort(roots.begin(), roots.end(), [](const Step4Root& a, const Step4Root& b) {
    if (a.pairing != b.pairing) return a.pairing < b.pairing;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  return roots;
}

namespace detail {

template <class K>
SeriesMatrix<K> assemble_cell_point(const IntVec& lam, const std::vector<Step4Root>& roots,
                                    const std::vector<std::vector<K>>& coeffs, K one) {
  int n = static_cast<int>(lam.size());
  SeriesMatrix<K> g = SeriesMatrix<K>::identity(n);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    Poly<K> a(coeffs[k]);
    g = g * root_group_element<K>(n, roots[k].i, roots[k].j, Frac<K>::of(a));
  }
  return g * diag_u_powers<K>(lam, one);
}

}  // namespace detail

// A point of the cell over u^lam satisfying the nabla condition on the
// special fibre: free coefficients are the constant term and the top e-1
// coefficients of each root coordinate; the interior coefficients are the
// solved corrections.  free[k] holds the n_free values for step4_roots[k],
// ordered (a_0, a_{pairing-1}, a_{pairing-2}, ..., a_{pairing-e+1}).
template <class K, class Ctx>
SeriesMatrix<K> step4_family(const IntVec& lam, int e, const std::vector<std::vector<K>>& free,
                             const Ctx& ctx) {
  int n = static_cast<int>(lam.size());
  if (n < 2 || n > 3) throw InputError("step4_family supports GL_2 and GL_3");
  for (std::size_t k = 0; k + 1 < lam.size(); ++k)
    if (lam[k] < lam[k + 1]) throw InputError("step4_family needs a dominant cocharacter");
  if (e < 1) throw InputError("e must be positive");
  std::vector<Step4Root> roots = step4_roots(lam, e);
  if (free.size() != roots.size())
    throw InputError("expected free coefficients for " + std::to_string(roots.size()) + " roots");
  Int p = ctx.characteristic();
  for (const Step4Root& r : roots) {
    if (static_cast<int>(free[&r - roots.data()].size()) != r.n_free)
      throw InputError("wrong number of free coefficients for a root");
    if (p > 0 && r.pairing - e + 1 >= p)
      throw InputError("field characteristic too small for this cell");
  }

  EConfig<K> ec = EConfig<K>::special_fibre(e);
  // coefficient vectors a_gamma of length pairing (degrees 0..pairing-1)
  std::vector<std::vector<K>> coeffs(roots.size());
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Step4Root& r = roots[k];
    std::vector<K>& a = coeffs[k];
    a.assign(static_cast<std::size_t>(r.pairing), K(0));
    a[0] = free[k][0];
    for (int t = 1; t < r.n_free; ++t)
      a[static_cast<std::size_t>(r.pairing - t)] = free[k][static_cast<std::size_t>(t)];
  }

  // Solve the interior coefficients root by root; corrections for a root
  // only involve roots of strictly smaller pairing, so one pass suffices.
  for (std::size_t k = 0; k < roots.size(); ++k) {
    const Step4Root& r = roots[k];
    if (r.pairing <= e) continue;  // nothing to solve
    SeriesMatrix<K> x = detail::assemble_cell_point(lam, roots, coeffs, ctx.from_int(1));
    SeriesMatrix<K> m = dlog_u(x).scale(Frac<K>::of(ec.E));
    const Frac<K>& entry = m.at(r.i, r.j);
    if (entry.is_zero()) continue;
    if (!entry.is_u_laurent())
      throw InputError("internal: cell point produced a non-Laurent dlog entry");
    for (int d = entry.laurent_mindeg(); d < 0; ++d) {
      K w = entry.laurent_coeff(d);
      if (field_is_zero(w)) continue;
      int s = d + static_cast<int>(r.pairing) - e;  // coefficient degree of a' + C
      if (s < 0 || s + 1 >= static_cast<int>(r.pairing))
        throw InputError("internal: negative-degree term outside the solvable window");
      // bump a at degree s+1 so (a' + C) loses its degree-s term
      K denom = ctx.from_int(s + 1);
      coeffs[k][static_cast<std::size_t>(s + 1)] =
          coeffs[k][static_cast<std::size_t>(s + 1)] - w / denom;
    }
  }

  SeriesMatrix<K> x = detail::assemble_cell_point(lam, roots, coeffs, ctx.from_int(1));
  if (!in_nabla(x, ec))
    throw InputError("internal: solved cell point fails the nabla condition");
  return x;
}

// Ad(g0^{-1}) H - H is supported exactly on the simple root spaces with all
// simple coefficients nonzero.  H must be regular diagonal, g0 upper
// unitriangular.
template <class K>
bool adjoint_slope_check(const ConstMat<K>& h, const ConstMat<K>& g0) {
  std::size_t n = h.size();
  if (g0.size() != n) throw InputError("matrix sizes disagree");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !field_is_zero(h[i][j]))
        throw InputError("H must be diagonal");
      if (i == j && !(g0[i][j] == K(1)))
        throw InputError("g0 must be upper unitriangular");
      if (i > j && !field_is_zero(g0[i][j]))
        throw InputError("g0 must be upper unitriangular");
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (h[i][i] == h[j][j])
        throw InputError("H must be regular (distinct diagonal entries)");
  ConstMat<K> ad = const_mul(const_mul(const_inverse(g0), h), g0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      K diff = ad[i][j] - h[i][j];
      if (j == i + 1) {
        if (field_is_zero(diff)) return false;
      } else if (i != j) {
        if (!field_is_zero(diff)) return false;
      } else if (!field_is_zero(diff)) {
        throw InputError("internal: conjugation moved the diagonal");
      }
    }
  return true;
}

}  // namespace grcycle
