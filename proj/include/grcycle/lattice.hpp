#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "bmcycles.hpp"
#include "errors.hpp"
#include "series_matrix.hpp"

// GL_n lattices in the affine Grassmannian: exterior-power Schubert bounds,
// relative position by elementary divisors, the Frobenius-matrix point, and
// the flag-to-lattice embedding of the generic fibre.

namespace grcycle {

template <class K>
struct Lattice {
  SeriesMatrix<K> gen;  // columns span the lattice over A[u]

  int size() const { return gen.size(); }
};

// Constant matrices over K, used for flag bases and adjoint computations.
template <class K>
using ConstMat = std::vector<std::vector<K>>;

template <class K>
ConstMat<K> const_identity(int n) {
  ConstMat<K> m(static_cast<std::size_t>(n), std::vector<K>(static_cast<std::size_t>(n), K(0)));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = K(1);
  return m;
}

template <class K>
ConstMat<K> const_mul(const ConstMat<K>& a, const ConstMat<K>& b) {
  std::size_t n = a.size();
  ConstMat<K> r(n, std::vector<K>(n, K(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (field_is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < n; ++j) r[i][j] = r[i][j] + a[i][k] * b[k][j];
    }
  return r;
}

// Gaussian inverse over the field; throws on singular input.
template <class K>
ConstMat<K> const_inverse(const ConstMat<K>& m0) {
  std::size_t n = m0.size();
  ConstMat<K> a = m0;
  ConstMat<K> inv = const_identity<K>(static_cast<int>(n));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && field_is_zero(a[piv][c])) ++piv;
    if (piv == n) throw InputError("constant matrix is singular");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    K f = field_inv(a[c][c]);
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] = a[c][j] * f;
      inv[c][j] = inv[c][j] * f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || field_is_zero(a[i][c])) continue;
      K g = a[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[i][j] = a[i][j] - g * a[c][j];
        inv[i][j] = inv[i][j] - g * inv[c][j];
      }
    }
  }
  return inv;
}

template <class K>
SeriesMatrix<K> embed_const(const ConstMat<K>& m) {
  int n = static_cast<int>(m.size());
  SeriesMatrix<K> r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      r.at(i, j) = Frac<K>::constant(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  return r;
}

namespace detail {

// valuation at a point, with decidability bookkeeping for truncated input
template <class K>
struct EntryVal {
  bool visible_zero = false;
  long long val = 0;
};

template <class K>
EntryVal<K> entry_val_at0(const Frac<K>& f) {
  EntryVal<K> r;
  if (f.is_zero()) {
    r.visible_zero = true;
    return r;
  }
  r.val = f.valuation0();
  return r;
}

}  // namespace detail

// Elementary-divisor exponents of the column lattice at the place u = c,
// sorted dominant (weakly decreasing).  Truncated matrices are supported at
// c = 0 only.
template <class K>
IntVec relative_position_at(const Lattice<K>& lat, const K& c) {
  const SeriesMatrix<K>& g0 = lat.gen;
  if (!g0.exact() && !field_is_zero(c))
    throw PrecisionError("relative position away from u = 0 needs exact entries");
  int n = g0.size();
  std::vector<std::vector<Frac<K>>> m(static_cast<std::size_t>(n),
                                      std::vector<Frac<K>>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g0.at(i, j);
  const long long prec = g0.prec();
  const Poly<K> lin(std::vector<K>{K(0) - c, K(1)});
  IntVec exps;
  std::vector<bool> used_row(static_cast<std::size_t>(n), false),
      used_col(static_cast<std::size_t>(n), false);
  for (int step = 0; step < n; ++step) {
    long long best = kExactPrec;
    int bi = -1, bj = -1;
    for (int i = 0; i < n; ++i) {
      if (used_row[static_cast<std::size_t>(i)]) continue;
      for (int j = 0; j < n; ++j) {
        if (used_col[static_cast<std::size_t>(j)]) continue;
        const Frac<K>& f = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (f.is_zero()) continue;
        long long v = f.valuation_at(c);
        if (v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    }
    // a pivot valuation is only trustworthy strictly below the precision mark
    if (!g0.exact() && best >= prec)
      throw PrecisionError("pivot valuation reaches the precision mark");
    if (bi < 0)
      throw InputError("generator matrix is singular over the local ring");
    exps.push_back(static_cast<Int>(best));
    used_row[static_cast<std::size_t>(bi)] = true;
    used_col[static_cast<std::size_t>(bj)] = true;
    const Frac<K>& pivot = m[static_cast<std::size_t>(bi)][static_cast<std::size_t>(bj)];
    for (int i = 0; i < n; ++i) {
      if (used_row[static_cast<std::size_t>(i)]) continue;
      Frac<K>& target = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(bj)];
      if (target.is_zero()) continue;
      Frac<K> f = target / pivot;  // valuation >= 0 at c
      for (int j = 0; j < n; ++j) {
        if (used_col[static_cast<std::size_t>(j)]) continue;
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
            f * m[static_cast<std::size_t>(bi)][static_cast<std::size_t>(j)];
      }
      target = Frac<K>();
    }
    for (int j = 0; j < n; ++j) {
      if (used_col[static_cast<std::size_t>(j)]) continue;
      Frac<K>& target = m[static_cast<std::size_t>(bi)][static_cast<std::size_t>(j)];
      if (target.is_zero()) continue;
      target = Frac<K>();  // column clearing does not affect later pivots' valuations
    }
  }
  std::sort(exps.begin(), exps.end(), std::greater<Int>());
  return exps;
}

template <class K>
IntVec relative_position(const Lattice<K>& lat) {
  return relative_position_at(lat, K(0));
}

namespace detail {

// f lies in prod_i (u - pi_i)^{s_i} A[u]; exact entries only
template <class K>
bool divisibility_exact(const Frac<K>& f, const EConfig<K>& ec, const std::vector<Int>& s) {
  if (f.is_zero()) return true;
  Frac<K> divisor = Frac<K>::constant(K(1));
  if (ec.special) {
    Int total = 0;
    for (Int si : s) total += si;
    divisor = Frac<K>::monomial(K(1), static_cast<int>(total));
  } else {
    for (std::size_t i = 0; i < ec.pis.size(); ++i) {
      Frac<K> lin = Frac<K>::of(Poly<K>(std::vector<K>{K(0) - ec.pis[i], K(1)}));
      Int si = s[i];
      for (Int k = 0; k < (si > 0 ? si : -si); ++k)
        divisor = (si > 0) ? divisor * lin : divisor / lin;
    }
  }
  return (f / divisor).is_polynomial();
}

}  // namespace detail

// Exterior-power Schubert bound: for every j, each j x j minor of the
// generator matrix is divisible by prod_i (u - pi_i)^{mu_{i,n}+...+mu_{i,n-j+1}}.
template <class K>
bool wedge_condition(const Lattice<K>& lat, const HodgeType& h, const EConfig<K>& ec) {
  const SeriesMatrix<K>& g = lat.gen;
  int n = g.size();
  if (n > 4) throw CapExceeded("wedge condition supports n <= 4");
  if (h.e != ec.e || static_cast<int>(h.mus.size()) != ec.e)
    throw InputError("Hodge type and E-configuration disagree on e");
  for (const IntVec& mu : h.mus) {
    if (static_cast<int>(mu.size()) != n)
      throw InputError("Hodge type entries must be n-tuples");
    for (std::size_t k = 0; k + 1 < mu.size(); ++k)
      if (mu[k] < mu[k + 1]) throw InputError("Hodge type entries must be dominant n-tuples");
  }
  if (!g.exact() && !ec.special)
    throw PrecisionError("generic-fibre wedge bounds need exact entries");

  std::vector<int> idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (int j = 1; j <= n; ++j) {
    std::vector<Int> s(ec.special ? 1 : ec.pis.size(), 0);
    Int total = 0;
    for (int i = 0; i < ec.e; ++i) {
      Int si = 0;
      for (int k = n - j; k < n; ++k) si += h.mus[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      total += si;
      if (!ec.special) s[static_cast<std::size_t>(i)] = si;
    }
    if (ec.special) s[0] = total;
    // all j-subsets of rows and columns
    std::vector<std::vector<int>> subsets;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(pick.size()) == j) {
        subsets.push_back(pick);
        return;
      }
      for (int v = start; v < n; ++v) {
        pick.push_back(v);
        rec(v + 1);
        pick.pop_back();
      }
    };
    rec(0);
    for (const auto& rset : subsets) {
      for (const auto& cset : subsets) {
        Frac<K> minor = g.minor_det(rset, cset);
        if (g.exact()) {
          if (!detail::divisibility_exact(minor, ec, s)) return false;
          continue;
        }
        // truncated, special fibre: u-valuation against the precision mark
        long long mprec =
            prec_clamp(g.prec() + (static_cast<long long>(j) - 1) *
                                      std::min<long long>(0, g.min_degree()));
        if (!minor.is_zero()) {
          if (!minor.is_u_laurent())
            throw InputError("truncated matrices must have u-Laurent entries");
          for (int d = minor.laurent_mindeg(); d < total && d < minor.laurent_maxdeg() + 1; ++d) {
            if (d >= mprec) break;
            if (!field_is_zero(minor.laurent_coeff(d))) return false;
          }
        }
        if (mprec < total)
          throw PrecisionError("precision " + std::to_string(g.prec()) +
                               " cannot certify a valuation bound of " + std::to_string(total));
      }
    }
  }
  return true;
}

// The Gr-point of a Frobenius matrix: the column lattice of C.  The matrix
// must be a legitimate trivialisation off E(u): det C vanishes only along E.
template <class K>
Lattice<K> psi_of_frobenius(const SeriesMatrix<K>& c, const EConfig<K>& ec) {
  if (c.exact()) {
    Frac<K> d = c.det();
    if (d.is_zero()) throw InputError("Frobenius matrix is singular");
    // strip the allowed factors; anything left of positive degree is a
    // zero/pole away from E
    Poly<K> num = d.num(), den = d.den();
    auto strip = [](Poly<K>& p, const Poly<K>& lin) {
      while (true) {
        Poly<K> q, r;
        Poly<K>::divrem(p, lin, q, r);
        if (!r.is_zero()) break;
        p = q;
      }
    };
    // the only allowed zeros/poles are the places dividing E(u)
    std::vector<Poly<K>> lins;
    if (ec.special)
      lins.push_back(Poly<K>(std::vector<K>{K(0), K(1)}));
    for (const K& pi : ec.pis) lins.push_back(Poly<K>(std::vector<K>{K(0) - pi, K(1)}));
    for (const auto& lin : lins) {
      strip(num, lin);
      strip(den, lin);
    }
    if (num.degree() > 0 || den.degree() > 0)
      throw InputError("det C vanishes away from E(u)");
  } else {
    if (!ec.special)
      throw PrecisionError("generic-fibre Frobenius matrices need exact entries");
    detail::certified_monomial_det_valuation(c);  // throws when not along E
  }
  return Lattice<K>{c};
}

// One filtration of the standard n-space: a flag basis (columns) and the
// dominant jump type; basis column k carries jump type[k].
template <class K>
struct Filtration {
  ConstMat<K> basis;
  IntVec type;
};

namespace detail {

// Column Hermite reduction over F[u]: bring an n x m polynomial generator
// collection (m >= n, rank n) to a lower-triangular n x n basis with monic
// pivots.  Columns span the same F[u]-module throughout.
template <class K>
std::vector<std::vector<Poly<K>>> column_hermite(std::vector<std::vector<Poly<K>>> cols, int n) {
  int m = static_cast<int>(cols.size());
  if (m < n) throw InputError("not enough generators for a full-rank lattice");
  for (int r = 0; r < n; ++r) {
    while (true) {
      int best = -1;
      for (int c = r; c < m; ++c) {
        const Poly<K>& p = cols[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)];
        if (p.is_zero()) continue;
        if (best < 0 ||
            p.degree() < cols[static_cast<std::size_t>(best)][static_cast<std::size_t>(r)].degree())
          best = c;
      }
      if (best < 0) throw InputError("generator collection is not of full rank");
      std::swap(cols[static_cast<std::size_t>(best)], cols[static_cast<std::size_t>(r)]);
      bool clean = true;
      const std::vector<Poly<K>>& pivot = cols[static_cast<std::size_t>(r)];
      for (int c = r + 1; c < m; ++c) {
        std::vector<Poly<K>>& col = cols[static_cast<std::size_t>(c)];
        if (col[static_cast<std::size_t>(r)].is_zero()) continue;
        Poly<K> q, rem;
        Poly<K>::divrem(col[static_cast<std::size_t>(r)], pivot[static_cast<std::size_t>(r)], q, rem);
        for (int i = 0; i < n; ++i)
          col[static_cast<std::size_t>(i)] =
              col[static_cast<std::size_t>(i)] - q * pivot[static_cast<std::size_t>(i)];
        if (!col[static_cast<std::size_t>(r)].is_zero()) clean = false;
      }
      if (clean) break;
    }
    // monic pivot for determinism
    std::vector<Poly<K>>& pcol = cols[static_cast<std::size_t>(r)];
    K lead = pcol[static_cast<std::size_t>(r)].leading();
    if (!(lead == K(1))) {
      K inv = field_inv(lead);
      for (int i = 0; i < n; ++i) {
        std::vector<K> c = pcol[static_cast<std::size_t>(i)].coeffs();
        for (auto& x : c) x = x * inv;
        pcol[static_cast<std::size_t>(i)] = Poly<K>(std::move(c));
      }
    }
  }
  cols.resize(static_cast<std::size_t>(n));
  return cols;
}

}  // namespace detail

// The lattice attached to an e-tuple of filtrations on the generic fibre:
// localisation at pi_i is B_i diag((u-pi_i)^{type}) B_i^{-1} A[[u-pi_i]]^n,
// standard elsewhere, so the local relative position over pi_i is exactly
// the declared type.  Built as the intersection of the per-place lattices
// through the dual-lattice sum: L = (L_1^v + ... + L_e^v)^v.
template <class K>
Lattice<K> flag_to_lattice(const std::vector<Filtration<K>>& fils, const EConfig<K>& ec) {
  if (ec.special) throw InputError("flag embeddings live on the generic fibre");
  if (static_cast<int>(fils.size()) != ec.e)
    throw InputError("expected " + std::to_string(ec.e) + " filtrations");
  int n = static_cast<int>(fils.front().basis.size());

  // Per-place generator matrices for the types shifted into the nonnegative
  // range (so each local lattice sits inside the standard one); the central
  // shift is undone at the end by a scalar.
  std::vector<SeriesMatrix<K>> locals;
  Poly<K> f = Poly<K>::constant(K(1));
  Frac<K> unshift = Frac<K>::constant(K(1));
  for (int i = 0; i < ec.e; ++i) {
    const Filtration<K>& fil = fils[static_cast<std::size_t>(i)];
    if (static_cast<int>(fil.basis.size()) != n || static_cast<int>(fil.type.size()) != n)
      throw InputError("filtration size disagrees with the matrix size");
    for (std::size_t k = 0; k + 1 < fil.type.size(); ++k)
      if (fil.type[k] < fil.type[k + 1])
        throw InputError("filtration jump types must be dominant n-tuples");
    ConstMat<K> binv = const_inverse(fil.basis);  // also rejects non-flag bases
    Poly<K> lin(std::vector<K>{K(0) - ec.pis[static_cast<std::size_t>(i)], K(1)});
    Frac<K> linf = Frac<K>::of(lin);
    Int tmin = fil.type[fil.type.size() - 1];
    Int shift = tmin < 0 ? -tmin : 0;
    if (shift > 0) {
      Frac<K> down = Frac<K>::constant(K(1));
      for (Int q = 0; q < shift; ++q) down = down / linf;
      unshift = unshift * down;
    }
    SeriesMatrix<K> local(n);
    for (int r = 0; r < n; ++r)
      for (int cidx = 0; cidx < n; ++cidx) {
        Frac<K> acc;
        for (int k = 0; k < n; ++k) {
          K b = fil.basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)];
          K bi = binv[static_cast<std::size_t>(k)][static_cast<std::size_t>(cidx)];
          if (field_is_zero(b) || field_is_zero(bi)) continue;
          Int t = fil.type[static_cast<std::size_t>(k)] + shift;
          Frac<K> power = Frac<K>::constant(K(1));
          for (Int q = 0; q < t; ++q) power = power * linf;
          acc += Frac<K>::constant(b * bi) * power;
        }
        local.at(r, cidx) = acc;
      }
    locals.push_back(local);
    Int tmax = fil.type[0] + shift;
    for (Int q = 0; q < tmax; ++q) f = f * lin;
  }

  // duals (M_i^T)^{-1}, scaled by f to clear every denominator
  std::vector<std::vector<Poly<K>>> gens;
  Frac<K> ff = Frac<K>::of(f);
  for (const SeriesMatrix<K>& m : locals) {
    SeriesMatrix<K> mt(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mt.at(i, j) = m.at(j, i);
    SeriesMatrix<K> dual = mt.inverse();
    for (int c = 0; c < n; ++c) {
      std::vector<Poly<K>> col;
      for (int r = 0; r < n; ++r) {
        Frac<K> entry = dual.at(r, c) * ff;
        if (!entry.is_polynomial())
          throw InputError("internal: dual lattice entry failed to clear denominators");
        col.push_back(entry.num());
      }
      gens.push_back(std::move(col));
    }
  }
  auto basis = detail::column_hermite(std::move(gens), n);

  // L = f * (H^T)^{-1}, then undo the central type shift
  SeriesMatrix<K> h(n);
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) h.at(c, r) = Frac<K>::of(basis[static_cast<std::size_t>(c)][static_cast<std::size_t>(r)]);
  SeriesMatrix<K> x = h.inverse().scale(ff).scale(unshift);
  return Lattice<K>{x};
}

}  // namespace grcycle
