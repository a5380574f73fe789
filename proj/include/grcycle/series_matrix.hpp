#pragma once

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"

// Square matrices over the rational-function field in u, together with a
// truncation mark: a matrix of precision N stands for any matrix that agrees
// with the stored entries below u-degree N.  Exact matrices use the sentinel
// precision.  Every predicate either answers from coefficients below the
// mark or refuses with PrecisionError; it never guesses.

namespace grcycle {

inline constexpr long long kExactPrec = std::numeric_limits<long long>::max() / 4;

inline long long prec_clamp(long long p) { return p >= kExactPrec ? kExactPrec : p; }

// truncation bound that keeps every predicate here decidable for cell points
// and small Schubert data
inline long long recommended_precision(int e, Int max_pairing) {
  return 2 * (e + max_pairing) + 4;
}

template <class K>
struct EConfig {
  int e = 1;
  bool special = false;
  std::vector<K> pis;  // empty in special-fibre mode
  Poly<K> E;

  static EConfig special_fibre(int e) {
    if (e < 1) throw InputError("e must be positive");
    EConfig ec;
    ec.e = e;
    ec.special = true;
    ec.E = Poly<K>::monomial(K(1), e);
    return ec;
  }

  static EConfig generic_fibre(std::vector<K> pis) {
    if (pis.empty()) throw InputError("generic fibre needs at least one pi");
    EConfig ec;
    ec.e = static_cast<int>(pis.size());
    ec.special = false;
    bool all_zero = true;
    for (const auto& p : pis)
      if (!field_is_zero(p)) all_zero = false;
    if (all_zero) return special_fibre(static_cast<int>(pis.size()));
    for (std::size_t i = 0; i < pis.size(); ++i)
      for (std::size_t j = i + 1; j < pis.size(); ++j)
        if (pis[i] == pis[j]) throw InputError("the pi_i must be pairwise distinct");
    ec.E = Poly<K>::constant(K(1));
    for (const auto& p : pis)
      ec.E = ec.E * Poly<K>(std::vector<K>{K(0) - p, K(1)});
    ec.pis = std::move(pis);
    return ec;
  }
};

template <class K>
class SeriesMatrix {
 public:
  SeriesMatrix() = default;
  SeriesMatrix(int n, long long prec = kExactPrec)
      : n_(n), prec_(prec_clamp(prec)), a_(static_cast<std::size_t>(n),
                                           std::vector<Frac<K>>(static_cast<std::size_t>(n))) {
    if (n < 1) throw InputError("matrix size must be positive");
  }

  static SeriesMatrix identity(int n, long long prec = kExactPrec) {
    SeriesMatrix m(n, prec);
    for (int i = 0; i < n; ++i) m.at(i, i) = Frac<K>::constant(K(1));
    return m;
  }

  int size() const { return n_; }
  long long prec() const { return prec_; }
  bool exact() const { return prec_ >= kExactPrec; }
  void set_prec(long long p) { prec_ = prec_clamp(p); }

  Frac<K>& at(int i, int j) { return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  const Frac<K>& at(int i, int j) const {
    return a_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }

  // least u-adic valuation among visible entries, floored by the precision
  // mark (the invisible tail has degree >= prec)
  long long min_degree() const {
    long long m = prec_;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (!at(i, j).is_zero()) m = std::min<long long>(m, at(i, j).valuation0());
    return m;
  }

  friend SeriesMatrix operator+(const SeriesMatrix& x, const SeriesMatrix& y) {
    x.check_size(y);
    SeriesMatrix r(x.n_, std::min(x.prec_, y.prec_));
    for (int i = 0; i < x.n_; ++i)
      for (int j = 0; j < x.n_; ++j) r.at(i, j) = x.at(i, j) + y.at(i, j);
    return r;
  }

  friend SeriesMatrix operator-(const SeriesMatrix& x, const SeriesMatrix& y) {
    x.check_size(y);
    SeriesMatrix r(x.n_, std::min(x.prec_, y.prec_));
    for (int i = 0; i < x.n_; ++i)
      for (int j = 0; j < x.n_; ++j) r.at(i, j) = x.at(i, j) - y.at(i, j);
    return r;
  }

  friend SeriesMatrix operator*(const SeriesMatrix& x, const SeriesMatrix& y) {
    x.check_size(y);
    long long prec = kExactPrec;
    if (!x.exact() || !y.exact())
      prec = std::min(x.prec_ + y.min_degree(), y.prec_ + x.min_degree());
    SeriesMatrix r(x.n_, prec);
    for (int i = 0; i < x.n_; ++i)
      for (int j = 0; j < x.n_; ++j) {
        Frac<K> s;
        for (int k = 0; k < x.n_; ++k) s += x.at(i, k) * y.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }

  SeriesMatrix scale(const Frac<K>& s) const {
    long long prec = exact() ? kExactPrec : prec_ + (s.is_zero() ? 0 : s.valuation0());
    SeriesMatrix r(n_, prec);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j) * s;
    return r;
  }

  SeriesMatrix derivative() const {
    SeriesMatrix r(n_, exact() ? kExactPrec : prec_ - 1);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j).derivative();
    return r;
  }

  Frac<K> det() const {
    Frac<K> d = det_visible();
    return d;
  }

  long long det_prec() const {
    if (exact()) return kExactPrec;
    return prec_clamp(prec_ + (static_cast<long long>(n_) - 1) * std::min<long long>(0, min_degree()));
  }

  // adjugate; together with det this backs the inverse
  SeriesMatrix adjugate() const {
    long long prec = exact() ? kExactPrec
                             : prec_clamp(prec_ + (static_cast<long long>(n_) - 2) *
                                                      std::min<long long>(0, min_degree()));
    SeriesMatrix r(n_, prec);
    if (n_ == 1) {
      r.at(0, 0) = Frac<K>::constant(K(1));
      return r;
    }
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        Frac<K> c = cofactor(j, i);
        r.at(i, j) = c;
      }
    return r;
  }

  SeriesMatrix inverse() const {
    Frac<K> d = det_visible();
    if (d.is_zero()) throw InputError("matrix is not invertible over the Laurent field");
    SeriesMatrix adj = adjugate();
    SeriesMatrix r(n_, kExactPrec);
    Frac<K> dinv = Frac<K>::constant(K(1)) / d;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = adj.at(i, j) * dinv;
    if (!exact()) {
      long long m = r.min_degree();
      r.set_prec(prec_ + 2 * std::min<long long>(0, m));
    }
    return r;
  }

  // substitute u -> t u (loop rotation support)
  SeriesMatrix scale_arg(const K& t) const {
    SeriesMatrix r(n_, prec_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j).scale_arg(t);
    return r;
  }

  bool operator==(const SeriesMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const SeriesMatrix& o) const { return !(*this == o); }

 private:
  void check_size(const SeriesMatrix& o) const {
    if (n_ != o.n_) throw InputError("matrix sizes disagree");
  }

  Frac<K> det_visible() const {
    std::vector<int> all;
    for (int r = 0; r < n_; ++r) all.push_back(r);
    return minor_det(all, all);
  }

  Frac<K> cofactor(int i, int j) const {
    std::vector<int> rows, cols;
    for (int r = 0; r < n_; ++r)
      if (r != i) rows.push_back(r);
    for (int c = 0; c < n_; ++c)
      if (c != j) cols.push_back(c);
    Frac<K> m = minor_det(rows, cols);
    if ((i + j) % 2 != 0) m = -m;
    return m;
  }

 public:
  Frac<K> minor_det(const std::vector<int>& rows, const std::vector<int>& cols) const {
    std::size_t k = rows.size();
    if (k != cols.size()) throw InputError("minor needs equally many rows and columns");
    if (k == 0) return Frac<K>::constant(K(1));
    if (k == 1) return at(rows[0], cols[0]);
    Frac<K> d;
    for (std::size_t j = 0; j < k; ++j) {
      const Frac<K>& pivot = at(rows[0], cols[j]);
      if (pivot.is_zero()) continue;
      std::vector<int> sub_rows(rows.begin() + 1, rows.end());
      std::vector<int> sub_cols;
      for (std::size_t c = 0; c < k; ++c)
        if (c != j) sub_cols.push_back(cols[c]);
      Frac<K> term = pivot * minor_det(sub_rows, sub_cols);
      d = (j % 2 == 0) ? d + term : d - term;
    }
    return d;
  }

 private:
  int n_ = 0;
  long long prec_ = kExactPrec;
  std::vector<std::vector<Frac<K>>> a_;
};

// ---- builders ----------------------------------------------------------------

// diag(u^{a_1}, ..., u^{a_n}); prime-field callers pass ctx.from_int(1) so
// every coefficient downstream carries the modulus
template <class K>
SeriesMatrix<K> diag_u_powers(const std::vector<Int>& exps, K one = K(1)) {
  SeriesMatrix<K> m(static_cast<int>(exps.size()));
  for (std::size_t i = 0; i < exps.size(); ++i)
    m.at(static_cast<int>(i), static_cast<int>(i)) =
        Frac<K>::monomial(one, static_cast<int>(exps[i]));
  return m;
}

// root-group element x_{ij}(f) = 1 + f E_{ij}
template <class K>
SeriesMatrix<K> root_group_element(int n, int i, int j, const Frac<K>& f) {
  if (i == j) throw InputError("root-group element needs i != j");
  SeriesMatrix<K> m = SeriesMatrix<K>::identity(n);
  m.at(i, j) = f;
  return m;
}

// ---- the dlog / nabla layer ---------------------------------------------------

// dlog_u(X) = X^{-1} dX/du
template <class K>
SeriesMatrix<K> dlog_u(const SeriesMatrix<K>& x) {
  return x.inverse() * x.derivative();
}

namespace detail {

// Certify from the visible part that det(X) is a u-monomial (a valid
// trivialisation off u = 0 in special-fibre mode), and return its valuation.
template <class K>
int certified_monomial_det_valuation(const SeriesMatrix<K>& x) {
  Frac<K> d = x.det();
  if (d.is_zero()) throw PrecisionError("determinant has no visible part");
  if (!d.is_u_laurent())
    throw InputError("matrix determinant is not supported along E(u)");
  long long dp = x.det_prec();
  Frac<K> dt = d.truncate_above(dp);
  if (dt.is_zero()) throw PrecisionError("determinant is invisible below the precision mark");
  if (!dt.num().is_monomial())
    throw InputError("matrix determinant is not supported along E(u)");
  return dt.laurent_mindeg();
}

}  // namespace detail

// E(u) dlog_u(X) has entries in A[u]: no negative u-degrees and no poles at
// the pi_i.  Exact matrices decide this outright; truncated matrices decide
// it in special-fibre mode when the precision suffices.
template <class K>
bool in_nabla(const SeriesMatrix<K>& x, const EConfig<K>& ec) {
  if (x.exact()) {
    SeriesMatrix<K> m = dlog_u(x).scale(Frac<K>::of(ec.E));
    for (int i = 0; i < x.size(); ++i)
      for (int j = 0; j < x.size(); ++j)
        if (!m.at(i, j).is_polynomial()) return false;
    return true;
  }
  if (!ec.special)
    throw PrecisionError("generic-fibre membership needs exact entries");
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j)
      if (!x.at(i, j).is_u_laurent())
        throw InputError("truncated matrices must have u-Laurent entries");
  int v = detail::certified_monomial_det_valuation(x);
  // N = E adj(X) X' ; M = N / (c u^v), with the invisible det tail adding
  // error only at relative degree >= det_prec - v
  SeriesMatrix<K> n_mat = (x.adjugate() * x.derivative()).scale(Frac<K>::of(ec.E));
  Frac<K> dt = x.det().truncate_above(x.det_prec());
  SeriesMatrix<K> m = n_mat.scale(Frac<K>::constant(K(1)) / dt);
  long long prec_m = std::min<long long>(m.prec(), m.min_degree() + (x.det_prec() - v));
  if (prec_m < 0)
    throw PrecisionError("precision " + std::to_string(x.prec()) +
                         " cannot certify the negative-degree window");
  for (int i = 0; i < x.size(); ++i)
    for (int j = 0; j < x.size(); ++j) {
      const Frac<K>& f = m.at(i, j);
      if (f.is_zero()) continue;
      if (!f.is_u_laurent())
        throw InputError("truncated matrices must have u-Laurent entries");
      for (int d = f.laurent_mindeg(); d < 0; ++d)
        if (!field_is_zero(f.laurent_coeff(d))) return false;
    }
  return true;
}

// u -> t u; special-fibre only (the substitution preserves E = u^e up to a unit)
template <class K>
SeriesMatrix<K> loop_rotate(const SeriesMatrix<K>& x, const K& t, const EConfig<K>& ec) {
  if (!ec.special) throw InputError("loop rotation lives on the special fibre");
  if (field_is_zero(t)) throw InputError("loop rotation needs a unit");
  return x.scale_arg(t);
}

}  // namespace grcycle
