#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rootdata.hpp"

// Sparse integer arithmetic in the group ring Z[X^*(T)], the Weyl character
// and dimension formulas, and the Kostant partition/multiplicity functions.
//
// Every function here reads its lattice vectors on the *character* side of
// the root datum it is given.  Cocharacter-side computations (characters of
// dual-group representations) pass rd.dual().

namespace grcycle {

class CharacterElement {
 public:
  CharacterElement() = default;
  explicit CharacterElement(int dim) : dim_(dim) {}

  static CharacterElement monomial(const IntVec& w, Int c = 1) {
    CharacterElement x(static_cast<int>(w.size()));
    if (c != 0) x.terms_[w] = c;
    return x;
  }

  int lattice_dim() const { return dim_; }
  const std::map<IntVec, Int>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t support_size() const { return terms_.size(); }

  Int coeff(const IntVec& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const IntVec& w, Int c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(w, 0);
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  CharacterElement& operator+=(const CharacterElement& o) {
    check_dim(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }

  CharacterElement& operator-=(const CharacterElement& o) {
    check_dim(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend CharacterElement operator+(CharacterElement a, const CharacterElement& b) { return a += b; }
  friend CharacterElement operator-(CharacterElement a, const CharacterElement& b) { return a -= b; }

  friend CharacterElement operator*(const CharacterElement& a, const CharacterElement& b) {
    a.check_dim(b);
    const CharacterElement& small = a.support_size() <= b.support_size() ? a : b;
    const CharacterElement& big = a.support_size() <= b.support_size() ? b : a;
    CharacterElement r(a.dim_);
    for (const auto& [wa, ca] : small.terms_)
      for (const auto& [wb, cb] : big.terms_) r.add_term(vec_add(wa, wb), ca * cb);
    return r;
  }

  CharacterElement& operator*=(const CharacterElement& o) { return *this = *this * o; }

  friend CharacterElement operator*(Int c, const CharacterElement& a) {
    CharacterElement r(a.dim_);
    if (c == 0) return r;
    for (const auto& [w, k] : a.terms_) r.terms_[w] = c * k;
    return r;
  }

  bool operator==(const CharacterElement& o) const {
    return dim_ == o.dim_ && terms_ == o.terms_;
  }
  bool operator!=(const CharacterElement& o) const { return !(*this == o); }

 private:
  void check_dim(const CharacterElement& o) const {
    if (dim_ != o.dim_) throw InputError("character elements live on different lattices");
  }

  int dim_ = 0;
  std::map<IntVec, Int> terms_;
};

inline Int l1_norm(const CharacterElement& x) {
  Int s = 0;
  for (const auto& [w, c] : x.terms()) s += c < 0 ? -c : c;
  return s;
}

inline Int coefficient_sum(const CharacterElement& x) {
  Int s = 0;
  for (const auto& [w, c] : x.terms()) s += c;
  return s;
}

// e(lam) |-> e(n lam) termwise; a ring endomorphism for n >= 1.
inline CharacterElement dilate(const CharacterElement& x, Int n) {
  if (n <= 0) throw InputError("dilate requires n >= 1");
  CharacterElement r(x.lattice_dim());
  for (const auto& [w, c] : x.terms()) r.add_term(vec_scale(w, n), c);
  return r;
}

// A(lam) = sum_w (-1)^{l(w)} e(w lam)
inline CharacterElement antisymmetrize(const IntVec& lam, const RootDatum& rd) {
  CharacterElement r(rd.dim);
  for (const auto& w : rd.weyl)
    r.add_term(mat_apply(w.on_char, lam), w.length % 2 == 0 ? 1 : -1);
  return r;
}

namespace detail {

// All dominant v <= bound on the character side, BFS by subtraction of simple
// roots inside the finite coefficient box 0 <= c <= C^{-1} (pairing profile).
inline std::vector<IntVec> dominant_below_char(const IntVec& bound, const RootDatum& rd,
                                               std::size_t cap = 2000000) {
  if (!rd.dominant_char(bound)) throw InputError("enumeration bound must be dominant");
  std::size_t ns = rd.simple.size();
  if (ns == 0) return {bound};
  // Cartan matrix on the simple set: C[j][i] = <simple root i, simple coroot j>
  IntMat cartan(ns, IntVec(ns, 0));
  for (std::size_t j = 0; j < ns; ++j)
    for (std::size_t i = 0; i < ns; ++i)
      cartan[j][i] = rd.pair(rd.roots[rd.simple[i]], rd.coroots[rd.simple[j]]);
  IntVec b(ns);
  for (std::size_t j = 0; j < ns; ++j) b[j] = rd.pair(bound, rd.coroots[rd.simple[j]]);
  // box: 0 <= c <= C^{-1} b entrywise (finite type makes C^{-1} nonnegative)
  IntVec ub(ns, 0);
  for (std::size_t i = 0; i < ns; ++i) {
    IntVec e(ns, 0);
    std::vector<BigRat> col;
    e[i] = 1;
    if (!solve_rational(cartan, e, col))
      throw InputError("simple pairing matrix is singular");
    BigRat s(0);
    for (std::size_t j = 0; j < ns; ++j) {
      if (col[j] < 0)
        throw InputError("simple pairing matrix is not of finite type");
      s += col[j] * BigRat(b[j]);
    }
    BigInt fl = boost::multiprecision::numerator(s) / boost::multiprecision::denominator(s);
    ub[i] = static_cast<Int>(fl);
    if (ub[i] < 0) ub[i] = 0;
  }
  std::set<IntVec> seen;
  std::vector<IntVec> out;
  std::queue<IntVec> bfs;
  IntVec zero(ns, 0);
  seen.insert(zero);
  bfs.push(zero);
  while (!bfs.empty()) {
    IntVec c = bfs.front();
    bfs.pop();
    IntVec v = bound;
    for (std::size_t i = 0; i < ns; ++i)
      if (c[i] != 0) v = vec_sub(v, vec_scale(rd.roots[rd.simple[i]], c[i]));
    if (rd.dominant_char(v)) out.push_back(v);
    for (std::size_t i = 0; i < ns; ++i) {
      if (c[i] >= ub[i]) continue;
      IntVec c2 = c;
      ++c2[i];
      if (seen.insert(c2).second) {
        if (seen.size() > cap) throw CapExceeded("dominant weight enumeration exceeded cap");
        bfs.push(c2);
      }
    }
  }
  return out;
}

// BFS over the same box without the dominance filter: every v <= bound whose
// defect stays within the box.  Used by tests probing non-dominant weights.
inline std::vector<IntVec> below_box_char(const IntVec& bound, const RootDatum& rd,
                                          std::size_t cap = 2000000) {
  std::vector<IntVec> doms = dominant_below_char(bound, rd, cap);  // validates bound
  std::size_t ns = rd.simple.size();
  if (ns == 0) return {bound};
  IntVec maxc(ns, 0);
  // recompute the box as in dominant_below_char
  IntMat cartan(ns, IntVec(ns, 0));
  for (std::size_t j = 0; j < ns; ++j)
    for (std::size_t i = 0; i < ns; ++i)
      cartan[j][i] = rd.pair(rd.roots[rd.simple[i]], rd.coroots[rd.simple[j]]);
  IntVec b(ns);
  for (std::size_t j = 0; j < ns; ++j) b[j] = rd.pair(bound, rd.coroots[rd.simple[j]]);
  for (std::size_t i = 0; i < ns; ++i) {
    IntVec e(ns, 0);
    std::vector<BigRat> col;
    e[i] = 1;
    solve_rational(cartan, e, col);
    BigRat s(0);
    for (std::size_t j = 0; j < ns; ++j) s += col[j] * BigRat(b[j]);
    BigInt fl = boost::multiprecision::numerator(s) / boost::multiprecision::denominator(s);
    maxc[i] = std::max<Int>(0, static_cast<Int>(fl));
  }
  std::vector<IntVec> out;
  IntVec c(ns, 0);
  while (true) {
    IntVec v = bound;
    for (std::size_t i = 0; i < ns; ++i)
      if (c[i] != 0) v = vec_sub(v, vec_scale(rd.roots[rd.simple[i]], c[i]));
    out.push_back(v);
    if (out.size() > cap) throw CapExceeded("box enumeration exceeded cap");
    std::size_t i = 0;
    while (i < ns && c[i] == maxc[i]) c[i++] = 0;
    if (i == ns) break;
    ++c[i];
  }
  return out;
}

}  // namespace detail

// Kostant partition function with a per-instance memo table keyed on the
// simple-root coordinates.  Not thread safe; confine an instance to a thread.
class KostantPartition {
 public:
  explicit KostantPartition(const RootDatum& rd) : rd_(rd) {
    std::size_t ns = rd.simple.size();
    simple_mat_.assign(rd.dim, IntVec(ns, 0));
    for (std::size_t k = 0; k < ns; ++k)
      for (int i = 0; i < rd.dim; ++i) simple_mat_[i][k] = rd.roots[rd.simple[k]][i];
    for (int p : rd.positive) {
      std::vector<BigRat> x;
      solve_rational(simple_mat_, rd.roots[p], x);
      IntVec xi;
      rational_to_int(x, xi);
      positive_coords_.push_back(xi);
    }
  }

  // number of expressions of mu as a Z>=0 combination of positive roots
  Int operator()(const IntVec& mu) {
    std::vector<BigRat> x;
    if (!solve_rational(simple_mat_, mu, x)) return 0;
    IntVec coords;
    if (!rational_to_int(x, coords)) return 0;
    IntVec rec(rd_.dim, 0);
    for (std::size_t k = 0; k < rd_.simple.size(); ++k)
      rec = vec_add(rec, vec_scale(rd_.roots[rd_.simple[k]], coords[k]));
    if (rec != mu) return 0;  // off-span component
    for (Int c : coords)
      if (c < 0) return 0;
    return count(coords, 0);
  }

 private:
  Int count(const IntVec& coords, std::size_t idx) {
    if (vec_is_zero(coords)) return 1;
    if (idx >= positive_coords_.size()) return 0;
    auto key = std::make_pair(coords, idx);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Int total = 0;
    IntVec rem = coords;
    while (true) {
      total += count(rem, idx + 1);
      bool ok = true;
      for (std::size_t k = 0; k < rem.size(); ++k) {
        rem[k] -= positive_coords_[idx][k];
        if (rem[k] < 0) ok = false;
      }
      if (!ok) break;
    }
    memo_[key] = total;
    return total;
  }

  const RootDatum& rd_;
  IntMat simple_mat_;
  std::vector<IntVec> positive_coords_;
  std::map<std::pair<IntVec, std::size_t>, Int> memo_;
};

inline Int kostant_partition(const IntVec& mu, const RootDatum& rd) {
  KostantPartition p(rd);
  return p(mu);
}

// dim W(lam)_eta = sum_w (-1)^{l(w)} P(w(lam + rho) - (eta + rho)), computed
// with the integral vector w(lam) - eta + (w(2 rho) - 2 rho)/2.
inline Int kostant_multiplicity(const IntVec& lam, const IntVec& eta, const RootDatum& rd,
                                KostantPartition& part) {
  if (!rd.dominant_char(lam)) throw InputError("kostant_multiplicity needs a dominant weight");
  Int total = 0;
  for (const auto& w : rd.weyl) {
    IntVec shift = vec_sub(mat_apply(w.on_char, rd.two_rho_char), rd.two_rho_char);
    IntVec arg = vec_sub(mat_apply(w.on_char, lam), eta);
    for (int i = 0; i < rd.dim; ++i) {
      if (shift[i] % 2 != 0) throw InputError("root datum has a non-integral rho shift");
      arg[i] += shift[i] / 2;
    }
    Int p = part(arg);
    total += (w.length % 2 == 0) ? p : -p;
  }
  return total;
}

inline Int kostant_multiplicity(const IntVec& lam, const IntVec& eta, const RootDatum& rd) {
  KostantPartition part(rd);
  return kostant_multiplicity(lam, eta, rd, part);
}

// Weyl dimension formula, via the 2 rho^vee pairing profile (equivalent to
// any twisting element since their difference is W-invariant).
inline Int weyl_dimension(const IntVec& lam, const RootDatum& rd) {
  if (!rd.dominant_char(lam)) throw InputError("weyl_dimension needs a dominant weight");
  auto gcd128 = [](__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  };
  __int128 num = 1, den = 1;
  for (int p : rd.positive) {
    Int a = 2 * rd.pair(lam, rd.coroots[p]) + rd.pair(rd.two_rho_char, rd.coroots[p]);
    Int b = rd.pair(rd.two_rho_char, rd.coroots[p]);
    num *= a;
    den *= b;
    __int128 g = gcd128(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    if (num > (__int128)1 << 100 || num < -((__int128)1 << 100))
      throw CapExceeded("weyl_dimension overflow guard");
  }
  if (den != 1) throw InputError("Weyl dimension formula did not come out integral");
  if (num > (__int128)9223372036854775807LL) throw CapExceeded("weyl_dimension exceeds 64 bits");
  return static_cast<Int>(num);
}

// Full weight-multiplicity character of W(lam): Kostant multiplicities on the
// dominant cone, spread over Weyl orbits.
inline CharacterElement weyl_character(const IntVec& lam, const RootDatum& rd) {
  if (!rd.dominant_char(lam)) throw InputError("weyl_character needs a dominant weight");
  CharacterElement out(rd.dim);
  KostantPartition part(rd);
  for (const IntVec& eta : detail::dominant_below_char(lam, rd)) {
    Int m = kostant_multiplicity(lam, eta, rd, part);
    if (m == 0) continue;
    std::set<IntVec> orbit;
    for (const auto& w : rd.weyl) orbit.insert(mat_apply(w.on_char, eta));
    for (const auto& v : orbit) out.add_term(v, m);
  }
  return out;
}

}  // namespace grcycle
