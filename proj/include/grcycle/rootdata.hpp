#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "intlinalg.hpp"

// Root data for split reductive groups.
//
// Conventions (they matter, so spelled out once):
//   * Both X^*(T) and X_*(T) are Z^d with an explicit integer pairing matrix
//     P, so <x, y> = x^T P y for x in X^*(T), y in X_*(T).
//   * Roots live in X^*(T), coroots in X_*(T); the bijection root <-> coroot
//     pairs to 2.
//   * Dominance of a coweight y means <a, y> >= 0 for every simple root a;
//     the dominance order on coweights subtracts nonnegative combinations of
//     simple coroots.  Mirror statements hold on the character side.
//   * dual() swaps the two sides; the dual datum is the root datum of the
//     Langlands dual group, and lets every character-side algorithm serve the
//     cocharacter side unchanged.

namespace grcycle {

struct WeylElement {
  IntMat on_char;  // action on X^*(T)
  IntMat on_coch;  // action on X_*(T), the pairing-contragredient
  int length = 0;
};

struct RootDatumOptions {
  std::size_t weyl_cap = 1000000;
};

class RootDatum {
 public:
  int dim = 0;                   // rank of both lattices
  IntMat pairing;                // d x d, <x,y> = x^T P y
  std::vector<IntVec> roots;     // in X^*(T)
  std::vector<IntVec> coroots;   // in X_*(T), same indexing as roots
  std::vector<int> simple;       // indices of the simple roots
  std::vector<int> positive;     // indices of the positive roots
  std::vector<WeylElement> weyl; // enumerated, identity first, by length
  IntVec two_rho_char;           // sum of positive roots      (= 2 rho^vee)
  IntVec two_rho_coch;           // sum of positive coroots    (= 2 rho)
  std::optional<IntVec> twist_char;  // rho_0^vee : <rho_0^vee, a> = 1, a simple coroot
  std::optional<IntVec> twist_coch;  // rho       : <a^vee, rho> = 1, a^vee simple root

  Int pair(const IntVec& x, const IntVec& y) const {
    Int s = 0;
    for (int i = 0; i < dim; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim; ++j) s += x[i] * pairing[i][j] * y[j];
    }
    return s;
  }

  std::size_t weyl_order() const { return weyl.size(); }
  std::size_t num_positive() const { return positive.size(); }

  const WeylElement& longest_element() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < weyl.size(); ++i)
      if (weyl[i].length > weyl[best].length) best = i;
    return weyl[best];
  }

  // --- character-side predicates -------------------------------------------

  bool dominant_char(const IntVec& v) const {
    for (int s : simple)
      if (pair(v, coroots[s]) < 0) return false;
    return true;
  }

  bool strictly_dominant_char(const IntVec& v) const {
    for (int s : simple)
      if (pair(v, coroots[s]) < 1) return false;
    return true;
  }

  // dominance order on X^*(T): a <= b iff b - a is a nonnegative integer
  // combination of simple roots (components off the root span must vanish)
  bool leq_char(const IntVec& a, const IntVec& b) const {
    IntVec d = vec_sub(b, a);
    IntMat m(dim, IntVec(simple.size(), 0));
    for (std::size_t k = 0; k < simple.size(); ++k)
      for (int i = 0; i < dim; ++i) m[i][k] = roots[simple[k]][i];
    std::vector<BigRat> x;
    if (!solve_rational(m, d, x)) return false;
    IntVec xi;
    if (!rational_to_int(x, xi)) return false;
    for (Int c : xi)
      if (c < 0) return false;
    // solve_rational only guarantees consistency of the projected system;
    // confirm the combination reproduces d exactly
    IntVec rec(dim, 0);
    for (std::size_t k = 0; k < simple.size(); ++k)
      rec = vec_add(rec, vec_scale(roots[simple[k]], xi[k]));
    return rec == d;
  }

  // --- cocharacter-side predicates ------------------------------------------

  bool dominant_coch(const IntVec& v) const {
    for (int s : simple)
      if (pair(roots[s], v) < 0) return false;
    return true;
  }

  bool strictly_dominant_coch(const IntVec& v) const {
    for (int s : simple)
      if (pair(roots[s], v) < 1) return false;
    return true;
  }

  bool leq_coch(const IntVec& a, const IntVec& b) const {
    IntVec d = vec_sub(b, a);
    IntMat m(dim, IntVec(simple.size(), 0));
    for (std::size_t k = 0; k < simple.size(); ++k)
      for (int i = 0; i < dim; ++i) m[i][k] = coroots[simple[k]][i];
    std::vector<BigRat> x;
    if (!solve_rational(m, d, x)) return false;
    IntVec xi;
    if (!rational_to_int(x, xi)) return false;
    for (Int c : xi)
      if (c < 0) return false;
    IntVec rec(dim, 0);
    for (std::size_t k = 0; k < simple.size(); ++k)
      rec = vec_add(rec, vec_scale(coroots[simple[k]], xi[k]));
    return rec == d;
  }

  // The Langlands-dual datum: characters and cocharacters trade places.
  RootDatum dual() const {
    RootDatum d;
    d.dim = dim;
    d.pairing = mat_transpose(pairing);
    d.roots = coroots;
    d.coroots = roots;
    d.simple = simple;
    d.positive = positive;
    d.weyl.reserve(weyl.size());
    for (const auto& w : weyl) d.weyl.push_back({w.on_coch, w.on_char, w.length});
    d.two_rho_char = two_rho_coch;
    d.two_rho_coch = two_rho_char;
    d.twist_char = twist_coch;
    d.twist_coch = twist_char;
    return d;
  }
};

namespace detail {

// Minimizes sum |p + K c| over integer coefficient vectors c; K columns are a
// lattice basis.  Exhaustive over a provably sufficient box.
inline IntVec minimize_l1_on_coset(const IntVec& particular,
                                   const std::vector<IntVec>& kernel_basis) {
  if (kernel_basis.empty()) return particular;
  std::size_t d = particular.size(), r = kernel_basis.size();
  // rows of pinv = (K^T K)^{-1} K^T recover c from K c
  IntMat ktk(r, IntVec(r, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t k = 0; k < d; ++k) ktk[i][j] += kernel_basis[i][k] * kernel_basis[j][k];
  std::vector<std::vector<BigRat>> pinv(r, std::vector<BigRat>(d));
  for (std::size_t i = 0; i < r; ++i) {
    IntVec e(r, 0);
    e[i] = 1;
    std::vector<BigRat> row;
    if (!solve_rational(ktk, e, row))
      throw InputError("twisting element search: kernel basis is degenerate");
    for (std::size_t k = 0; k < d; ++k) {
      BigRat s(0);
      for (std::size_t j = 0; j < r; ++j) s += row[j] * BigRat(kernel_basis[j][k]);
      pinv[i][k] = s;
    }
  }
  BigRat maxrow(0);
  for (std::size_t i = 0; i < r; ++i) {
    BigRat s(0);
    for (std::size_t k = 0; k < d; ++k) s += boost::multiprecision::abs(pinv[i][k]);
    if (s > maxrow) maxrow = s;
  }
  Int best_norm = vec_l1(particular);
  IntVec best = particular;
  BigRat radius_rat = maxrow * BigRat(best_norm + vec_l1(particular));
  Int radius = static_cast<Int>(boost::multiprecision::numerator(radius_rat) /
                                boost::multiprecision::denominator(radius_rat)) + 1;
  double points = 1;
  for (std::size_t i = 0; i < r; ++i) points *= 2.0 * static_cast<double>(radius) + 1.0;
  if (points > 4e6)
    throw CapExceeded("twisting element search space too large (" + std::to_string(points) + " points)");
  IntVec c(r, -radius);
  auto lex_greater = [](const IntVec& a, const IntVec& b) {
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  };
  while (true) {
    IntVec cand = particular;
    for (std::size_t i = 0; i < r; ++i) cand = vec_add(cand, vec_scale(kernel_basis[i], c[i]));
    Int n = vec_l1(cand);
    if (n < best_norm || (n == best_norm && lex_greater(cand, best))) {
      best_norm = n;
      best = cand;
    }
    std::size_t i = 0;
    while (i < r && c[i] == radius) c[i++] = -radius;
    if (i == r) break;
    ++c[i];
  }
  return best;
}

}  // namespace detail

// Solve <a^vee, rho> = 1 over all simple roots a^vee for rho in X_*(T);
// absent when the integer system is infeasible.  Among all solutions the
// one of least l1 norm is returned, ties broken toward the lexicographically
// greatest vector.
inline std::optional<IntVec> solve_twisting_coch(const RootDatum& rd) {
  if (rd.simple.empty()) return IntVec(rd.dim, 0);
  // system A rho = 1 with A_{k,*} = roots[simple k]^T P
  IntMat a(rd.simple.size(), IntVec(rd.dim, 0));
  for (std::size_t k = 0; k < rd.simple.size(); ++k)
    for (int j = 0; j < rd.dim; ++j)
      for (int i = 0; i < rd.dim; ++i)
        a[k][j] += rd.roots[rd.simple[k]][i] * rd.pairing[i][j];
  SmithResult s = smith_normal_form(a);
  std::size_t rows = rd.simple.size(), cols = static_cast<std::size_t>(rd.dim);
  // particular solution: D y = U * 1
  std::vector<BigInt> ub(rows, 0);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < rows; ++j) ub[i] += s.u[i][j];
  std::vector<BigInt> y(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt dii = (i < cols) ? s.d[i][i] : BigInt(0);
    if (dii == 0) {
      if (ub[i] != 0) return std::nullopt;
    } else {
      if (ub[i] % dii != 0) return std::nullopt;
      y[i] = ub[i] / dii;
    }
  }
  IntVec particular(cols, 0);
  for (std::size_t i = 0; i < cols; ++i) {
    BigInt xi(0);
    for (std::size_t j = 0; j < cols; ++j) xi += s.v[i][j] * y[j];
    particular[i] = static_cast<Int>(xi);
  }
  std::vector<IntVec> kernel;
  for (std::size_t j = 0; j < cols; ++j) {
    BigInt djj = (j < rows) ? s.d[j][j] : BigInt(0);
    if (djj == 0) {
      IntVec k(cols, 0);
      for (std::size_t i = 0; i < cols; ++i) k[i] = static_cast<Int>(s.v[i][j]);
      kernel.push_back(k);
    }
  }
  return detail::minimize_l1_on_coset(particular, kernel);
}

inline std::optional<IntVec> solve_twisting_char(const RootDatum& rd) {
  return solve_twisting_coch(rd.dual());
}

namespace detail {

inline void validate_and_finish(RootDatum& rd, const RootDatumOptions& opt) {
  std::size_t nroots = rd.roots.size();
  if (rd.coroots.size() != nroots)
    throw InputError("root/coroot lists differ in length");
  for (std::size_t i = 0; i < nroots; ++i)
    if (rd.pair(rd.roots[i], rd.coroots[i]) != 2)
      throw InputError("root " + std::to_string(i) + " does not pair with its coroot to 2");
  for (int s : rd.simple)
    if (s < 0 || static_cast<std::size_t>(s) >= nroots)
      throw InputError("simple index out of range");

  // generalized Cartan matrix on the simple set
  std::size_t ns = rd.simple.size();
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      Int c = rd.pair(rd.roots[rd.simple[i]], rd.coroots[rd.simple[j]]);
      if (i == j && c != 2) throw InputError("Cartan diagonal entry is not 2");
      if (i != j && c > 0) throw InputError("Cartan off-diagonal entry is positive");
    }
  for (std::size_t i = 0; i < ns; ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      Int cij = rd.pair(rd.roots[rd.simple[i]], rd.coroots[rd.simple[j]]);
      Int cji = rd.pair(rd.roots[rd.simple[j]], rd.coroots[rd.simple[i]]);
      if ((cij == 0) != (cji == 0)) throw InputError("Cartan zero pattern is not symmetric");
    }

  // classify roots as positive/negative in the simple basis
  rd.positive.clear();
  IntMat sm(rd.dim, IntVec(ns, 0));
  for (std::size_t k = 0; k < ns; ++k)
    for (int i = 0; i < rd.dim; ++i) sm[i][k] = rd.roots[rd.simple[k]][i];
  for (std::size_t r = 0; r < nroots; ++r) {
    std::vector<BigRat> x;
    if (!solve_rational(sm, rd.roots[r], x))
      throw InputError("root outside the span of the simple roots");
    IntVec xi;
    if (!rational_to_int(x, xi))
      throw InputError("root is not an integer combination of simple roots");
    bool pos = true, neg = true;
    for (Int c : xi) {
      if (c < 0) pos = false;
      if (c > 0) neg = false;
    }
    if (pos == neg) throw InputError("root has mixed signs in the simple basis");
    if (pos) rd.positive.push_back(static_cast<int>(r));
  }
  if (2 * rd.positive.size() != nroots)
    throw InputError("roots do not split evenly into positive and negative");

  // each reflection must permute the root set
  std::set<IntVec> rootset(rd.roots.begin(), rd.roots.end());
  for (std::size_t r = 0; r < nroots; ++r) {
    for (std::size_t q = 0; q < nroots; ++q) {
      IntVec img = vec_sub(rd.roots[q], vec_scale(rd.roots[r], rd.pair(rd.roots[q], rd.coroots[r])));
      if (!rootset.count(img))
        throw InputError("reflection does not permute the root set");
    }
  }

  rd.two_rho_char.assign(rd.dim, 0);
  rd.two_rho_coch.assign(rd.dim, 0);
  for (int p : rd.positive) {
    rd.two_rho_char = vec_add(rd.two_rho_char, rd.roots[p]);
    rd.two_rho_coch = vec_add(rd.two_rho_coch, rd.coroots[p]);
  }

  // enumerate W by closure under the simple reflections, breadth first
  rd.weyl.clear();
  std::vector<WeylElement> gens;
  for (int si : rd.simple) {
    WeylElement g;
    g.on_char = mat_identity(rd.dim);
    g.on_coch = mat_identity(rd.dim);
    // s(x) = x - <x, a> a^vee on characters, s(y) = y - <a^vee, y> a on cocharacters
    for (int i = 0; i < rd.dim; ++i)
      for (int j = 0; j < rd.dim; ++j) {
        Int pa = 0, pb = 0;
        for (int k = 0; k < rd.dim; ++k) {
          pa += rd.pairing[j][k] * rd.coroots[si][k];   // (P a)_j
          pb += rd.roots[si][k] * rd.pairing[k][j];     // (a^vee^T P)_j
        }
        g.on_char[i][j] -= rd.roots[si][i] * pa;
        g.on_coch[i][j] -= rd.coroots[si][i] * pb;
      }
    g.length = 1;
    gens.push_back(g);
  }
  // contragredience check on the generators
  for (const auto& g : gens) {
    IntMat lhs = mat_mul(mat_transpose(g.on_char), mat_mul(rd.pairing, g.on_coch));
    if (lhs != rd.pairing)
      throw InputError("reflection actions are not contragredient for the pairing");
  }
  std::map<IntMat, std::size_t> seen;
  WeylElement id{mat_identity(rd.dim), mat_identity(rd.dim), 0};
  rd.weyl.push_back(id);
  seen[id.on_char] = 0;
  std::queue<std::size_t> bfs;
  bfs.push(0);
  while (!bfs.empty()) {
    std::size_t cur = bfs.front();
    bfs.pop();
    for (const auto& g : gens) {
      WeylElement nxt;
      nxt.on_char = mat_mul(rd.weyl[cur].on_char, g.on_char);
      if (seen.count(nxt.on_char)) continue;
      nxt.on_coch = mat_mul(rd.weyl[cur].on_coch, g.on_coch);
      nxt.length = rd.weyl[cur].length + 1;
      if (rd.weyl.size() >= opt.weyl_cap)
        throw CapExceeded("Weyl group enumeration exceeded cap " + std::to_string(opt.weyl_cap));
      seen[nxt.on_char] = rd.weyl.size();
      rd.weyl.push_back(nxt);
      bfs.push(rd.weyl.size() - 1);
    }
  }

  rd.twist_coch = solve_twisting_coch(rd);
  rd.twist_char = solve_twisting_char(rd);
}

}  // namespace detail

// GL_n: both lattices Z^n with the dot-product pairing, roots e_i - e_j.
// The twisting elements are pinned to the canonical (n-1, n-2, ..., 1, 0).
inline RootDatum build_gl(int n, const RootDatumOptions& opt = {}) {
  if (n < 1) throw InputError("GL_n needs n >= 1");
  RootDatum rd;
  rd.dim = n;
  rd.pairing = mat_identity(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      IntVec v(n, 0);
      v[i] = 1;
      v[j] = -1;
      rd.roots.push_back(v);
      rd.coroots.push_back(v);
    }
  for (int i = 0; i + 1 < n; ++i) {
    IntVec v(n, 0);
    v[i] = 1;
    v[i + 1] = -1;
    for (std::size_t r = 0; r < rd.roots.size(); ++r)
      if (rd.roots[r] == v) rd.simple.push_back(static_cast<int>(r));
  }
  detail::validate_and_finish(rd, opt);
  IntVec rho(n);
  for (int i = 0; i < n; ++i) rho[i] = n - 1 - i;
  rd.twist_coch = rho;
  rd.twist_char = rho;
  return rd;
}

inline RootDatum build_explicit(const IntMat& pairing, const std::vector<IntVec>& roots,
                                const std::vector<IntVec>& coroots, const std::vector<int>& simple,
                                const RootDatumOptions& opt = {}) {
  RootDatum rd;
  rd.dim = static_cast<int>(pairing.size());
  for (const auto& row : pairing)
    if (row.size() != pairing.size()) throw InputError("pairing matrix is not square");
  rd.pairing = pairing;
  for (const auto& v : roots)
    if (static_cast<int>(v.size()) != rd.dim) throw InputError("root of wrong dimension");
  for (const auto& v : coroots)
    if (static_cast<int>(v.size()) != rd.dim) throw InputError("coroot of wrong dimension");
  rd.roots = roots;
  rd.coroots = coroots;
  rd.simple = simple;
  detail::validate_and_finish(rd, opt);
  return rd;
}

// --- coweight operations ------------------------------------------------------

inline bool dominance_leq(const IntVec& a, const IntVec& b, const RootDatum& rd) {
  return rd.leq_coch(a, b);
}

struct DominancePredicates {
  bool dominant = false;
  bool strictly_dominant = false;
};

inline DominancePredicates dominance_predicates(const IntVec& a, const RootDatum& rd) {
  return {rd.dominant_coch(a), rd.strictly_dominant_coch(a)};
}

inline std::optional<IntVec> twisting_element(const RootDatum& rd) { return rd.twist_coch; }

// p : X_*(T) -> X^*(T),  a |-> sum over all roots <a^vee, a> a^vee
inline IntVec p_map(const IntVec& a, const RootDatum& rd) {
  IntVec out(rd.dim, 0);
  for (std::size_t r = 0; r < rd.roots.size(); ++r)
    out = vec_add(out, vec_scale(rd.roots[r], rd.pair(rd.roots[r], a)));
  return out;
}

}  // namespace grcycle
