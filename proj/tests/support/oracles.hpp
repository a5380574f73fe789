#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "grcycle/charring.hpp"
#include "grcycle/rootdata.hpp"

// Independent test oracles.  These deliberately avoid the code paths they
// check: Freudenthal's recursion for weight multiplicities, and the greedy
// character-subtraction algorithm for tensor decompositions.

namespace oracles {

using grcycle::CharacterElement;
using grcycle::Int;
using grcycle::IntVec;
using grcycle::RootDatum;

inline Int dot(const IntVec& a, const IntVec& b) {
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Weight multiplicities of W(lam) by the Freudenthal recursion, run over the
// dominant chamber with orbit lookups by sorting.  GL_n only: the pairing is
// the dot product and the Weyl group permutes coordinates.
inline CharacterElement freudenthal_character(const IntVec& lam, const RootDatum& rd) {
  if (rd.pairing != grcycle::mat_identity(rd.dim))
    throw std::logic_error("freudenthal oracle assumes the dot-product pairing");
  auto dominant_rep = [](IntVec v) {
    std::sort(v.begin(), v.end(), std::greater<Int>());
    return v;
  };
  std::vector<IntVec> doms = grcycle::detail::dominant_below_char(lam, rd);
  auto height = [&](const IntVec& v) { return dot(rd.two_rho_char, v); };
  std::sort(doms.begin(), doms.end(), [&](const IntVec& a, const IntVec& b) {
    Int ha = height(a), hb = height(b);
    if (ha != hb) return ha > hb;
    return a < b;
  });
  std::map<IntVec, Int> mult;  // keyed on dominant weights
  mult[lam] = 1;
  auto lookup = [&](const IntVec& v) -> Int {
    auto it = mult.find(dominant_rep(v));
    return it == mult.end() ? 0 : it->second;
  };
  const IntVec& tr = rd.two_rho_char;
  const Int top_height = height(lam);
  for (const IntVec& eta : doms) {
    if (eta == lam) continue;
    // denominator (lam - eta, lam + eta + 2 rho)
    Int denom = dot(grcycle::vec_sub(lam, eta), grcycle::vec_add(grcycle::vec_add(lam, eta), tr));
    Int num = 0;
    for (int p : rd.positive) {
      const IntVec& alpha = rd.roots[p];
      IntVec v = grcycle::vec_add(eta, alpha);
      while (height(v) <= top_height) {
        Int m = lookup(v);
        if (m != 0) num += 2 * m * dot(v, alpha);
        v = grcycle::vec_add(v, alpha);
      }
    }
    if (num == 0) continue;
    if (denom == 0) throw std::logic_error("freudenthal oracle hit a zero denominator");
    if (num % denom != 0) throw std::logic_error("freudenthal oracle: non-integral multiplicity");
    Int m = num / denom;
    if (m != 0) mult[eta] = m;
  }
  CharacterElement out(rd.dim);
  for (const auto& [w, m] : mult) {
    std::set<IntVec> orbit;
    for (const auto& wel : rd.weyl) orbit.insert(grcycle::mat_apply(wel.on_char, w));
    for (const auto& v : orbit) out.add_term(v, m);
  }
  return out;
}

// Tensor decomposition by full character product plus greedy subtraction of
// the highest-weight character, using a supplied character function.
template <class CharFn>
inline std::map<IntVec, Int> tensor_by_subtraction(const std::vector<IntVec>& ws,
                                                   const RootDatum& rd, CharFn&& chi) {
  CharacterElement prod = CharacterElement::monomial(IntVec(rd.dim, 0));
  for (const IntVec& w : ws) prod = prod * chi(w);
  std::map<IntVec, Int> out;
  auto height = [&](const IntVec& v) { return dot(rd.two_rho_char, v); };
  std::size_t guard = 1000000;
  while (!prod.is_zero()) {
    if (guard-- == 0) throw std::logic_error("tensor oracle did not terminate");
    // highest remaining term: maximal height, ties by lexicographic order
    IntVec top;
    bool have = false;
    for (const auto& [w, c] : prod.terms()) {
      if (!have || height(w) > height(top) || (height(w) == height(top) && top < w)) {
        top = w;
        have = true;
      }
    }
    Int m = prod.coeff(top);
    if (!rd.dominant_char(top) || m < 0)
      throw std::logic_error("tensor oracle: product is not a nonnegative sum of characters");
    out[top] = m;
    prod -= m * chi(top);
  }
  return out;
}

}  // namespace oracles
