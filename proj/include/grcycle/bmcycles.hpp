#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "charring.hpp"
#include "errors.hpp"
#include "rootdata.hpp"
#include "tensor.hpp"

// Hodge-type bound gates and the cycle-coefficient system m_lambda:
// multiplicities of W(lambda) inside the tensor product of the W(mu_i - rho),
// together with the dimension bookkeeping for the associated cycles.
//
// All Hodge-type data lives on the cocharacter side of the group datum.

namespace grcycle {

struct HodgeType {
  int e = 1;
  std::vector<IntVec> mus;   // e dominant cocharacters
  Int residue_char = 0;      // prime, or 0 for characteristic zero
  Int nu = 1;                // ramification-valuation parameter

  bool operator==(const HodgeType& o) const {
    return e == o.e && mus == o.mus && residue_char == o.residue_char && nu == o.nu;
  }
};

struct BoundsReport {
  bool gate_a1 = true;   // max_a sum_i <a^vee, mu_i>  <=  p + e - 1
  bool gate_a2 = true;   // max_a sum_i <a^vee, mu_i>  <=  p
  bool gate_nu = true;   // max_a sum_i <a^vee, mu_i>  <=  (p-1)/nu + 1
  Int max_root_sum = 0;  // max over roots of sum_i <a^vee, mu_i>
  std::vector<bool> strictly_dominant;
};

inline BoundsReport check_bounds(const HodgeType& h, const RootDatum& rd) {
  if (static_cast<int>(h.mus.size()) != h.e)
    throw InputError("Hodge type holds " + std::to_string(h.mus.size()) + " cocharacters, e = " +
                     std::to_string(h.e));
  if (h.nu < 1) throw InputError("nu must be a positive integer");
  BoundsReport rep;
  for (std::size_t r = 0; r < rd.roots.size(); ++r) {
    Int s = 0;
    for (const IntVec& mu : h.mus) s += rd.pair(rd.roots[r], mu);
    rep.max_root_sum = std::max(rep.max_root_sum, s);
  }
  Int p = h.residue_char;
  if (p == 0) {
    rep.gate_a1 = rep.gate_a2 = rep.gate_nu = true;  // char-zero hypotheses are vacuous
  } else {
    rep.gate_a1 = rep.max_root_sum <= p + h.e - 1;
    rep.gate_a2 = rep.max_root_sum <= p;
    rep.gate_nu = rep.max_root_sum * h.nu <= (p - 1) + h.nu;  // rational comparison cleared of nu
  }
  for (const IntVec& mu : h.mus) rep.strictly_dominant.push_back(rd.strictly_dominant_coch(mu));
  return rep;
}

// Exactly the dominant coweights <= bound in the dominance order, bound first.
inline std::vector<IntVec> enumerate_dominant_below(const IntVec& bound, const RootDatum& rd) {
  return detail::dominant_below_char(bound, rd.dual());
}

// sum over positive roots of min{e, <a^vee, lam>}
inline Int cycle_dimension(const IntVec& lam, int e, const RootDatum& rd) {
  Int s = 0;
  for (int p : rd.positive) s += std::min<Int>(e, rd.pair(rd.roots[p], lam));
  return s;
}

// <2 rho^vee, lam>
inline Int schubert_dimension(const IntVec& lam, const RootDatum& rd) {
  if (!rd.dominant_coch(lam)) throw InputError("schubert_dimension needs a dominant coweight");
  return rd.pair(rd.two_rho_char, lam);
}

struct CycleCoefficients {
  std::map<IntVec, Int> coeffs;  // lambda -> m_lambda, all > 0
  HodgeType base;
  IntVec rho;
  IntVec leading;                // sum mu_i - e rho; always m = 1 there
};

inline CycleCoefficients bm_coefficients(const HodgeType& h, const RootDatum& rd,
                                         bool override_bounds = false) {
  if (!rd.twist_coch) throw InputError("no twisting element");
  const IntVec& rho = *rd.twist_coch;
  if (static_cast<int>(h.mus.size()) != h.e)
    throw InputError("Hodge type length disagrees with e");
  for (const IntVec& mu : h.mus)
    if (!rd.strictly_dominant_coch(mu))
      throw InputError("Hodge type entries must be strictly dominant");
  BoundsReport rep = check_bounds(h, rd);
  if (!rep.gate_a1 && !override_bounds)
    throw BoundViolation("Hodge-type bound violated: max root sum " +
                         std::to_string(rep.max_root_sum) + " > char + e - 1");

  RootDatum rdd = rd.dual();
  std::vector<IntVec> shifted;
  for (const IntVec& mu : h.mus) shifted.push_back(vec_sub(mu, rho));

  CycleCoefficients cc;
  cc.base = h;
  cc.rho = rho;
  cc.coeffs = multi_tensor_decompose(shifted, rdd);

  IntVec bound(rd.dim, 0);
  for (const IntVec& mu : h.mus) bound = vec_add(bound, mu);
  bound = vec_sub(bound, vec_scale(rho, h.e));
  cc.leading = bound;

  std::vector<IntVec> doms = enumerate_dominant_below(bound, rd);
  std::set<IntVec> domset(doms.begin(), doms.end());
  for (const auto& [lam, m] : cc.coeffs) {
    if (!domset.count(lam))
      throw InputError("internal: tensor constituent escapes the dominance cone");
    if (m <= 0) throw InputError("internal: nonpositive cycle coefficient");
  }
  auto lead = cc.coeffs.find(bound);
  if (lead == cc.coeffs.end() || lead->second != 1)
    throw InputError("internal: leading cycle coefficient is not 1");
  return cc;
}

}  // namespace grcycle
