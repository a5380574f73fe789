#pragma once

#include <string>
#include <vector>

#include "bmcycles.hpp"
#include "charring.hpp"
#include "errors.hpp"
#include "rootdata.hpp"

// Desk-scale checks of the antisymmetrized identity behind the cycle
// coefficients and of the polynomial-degree behaviour of the character
// difference sequences.

namespace grcycle {

// prod_i A(n mu_i) == sum_lambda m_lambda A(n(lambda+rho)) A(n rho)^{e-1},
// exactly, in Z[X_*(T)].
inline bool exact_antisym_identity(const HodgeType& h, const CycleCoefficients& cc, Int n,
                                   const RootDatum& rd) {
  if (!(cc.base == h)) throw InputError("cycle coefficients were computed for a different Hodge type");
  if (n < 1) throw InputError("n must be positive");
  RootDatum rdd = rd.dual();
  CharacterElement lhs = CharacterElement::monomial(IntVec(rd.dim, 0));
  for (const IntVec& mu : h.mus) lhs *= antisymmetrize(vec_scale(mu, n), rdd);
  CharacterElement a_nrho = antisymmetrize(vec_scale(cc.rho, n), rdd);
  CharacterElement rho_pow = CharacterElement::monomial(IntVec(rd.dim, 0));
  for (int i = 1; i < h.e; ++i) rho_pow *= a_nrho;
  CharacterElement rhs(rd.dim);
  for (const auto& [lam, m] : cc.coeffs)
    rhs += m * (antisymmetrize(vec_scale(vec_add(lam, cc.rho), n), rdd) * rho_pow);
  return lhs == rhs;
}

// When the two sides differ, name one offending monomial for diagnostics.
struct AntisymMismatch {
  bool holds = true;
  IntVec monomial;
  Int lhs_coeff = 0, rhs_coeff = 0;
};

inline AntisymMismatch exact_antisym_identity_diag(const HodgeType& h, const CycleCoefficients& cc,
                                                   Int n, const RootDatum& rd) {
  if (!(cc.base == h)) throw InputError("cycle coefficients were computed for a different Hodge type");
  RootDatum rdd = rd.dual();
  CharacterElement lhs = CharacterElement::monomial(IntVec(rd.dim, 0));
  for (const IntVec& mu : h.mus) lhs *= antisymmetrize(vec_scale(mu, n), rdd);
  CharacterElement a_nrho = antisymmetrize(vec_scale(cc.rho, n), rdd);
  CharacterElement rho_pow = CharacterElement::monomial(IntVec(rd.dim, 0));
  for (int i = 1; i < h.e; ++i) rho_pow *= a_nrho;
  CharacterElement rhs(rd.dim);
  for (const auto& [lam, m] : cc.coeffs)
    rhs += m * (antisymmetrize(vec_scale(vec_add(lam, cc.rho), n), rdd) * rho_pow);
  AntisymMismatch out;
  CharacterElement diff = lhs - rhs;
  if (diff.is_zero()) return out;
  out.holds = false;
  out.monomial = diff.terms().begin()->first;
  out.lhs_coeff = lhs.coeff(out.monomial);
  out.rhs_coeff = rhs.coeff(out.monomial);
  return out;
}

struct NormSequence {
  std::vector<Int> norms;        // l1 norms of the difference, n = 1..n_max
  std::vector<Int> signed_sums;  // signed coefficient sums of the difference
};

// l1 norm of  prod_i chi(p(n mu_i)) - sum_l m_l chi(p(n(l+rho))) chi(p(n rho))^{e-1}
// for n = 1..n_max.  Lives in Z[X^*(T)] through the p-map.
inline NormSequence difference_norm_sequence(const HodgeType& h, const CycleCoefficients& cc,
                                             Int n_max, const RootDatum& rd, Int cap = 16) {
  if (!(cc.base == h)) throw InputError("cycle coefficients were computed for a different Hodge type");
  if (n_max < 1) throw InputError("n_max must be positive");
  if (n_max > cap) throw CapExceeded("difference_norm_sequence n_max exceeds cap");
  IntVec p_rho = p_map(cc.rho, rd);
  std::vector<IntVec> p_mus;
  for (const IntVec& mu : h.mus) p_mus.push_back(p_map(mu, rd));
  std::vector<std::pair<IntVec, Int>> p_lams;
  for (const auto& [lam, m] : cc.coeffs) p_lams.emplace_back(p_map(vec_add(lam, cc.rho), rd), m);
  NormSequence seq;
  for (Int n = 1; n <= n_max; ++n) {
    CharacterElement lhs = CharacterElement::monomial(IntVec(rd.dim, 0));
    for (const IntVec& pm : p_mus) lhs *= weyl_character(vec_scale(pm, n), rd);
    CharacterElement chi_rho = weyl_character(vec_scale(p_rho, n), rd);
    CharacterElement rho_pow = CharacterElement::monomial(IntVec(rd.dim, 0));
    for (int i = 1; i < h.e; ++i) rho_pow *= chi_rho;
    CharacterElement rhs(rd.dim);
    for (const auto& [pl, m] : p_lams) rhs += m * (weyl_character(vec_scale(pl, n), rd) * rho_pow);
    CharacterElement diff = lhs - rhs;
    seq.norms.push_back(l1_norm(diff));
    seq.signed_sums.push_back(coefficient_sum(diff));
  }
  return seq;
}

enum class DegreeVerdict { Consistent, Inconsistent };

struct DegreeEstimate {
  DegreeVerdict verdict = DegreeVerdict::Consistent;
  std::vector<Int> dth_differences;  // |Delta^d s|, reported raw
};

// Falsifiable numeric heuristic for "the sequence grows like a polynomial of
// degree < d": the d-th forward differences must be non-increasing in
// absolute value and actually shrink (or vanish) along the tail.
inline DegreeEstimate degree_estimate(const std::vector<Int>& seq, int d) {
  if (d < 1) throw InputError("degree bound must be positive");
  if (static_cast<int>(seq.size()) < d + 2)
    throw InputError("degree_estimate needs a sequence of length >= d + 2");
  std::vector<Int> cur = seq;
  for (int k = 0; k < d; ++k) {
    std::vector<Int> nxt(cur.size() - 1);
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) nxt[i] = cur[i + 1] - cur[i];
    cur = std::move(nxt);
  }
  DegreeEstimate est;
  for (Int& v : cur) v = v < 0 ? -v : v;
  est.dth_differences = cur;
  bool nonincreasing = true;
  for (std::size_t i = 0; i + 1 < cur.size(); ++i)
    if (cur[i + 1] > cur[i]) nonincreasing = false;
  bool shrinks = cur.back() == 0 || cur.back() < cur.front();
  est.verdict = (nonincreasing && shrinks) ? DegreeVerdict::Consistent : DegreeVerdict::Inconsistent;
  return est;
}

}  // namespace grcycle
