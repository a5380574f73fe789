#pragma once

#include <map>
#include <vector>

#include "charring.hpp"
#include "errors.hpp"
#include "rootdata.hpp"

// Tensor-product decomposition of Weyl modules in the Grothendieck group,
// via Brauer-Klimyk straightening.  All vectors are read on the character
// side of the root datum passed in.

namespace grcycle {

struct Straightened {
  bool zero = false;
  int sign = 1;
  IntVec dom;
};

// Dot-action straightening of nu relative to the character-side twisting
// element: zero when nu + rho_0 lies on a wall, otherwise the unique
// ((-1)^{l(w)}, w(nu + rho_0) - rho_0) with the image strictly dominant.
inline Straightened straighten(const IntVec& nu, const RootDatum& rd) {
  if (!rd.twist_char)
    throw InputError("straighten needs a character-side twisting element");
  IntVec v = vec_add(nu, *rd.twist_char);
  int sign = 1;
  std::size_t guard = 4 * rd.weyl_order() + 16;
  while (guard-- > 0) {
    bool moved = false;
    for (int s : rd.simple) {
      Int p = rd.pair(v, rd.coroots[s]);
      if (p == 0) return {true, 1, {}};
      if (p < 0) {
        v = vec_sub(v, vec_scale(rd.roots[s], p));
        sign = -sign;
        moved = true;
        break;
      }
    }
    if (!moved) return {false, sign, vec_sub(v, *rd.twist_char)};
  }
  throw InputError("straighten did not terminate; root datum is inconsistent");
}

// chi(a) chi(b) = sum m_nu chi(nu), all m_nu >= 0.  The weights of the factor
// of smaller dimension drive the loop.
inline std::map<IntVec, Int> product_decompose(const IntVec& a, const IntVec& b,
                                               const RootDatum& rd) {
  if (!rd.dominant_char(a) || !rd.dominant_char(b))
    throw InputError("product_decompose needs dominant weights");
  const bool a_small = weyl_dimension(a, rd) <= weyl_dimension(b, rd);
  const IntVec& small = a_small ? a : b;
  const IntVec& big = a_small ? b : a;
  CharacterElement ch = weyl_character(small, rd);
  std::map<IntVec, Int> out;
  for (const auto& [eta, m] : ch.terms()) {
    Straightened s = straighten(vec_add(eta, big), rd);
    if (s.zero) continue;
    Int& slot = out[s.dom];
    slot += m * s.sign;
    if (slot == 0) out.erase(s.dom);
  }
  for (const auto& [nu, m] : out)
    if (m < 0) throw InputError("internal: negative multiplicity in tensor decomposition");
  return out;
}

// Left fold of product_decompose; the empty list is the unit {0 : 1}.
inline std::map<IntVec, Int> multi_tensor_decompose(const std::vector<IntVec>& ws,
                                                    const RootDatum& rd) {
  std::map<IntVec, Int> acc;
  acc[IntVec(rd.dim, 0)] = 1;
  for (const IntVec& w : ws) {
    if (!rd.dominant_char(w)) throw InputError("multi_tensor_decompose needs dominant weights");
    std::map<IntVec, Int> next;
    for (const auto& [lam, mult] : acc)
      for (const auto& [nu, m] : product_decompose(lam, w, rd)) next[nu] += mult * m;
    acc = std::move(next);
  }
  return acc;
}

}  // namespace grcycle
