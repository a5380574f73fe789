#pragma once

#include <random>
#include <vector>

#include "grcycle/lattice.hpp"
#include "grcycle/series_matrix.hpp"

// Random generators for lattice tests: invertible matrices over the Laurent
// field built from elementary and diagonal factors, so the determinant stays
// a unit off E(u).

namespace randmat {

using grcycle::ConstMat;
using grcycle::EConfig;
using grcycle::Frac;
using grcycle::Int;
using grcycle::Poly;
using grcycle::SeriesMatrix;

// random polynomial of degree <= maxdeg with entries in [-3, 3] (mod p)
template <class Ctx>
grcycle::Poly<typename Ctx::Field> random_poly(const Ctx& ctx, std::mt19937& gen, int maxdeg) {
  using K = typename Ctx::Field;
  std::uniform_int_distribution<Int> coeff(-3, 3);
  std::uniform_int_distribution<int> deg(0, maxdeg);
  int d = deg(gen);
  std::vector<K> c;
  for (int i = 0; i <= d; ++i) c.push_back(ctx.from_int(coeff(gen)));
  return grcycle::Poly<K>(std::move(c));
}

// product of unipotent elementary factors and u-power diagonals: invertible
// with u-monomial determinant
template <class Ctx>
SeriesMatrix<typename Ctx::Field> random_unit_matrix(const Ctx& ctx, std::mt19937& gen, int n,
                                                     int factors = 4, int maxdeg = 2,
                                                     int max_upow = 2) {
  using K = typename Ctx::Field;
  SeriesMatrix<K> x = SeriesMatrix<K>::identity(n);
  std::uniform_int_distribution<int> which(0, n - 1), kind(0, 2);
  std::uniform_int_distribution<Int> upow(-max_upow, max_upow);
  for (int f = 0; f < factors; ++f) {
    int k = kind(gen);
    if (k == 2 || n == 1) {
      std::vector<Int> exps(static_cast<std::size_t>(n));
      for (auto& e : exps) e = upow(gen);
      x = x * grcycle::diag_u_powers<K>(exps, ctx.from_int(1));
    } else {
      int i = which(gen), j = which(gen);
      if (i == j) j = (j + 1) % n;
      grcycle::Poly<K> a = random_poly(ctx, gen, maxdeg);
      if (k == 1) {
        // allow a Laurent tail on the unipotent coordinate
        Frac<K> fr(a, grcycle::Poly<K>::monomial(ctx.from_int(1), 1));
        x = x * grcycle::root_group_element<K>(n, i, j, fr);
      } else {
        x = x * grcycle::root_group_element<K>(n, i, j, Frac<K>::of(a));
      }
    }
  }
  return x;
}

// random invertible constant matrix
template <class Ctx>
ConstMat<typename Ctx::Field> random_invertible_const(const Ctx& ctx, std::mt19937& gen, int n) {
  using K = typename Ctx::Field;
  std::uniform_int_distribution<Int> entry(-3, 3);
  while (true) {
    ConstMat<K> m(static_cast<std::size_t>(n), std::vector<K>(static_cast<std::size_t>(n)));
    for (auto& row : m)
      for (auto& v : row) v = ctx.from_int(entry(gen));
    try {
      grcycle::const_inverse(m);
      return m;
    } catch (const grcycle::InputError&) {
      continue;
    }
  }
}

}  // namespace randmat
