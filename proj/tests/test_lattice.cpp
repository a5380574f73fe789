#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "grcycle/lattice.hpp"
#include "support/randmat.hpp"

using namespace grcycle;

namespace {

Frac<Rat> rp(std::vector<Int> coeffs) {
  std::vector<Rat> c;
  for (Int v : coeffs) c.emplace_back(v);
  return Frac<Rat>::of(Poly<Rat>(std::move(c)));
}

Lattice<Rat> diag_lattice(std::vector<Frac<Rat>> d) {
  SeriesMatrix<Rat> m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
  return Lattice<Rat>{m};
}

}  // namespace

TEST_CASE("relative position examples") {
  CHECK(relative_position(Lattice<Rat>{diag_u_powers<Rat>({2, 0})}) == IntVec{2, 0});
  SeriesMatrix<Rat> x(2);
  x.at(0, 0) = rp({0, 1});
  x.at(0, 1) = rp({1});
  x.at(1, 1) = rp({1});
  CHECK(relative_position(Lattice<Rat>{x}) == IntVec{1, 0});
  CHECK(relative_position(Lattice<Rat>{diag_u_powers<Rat>({-1, 3})}) == IntVec{3, -1});
}

TEST_CASE("relative position is unimodular invariant") {
  FpCtx ctx(11);
  std::mt19937 gen(21);
  std::uniform_int_distribution<int> pos(0, 2);
  auto random_unimodular = [&]() {
    SeriesMatrix<Fp> u = embed_const(randmat::random_invertible_const(ctx, gen, 3));
    for (int f = 0; f < 4; ++f) {
      int i = pos(gen), j = pos(gen);
      if (i == j) j = (j + 1) % 3;
      u = u * root_group_element<Fp>(3, i, j, Frac<Fp>::of(randmat::random_poly(ctx, gen, 2)));
    }
    return u;
  };
  for (int t = 0; t < 60; ++t) {
    std::uniform_int_distribution<Int> upow(-2, 3);
    std::vector<Int> exps(3);
    for (auto& e : exps) e = upow(gen);
    SeriesMatrix<Fp> d = diag_u_powers<Fp>(exps, ctx.from_int(1));
    IntVec expect = exps;
    std::sort(expect.begin(), expect.end(), std::greater<Int>());
    CHECK(relative_position(Lattice<Fp>{random_unimodular() * d * random_unimodular()}) == expect);
  }
}

TEST_CASE("wedge condition examples") {
  RatCtx ctx;
  EConfig<Rat> ec = EConfig<Rat>::generic_fibre({Rat(1), Rat(2)});
  HodgeType h{2, {{1, 0}, {1, 0}}, 0, 1};
  // diag((u - pi1)(u - pi2), 1) passes
  Lattice<Rat> l1 = diag_lattice({rp({2, -3, 1}), rp({1})});
  CHECK(wedge_condition(l1, h, ec));
  // diag((u - pi1)^2, 1) fails: (u-1)^2 is not divisible by (u-1)(u-2)
  Lattice<Rat> l2 = diag_lattice({rp({1, -2, 1}), rp({1})});
  CHECK_FALSE(wedge_condition(l2, h, ec));
  // identity with the zero type passes
  HodgeType h0{2, {{0, 0}, {0, 0}}, 0, 1};
  CHECK(wedge_condition(Lattice<Rat>{SeriesMatrix<Rat>::identity(2)}, h0, ec));
}

TEST_CASE("wedge condition on the special fibre with truncation") {
  EConfig<Rat> ec = EConfig<Rat>::special_fibre(2);
  HodgeType h{2, {{1, 0}, {1, 0}}, 0, 1};
  // diag(u^2, 1): minors need u-valuations (0, 2) against bounds (0, 2)
  Lattice<Rat> lat{diag_u_powers<Rat>({2, 0})};
  CHECK(wedge_condition(lat, h, ec));
  lat.gen.set_prec(5);
  CHECK(wedge_condition(lat, h, ec));
  lat.gen.set_prec(1);  // cannot certify valuation >= 2 any more
  CHECK_THROWS_AS(wedge_condition(lat, h, ec), PrecisionError);
  // a visible violation stays decidable at low precision
  Lattice<Rat> bad{diag_u_powers<Rat>({1, 0})};
  bad.gen.set_prec(2);
  CHECK_FALSE(wedge_condition(bad, h, ec));
}

TEST_CASE("psi of Frobenius examples") {
  RatCtx ctx;
  EConfig<Rat> sp = EConfig<Rat>::special_fibre(2);
  // diagonal Frobenius: position is the sorted exponent vector
  Lattice<Rat> l1 = psi_of_frobenius(diag_u_powers<Rat>({1, 3}), sp);
  CHECK(relative_position(l1) == IntVec{3, 1});
  // identity: the standard lattice
  Lattice<Rat> l2 = psi_of_frobenius(SeriesMatrix<Rat>::identity(3), sp);
  CHECK(relative_position(l2) == IntVec{0, 0, 0});
  // rank one: C = u^e
  SeriesMatrix<Rat> c1(1);
  c1.at(0, 0) = Frac<Rat>::monomial(Rat(1), 2);
  CHECK(relative_position(psi_of_frobenius(c1, sp)) == IntVec{2});
  // determinant vanishing away from E is rejected
  SeriesMatrix<Rat> badm(2);
  badm.at(0, 0) = rp({-1, 1});  // u - 1, but E = u^2
  badm.at(1, 1) = rp({1});
  CHECK_THROWS_AS(psi_of_frobenius(badm, sp), InputError);
  // ... but is fine when 1 is one of the pi_i
  EConfig<Rat> gec = EConfig<Rat>::generic_fibre({Rat(1), Rat(2)});
  CHECK(psi_of_frobenius(badm, gec).size() == 2);
}

TEST_CASE("flag to lattice: the coordinate line anchor") {
  EConfig<Rat> ec = EConfig<Rat>::generic_fibre({Rat(3)});
  Filtration<Rat> fil{const_identity<Rat>(2), {1, 0}};
  Lattice<Rat> lat = flag_to_lattice<Rat>({fil}, ec);
  CHECK(relative_position_at(lat, Rat(3)) == IntVec{1, 0});
  // trivial types give the standard lattice
  Filtration<Rat> triv{const_identity<Rat>(2), {0, 0}};
  Lattice<Rat> std_lat = flag_to_lattice<Rat>({triv}, ec);
  CHECK(std_lat.gen == SeriesMatrix<Rat>::identity(2));
}

TEST_CASE("flag embeddings satisfy the Schubert bound and the nabla condition") {
  RatCtx ctx;
  std::mt19937 gen(33);
  std::uniform_int_distribution<Int> typegen(0, 2);
  int done = 0;
  while (done < 50) {
    int n = (done % 2 == 0) ? 2 : 3;
    int e = (done % 4 < 2) ? 1 : 2;
    std::vector<Rat> pis;
    pis.emplace_back(1);
    if (e == 2) pis.emplace_back(2);
    EConfig<Rat> ec = EConfig<Rat>::generic_fibre(pis);
    std::vector<Filtration<Rat>> fils;
    HodgeType h{e, {}, 0, 1};
    for (int i = 0; i < e; ++i) {
      IntVec type(static_cast<std::size_t>(n));
      for (auto& t : type) t = typegen(gen);
      std::sort(type.begin(), type.end(), std::greater<Int>());
      fils.push_back({randmat::random_invertible_const(ctx, gen, n), type});
      h.mus.push_back(type);
    }
    Lattice<Rat> lat = flag_to_lattice(fils, ec);
    CHECK(wedge_condition(lat, h, ec));
    CHECK(in_nabla(lat.gen, ec));
    for (int i = 0; i < e; ++i)
      CHECK(relative_position_at(lat, ec.pis[static_cast<std::size_t>(i)]) ==
            fils[static_cast<std::size_t>(i)].type);
    ++done;
  }
}

TEST_CASE("flag to lattice rejects bad input") {
  EConfig<Rat> ec = EConfig<Rat>::generic_fibre({Rat(1), Rat(2)});
  Filtration<Rat> fil{const_identity<Rat>(2), {1, 0}};
  CHECK_THROWS_AS(flag_to_lattice<Rat>({fil}, ec), InputError);  // wrong length
  EConfig<Rat> sp = EConfig<Rat>::special_fibre(1);
  CHECK_THROWS_AS(flag_to_lattice<Rat>({fil}, sp), InputError);  // special fibre
  ConstMat<Rat> singular{{Rat(1), Rat(1)}, {Rat(1), Rat(1)}};
  EConfig<Rat> ec1 = EConfig<Rat>::generic_fibre({Rat(1)});
  CHECK_THROWS_AS(flag_to_lattice<Rat>({Filtration<Rat>{singular, {1, 0}}}, ec1), InputError);
}

TEST_CASE("relative position away from zero requires exact entries") {
  Lattice<Rat> lat{diag_u_powers<Rat>({1, 0})};
  lat.gen.set_prec(6);
  CHECK(relative_position(lat) == IntVec{1, 0});
  CHECK_THROWS_AS(relative_position_at(lat, Rat(1)), PrecisionError);
}
