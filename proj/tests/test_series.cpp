#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "grcycle/series_matrix.hpp"
#include "support/randmat.hpp"

using namespace grcycle;

namespace {

template <class K>
SeriesMatrix<K> upper(const Frac<K>& f) {
  return root_group_element<K>(2, 0, 1, f);
}

Frac<Rat> rp(std::vector<Int> coeffs) {
  std::vector<Rat> c;
  for (Int v : coeffs) c.emplace_back(v);
  return Frac<Rat>::of(Poly<Rat>(std::move(c)));
}

}  // namespace

TEST_CASE("dlog of an elementary unipotent") {
  // X = [[1, u], [0, 1]] -> dlog = [[0, 1], [0, 0]]
  SeriesMatrix<Rat> x = upper<Rat>(rp({0, 1}));
  SeriesMatrix<Rat> d = dlog_u(x);
  CHECK(d.at(0, 0).is_zero());
  CHECK(d.at(0, 1) == rp({1}));
  CHECK(d.at(1, 0).is_zero());
  CHECK(d.at(1, 1).is_zero());
}

TEST_CASE("dlog kills constants") {
  RatCtx ctx;
  std::mt19937 gen(3);
  for (int t = 0; t < 20; ++t) {
    auto c = randmat::random_invertible_const(ctx, gen, 3);
    SeriesMatrix<Rat> x = embed_const(c);
    SeriesMatrix<Rat> d = dlog_u(x);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(d.at(i, j).is_zero());
  }
}

TEST_CASE("dlog of a cocharacter point is diagonal with the right residues") {
  // diag(u^a, u^b) -> diag(a/u, b/u); pairings with the roots read off as a-b
  SeriesMatrix<Rat> x = diag_u_powers<Rat>({3, -1});
  SeriesMatrix<Rat> d = dlog_u(x);
  CHECK(d.at(0, 0) == Frac<Rat>::monomial(Rat(3), -1));
  CHECK(d.at(1, 1) == Frac<Rat>::monomial(Rat(-1), -1));
  CHECK(d.at(0, 1).is_zero());
  // u dlog is in Lie(T) and alpha(u dlog(u^lam)) = <alpha, lam> = 4
  Frac<Rat> udiag = d.at(0, 0) * Frac<Rat>::monomial(Rat(1), 1);
  Frac<Rat> udiag2 = d.at(1, 1) * Frac<Rat>::monomial(Rat(1), 1);
  CHECK(udiag - udiag2 == Frac<Rat>::constant(Rat(4)));
}

TEST_CASE("cocycle law for dlog") {
  for (int n : {1, 2, 3}) {
    FpCtx ctx(11);
    std::mt19937 gen(100 + n);
    int trials = 100;
    for (int t = 0; t < trials; ++t) {
      auto g = randmat::random_unit_matrix(ctx, gen, n);
      auto h = randmat::random_unit_matrix(ctx, gen, n);
      auto lhs = dlog_u(g * h);
      auto rhs = h.inverse() * dlog_u(g) * h + dlog_u(h);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("in_nabla examples") {
  // X = [[1, 1/u], [0, 1]]: E = u^2 passes, E = u fails
  SeriesMatrix<Rat> x = upper<Rat>(Frac<Rat>::monomial(Rat(1), -1));
  CHECK(in_nabla(x, EConfig<Rat>::special_fibre(2)));
  CHECK_FALSE(in_nabla(x, EConfig<Rat>::special_fibre(1)));
  // diagonal points always pass
  for (int e : {1, 2, 3}) {
    CHECK(in_nabla(diag_u_powers<Rat>({4, 0}), EConfig<Rat>::special_fibre(e)));
    CHECK(in_nabla(diag_u_powers<Rat>({2, -3}), EConfig<Rat>::special_fibre(e)));
  }
}

TEST_CASE("nabla locus is stable under constant multiplication") {
  FpCtx ctx(13);
  std::mt19937 gen(5);
  EConfig<Fp> ec = EConfig<Fp>::special_fibre(2);
  int hits_true = 0, hits_false = 0;
  for (int t = 0; t < 120; ++t) {
    auto x = randmat::random_unit_matrix(ctx, gen, 3);
    bool base = in_nabla(x, ec);
    auto g = randmat::random_invertible_const(ctx, gen, 3);
    CHECK(in_nabla(embed_const(g) * x, ec) == base);
    (base ? hits_true : hits_false)++;
  }
  // the sample must exercise both outcomes to mean anything
  CHECK(hits_true > 0);
  CHECK(hits_false > 0);
}

TEST_CASE("loop rotation preserves the nabla locus") {
  FpCtx ctx(11);
  std::mt19937 gen(9);
  EConfig<Fp> ec = EConfig<Fp>::special_fibre(2);
  std::uniform_int_distribution<Int> unit(1, 10);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    auto x = randmat::random_unit_matrix(ctx, gen, 2, 5);
    Fp u = ctx.from_int(unit(gen));
    CHECK(in_nabla(loop_rotate(x, u, ec), ec) == in_nabla(x, ec));
    ++checked;
  }
  CHECK(checked == 50);
  // t = 1 leaves the matrix alone
  auto x = randmat::random_unit_matrix(ctx, gen, 2);
  CHECK(loop_rotate(x, ctx.from_int(1), ec) == x);
  // generic-fibre rotation is rejected
  RatCtx rctx;
  EConfig<Rat> gec = EConfig<Rat>::generic_fibre({Rat(1), Rat(2)});
  CHECK_THROWS_AS(loop_rotate(diag_u_powers<Rat>({1, 0}), Rat(2), gec), InputError);
}

TEST_CASE("loop rotation keeps relative position of diagonals") {
  EConfig<Fp> ec = EConfig<Fp>::special_fibre(1);
  FpCtx ctx(7);
  SeriesMatrix<Fp> x = diag_u_powers<Fp>({2, -1}, ctx.from_int(1));
  SeriesMatrix<Fp> y = loop_rotate(x, ctx.from_int(3), ec);
  CHECK(y.at(0, 0) == Frac<Fp>::monomial(ctx.from_int(9), 2));
  Lattice<Fp> lx{x}, ly{y};
  CHECK(relative_position(lx) == relative_position(ly));
}

TEST_CASE("truncated matrices: decidable and undecidable membership") {
  // entries known only below degree N; [[1, 1/u],[0,1]] with E = u^2
  SeriesMatrix<Rat> x = upper<Rat>(Frac<Rat>::monomial(Rat(1), -1));
  x.set_prec(4);
  CHECK(in_nabla(x, EConfig<Rat>::special_fibre(2)));
  CHECK_FALSE(in_nabla(x, EConfig<Rat>::special_fibre(1)));
  // too little precision to see the candidate negative window
  SeriesMatrix<Rat> y = upper<Rat>(Frac<Rat>::monomial(Rat(1), -3));
  y.set_prec(1);
  CHECK_THROWS_AS(in_nabla(y, EConfig<Rat>::special_fibre(1)), PrecisionError);
  // truncated generic fibre is refused
  SeriesMatrix<Rat> z = diag_u_powers<Rat>({1, 0});
  z.set_prec(3);
  EConfig<Rat> gec = EConfig<Rat>::generic_fibre({Rat(1), Rat(2)});
  CHECK_THROWS_AS(in_nabla(z, gec), PrecisionError);
}

TEST_CASE("precision propagates through products") {
  SeriesMatrix<Rat> a = upper<Rat>(rp({0, 1}));
  a.set_prec(5);
  SeriesMatrix<Rat> b = diag_u_powers<Rat>({-2, 0});
  CHECK((a * b).prec() == 3);  // min degree of b is -2
  CHECK((a + b).prec() == 5);
  CHECK(a.derivative().prec() == 4);
}

TEST_CASE("exact in_nabla rejects poles away from E") {
  // X with determinant u - 1: dlog gains a pole at 1, E = u^e cannot clear it
  SeriesMatrix<Rat> x(2);
  x.at(0, 0) = rp({-1, 1});
  x.at(1, 1) = rp({1});
  CHECK_FALSE(in_nabla(x, EConfig<Rat>::special_fibre(2)));
}
