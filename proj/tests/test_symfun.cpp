#include <doctest.h>

#include <lambdak/lambda_expr.hpp>
#include <lambdak/multipoly.hpp>
#include <lambdak/symfun.hpp>

#include <random>
#include <stdexcept>
#include <vector>

using namespace lambdak;

namespace {

MultiPoly x(unsigned i) { return MultiPoly::variable(i); }
LambdaExpr Lr(unsigned i) { return LambdaExpr::r_symbol(i); }
LambdaExpr Ls(unsigned j) { return LambdaExpr::s_symbol(j); }

// Weight of one monomial in one symbol bank: sum of index * exponent. Every
// universal polynomial is isobaric, all its monomials share one weight.
unsigned bank_weight(const Exponents& exps, bool s_bank) {
  unsigned w = 0;
  for (unsigned v = 0; v < exps.size(); ++v) {
    if (exps[v] == 0) continue;
    const LambdaExpr::Var var = LambdaExpr::decode(v);
    if (var.s_bank == s_bank) w += var.index * exps[v];
  }
  return w;
}

void check_isobaric(const LambdaExpr& ex, unsigned r_weight, unsigned s_weight) {
  for (const auto& [exps, coef] : ex.poly().terms()) {
    CHECK(bank_weight(exps, false) == r_weight);
    CHECK(bank_weight(exps, true) == s_weight);
  }
}

// Exchanges the two symbol banks.
LambdaExpr swap_banks(const LambdaExpr& ex) {
  std::vector<std::pair<Exponents, Int>> terms;
  for (const auto& [exps, coef] : ex.poly().terms()) {
    Exponents swapped;
    for (unsigned v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      const LambdaExpr::Var var = LambdaExpr::decode(v);
      const unsigned tv = var.s_bank ? LambdaExpr::encode_r(var.index)
                                     : LambdaExpr::encode_s(var.index);
      if (swapped.size() <= tv) swapped.resize(tv + 1, 0);
      swapped[tv] = exps[v];
    }
    terms.emplace_back(std::move(swapped), coef);
  }
  return LambdaExpr::from_poly(MultiPoly::from_terms(std::move(terms)));
}

}  // namespace

TEST_CASE("elementary symmetric polynomials in small sizes") {
  CHECK(elementary(3, 0) == MultiPoly::one());
  CHECK(elementary(3, 1) == x(0) + x(1) + x(2));
  CHECK(elementary(3, 2) == x(0) * x(1) + x(0) * x(2) + x(1) * x(2));
  CHECK(elementary(3, 3) == x(0) * x(1) * x(2));
  CHECK(elementary(3, 4).is_zero());
  CHECK(elementary(0, 0) == MultiPoly::one());
  CHECK(elementary(0, 1).is_zero());

  // Recurrence in the number of variables: e_i(k) = e_i(k-1) + x_{k-1} e_{i-1}(k-1).
  for (unsigned k = 1; k <= 5; ++k)
    for (unsigned i = 1; i <= k; ++i)
      CHECK(elementary(k, i) ==
            elementary(k - 1, i) + x(k - 1) * elementary(k - 1, i - 1));
}

TEST_CASE("express_in_elementaries round-trips") {
  // Build p as a known polynomial of the elementaries, expand, recover.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coef(-5, 5);
  for (unsigned k = 1; k <= 4; ++k) {
    const std::vector<MultiPoly> e = {elementary(k, 1), elementary(k, 2),
                                      elementary(k, 3), elementary(k, 4)};
    for (int trial = 0; trial < 10; ++trial) {
      // Random combination c0 + c1 e1 + c2 e2^2 + c3 e1 e3 + c4 e4.
      MultiPoly expanded(Int(coef(rng)));
      MultiPoly in_e(Int(expanded.constant_term()));
      const Int c1(coef(rng)), c2(coef(rng)), c3(coef(rng)), c4(coef(rng));
      expanded += e[0] * c1 + e[1] * e[1] * c2 + e[0] * e[2] * c3 + e[3] * c4;
      in_e += x(0) * c1 + x(1) * x(1) * c2 + x(0) * x(2) * c3 + x(3) * c4;
      // Indices above k contribute zero polynomials, drop those terms.
      CHECK(express_in_elementaries(expanded, k) ==
            in_e.substitute({{0, x(0)},
                             {1, k >= 2 ? x(1) : MultiPoly::zero()},
                             {2, k >= 3 ? x(2) : MultiPoly::zero()},
                             {3, k >= 4 ? x(3) : MultiPoly::zero()}}));
    }
  }
}

TEST_CASE("express_in_elementaries pins small identities") {
  // Power sum p2 = e1^2 - 2 e2 for every k >= 2.
  for (unsigned k = 2; k <= 5; ++k) {
    MultiPoly p2 = MultiPoly::zero();
    for (unsigned i = 0; i < k; ++i) p2 += x(i) * x(i);
    CHECK(express_in_elementaries(p2, k) == x(0) * x(0) - x(1) * Int(2));
  }
  // Constants pass through.
  CHECK(express_in_elementaries(MultiPoly(7), 3) == MultiPoly(7));
  CHECK(express_in_elementaries(MultiPoly::zero(), 3).is_zero());
}

TEST_CASE("express_in_elementaries rejects non-symmetric input") {
  CHECK_THROWS_WITH_AS(express_in_elementaries(x(0), 2),
                       doctest::Contains("not symmetric"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(express_in_elementaries(x(0) * x(1) + x(1) * x(2), 3),
                       doctest::Contains("not symmetric"), std::invalid_argument);
  // Variables outside the declared range are named.
  CHECK_THROWS_WITH_AS(express_in_elementaries(x(0) + x(1) + x(2), 2),
                       doctest::Contains("outside the declared range"),
                       std::invalid_argument);
  // Modular coefficients are not part of this computation.
  CHECK_THROWS_AS(express_in_elementaries(x(0).reduce_mod(Int(5)), 1),
                  std::invalid_argument);
}

TEST_CASE("universal product polynomials: pinned small cases") {
  CHECK(universal_product(1, 1, 1).expr == Lr(1) * Ls(1));
  CHECK(universal_product(0, 1, 1).expr == LambdaExpr(Int(1)));

  const LambdaExpr p2 =
      Lr(1).pow(2) * Ls(2) + Ls(1).pow(2) * Lr(2) - Int(2) * Lr(2) * Ls(2);
  CHECK(universal_product(2, 2, 2).expr == p2);
  CHECK(universal_product(2, 2, 2).expr.to_string() ==
        "Lr1^2*Ls2 + Ls1^2*Lr2 - 2*Lr2*Ls2");
}

TEST_CASE("universal product polynomials: structural invariants") {
  for (unsigned n = 1; n <= 4; ++n) {
    const UniversalPoly up = universal_product(n, n, n);
    CHECK(up.kind == UniversalPoly::Kind::product);
    CHECK(up.n == n);
    // Isobaric of weight n in each bank.
    check_isobaric(up.expr, n, n);
    // Symmetric under exchanging the two factors.
    CHECK(swap_banks(up.expr) == up.expr);
    // Stable in the number of underlying variables.
    CHECK(universal_product(n, n + 1, n + 2).expr == up.expr);
  }
}

TEST_CASE("universal composition polynomials: pinned small cases") {
  for (unsigned m = 1; m <= 5; ++m)
    CHECK(universal_compose(1, m, m).expr == Lr(m));
  CHECK(universal_compose(2, 2, 4).expr == Lr(1) * Lr(3) - Lr(4));
  CHECK(universal_compose(2, 2, 4).expr.to_string() == "Lr1*Lr3 - Lr4");
  // lambda^n of lambda^1 is lambda^n.
  for (unsigned n = 1; n <= 4; ++n)
    CHECK(universal_compose(n, 1, n).expr == Lr(n));
}

TEST_CASE("universal composition polynomials: structural invariants") {
  for (unsigned n = 1; n * 2 <= 6; ++n)
    for (unsigned m = 2; n * m <= 6; ++m) {
      const UniversalPoly up = universal_compose(n, m, n * m);
      CHECK(up.kind == UniversalPoly::Kind::composition);
      CHECK(up.n == n);
      CHECK(up.m == m);
      check_isobaric(up.expr, n * m, 0);
      CHECK_FALSE(up.expr.uses_s());
      // Stable in the number of underlying variables.
      CHECK(universal_compose(n, m, n * m + 2).expr == up.expr);
    }
}

TEST_CASE("universal polynomial preconditions") {
  CHECK_THROWS_AS(universal_product(3, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(universal_product(3, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(universal_compose(2, 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(universal_compose(2, 0, 4), std::invalid_argument);
}

TEST_CASE("splitting oracle accepts the real polynomials") {
  for (unsigned n = 0; n <= 3; ++n) {
    const UniversalPoly up = universal_product(n, n == 0 ? 1 : n, n == 0 ? 1 : n);
    CHECK(splitting_oracle_check(up, n + 1, n + 1));
    CHECK(splitting_oracle_check(up, n + 2, n + 1));
  }
  for (unsigned m = 1; m <= 3; ++m) {
    const UniversalPoly up = universal_compose(2, m, 2 * m);
    CHECK(splitting_oracle_check(up, 2 * m));
    CHECK(splitting_oracle_check(up, 2 * m + 1));
  }
}

TEST_CASE("splitting oracle rejects corrupted polynomials") {
  UniversalPoly up = universal_product(2, 2, 2);
  up.expr = up.expr + LambdaExpr(Int(1));
  CHECK_FALSE(splitting_oracle_check(up, 2, 2));

  UniversalPoly uc = universal_compose(2, 2, 4);
  uc.expr = uc.expr + Lr(1);
  CHECK_FALSE(splitting_oracle_check(uc, 4));

  // Sign flips are caught too.
  UniversalPoly us = universal_compose(2, 2, 4);
  us.expr = Lr(1) * Lr(3) + Lr(4);
  CHECK_FALSE(splitting_oracle_check(us, 4));
}

TEST_CASE("lambda symbol layout round-trips") {
  CHECK(LambdaExpr::decode(LambdaExpr::encode_r(3)).index == 3);
  CHECK_FALSE(LambdaExpr::decode(LambdaExpr::encode_r(3)).s_bank);
  CHECK(LambdaExpr::decode(LambdaExpr::encode_s(5)).index == 5);
  CHECK(LambdaExpr::decode(LambdaExpr::encode_s(5)).s_bank);
  CHECK_THROWS_AS(LambdaExpr::encode_r(0), std::invalid_argument);
  CHECK_THROWS_AS(LambdaExpr::encode_s(0), std::invalid_argument);

  const LambdaExpr ex = Lr(2) * Ls(1) - LambdaExpr(Int(4));
  CHECK(ex.max_r_index() == 2);
  CHECK(ex.max_s_index() == 1);
  // Symbols print in interleaved-slot order, so Ls1 comes before Lr2.
  CHECK(ex.to_string() == "Ls1*Lr2 - 4");

  // Substitution: Lr2 -> 3, Ls1 -> x0 gives 3*x0 - 4.
  const std::vector<MultiPoly> rvals = {MultiPoly(9), MultiPoly(3)};
  const std::vector<MultiPoly> svals = {x(0)};
  CHECK(ex.substitute(rvals, svals) == x(0) * Int(3) - MultiPoly(4));
}
