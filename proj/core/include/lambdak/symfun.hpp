#pragma once

#include <lambdak/lambda_expr.hpp>
#include <lambdak/multipoly.hpp>

#include <string>

namespace lambdak {

/// Elementary symmetric polynomial e_i in the variables x_0, ..., x_{k-1}.
/// e_0 = 1; e_i = 0 for i > k.
MultiPoly elementary(unsigned k, unsigned i);

/// Rewrite a symmetric polynomial in x_0..x_{k-1} as a polynomial in
/// e_1..e_k, returned over variables 0..k-1 where variable i-1 stands for
/// e_i. Uses leading-term subtraction against the graded-lex order; the
/// rewrite is exact and unique. Throws std::invalid_argument if p is not
/// symmetric (the message names a transposition that moves p) or mentions a
/// variable with index >= k.
MultiPoly express_in_elementaries(const MultiPoly& p, unsigned k);

/// A universal lambda-operation identity, stored as an expression in the
/// symbols Lr_i = lambda^i(r) and Ls_j = lambda^j(s).
///
///   kind == product:      lambda^n(r*s)          = expr, uses Lr_1..Lr_n,
///                                                  Ls_1..Ls_n
///   kind == composition:  lambda^n(lambda^m(r))  = expr, uses Lr_1..Lr_{n*m}
struct UniversalPoly {
  enum class Kind { product, composition };
  Kind kind;
  unsigned n = 0;
  unsigned m = 0;  // composition only, 0 otherwise
  LambdaExpr expr;
};

/// Coefficient of t^n in prod_{i<k, j<l} (1 + x_i y_j t), rewritten in the
/// elementary symmetric polynomials of the x's (as Lr) and of the y's (as
/// Ls). Requires k >= n and l >= n so that the answer is stable in k and l.
UniversalPoly universal_product(unsigned n, unsigned k, unsigned l);

/// Coefficient of t^n in prod over m-element subsets S of {x_0..x_{k-1}} of
/// (1 + x_S t), where x_S is the product over S, rewritten in the elementary
/// symmetric polynomials of the x's (as Lr). Requires m >= 1 and k >= n*m.
UniversalPoly universal_compose(unsigned n, unsigned m, unsigned k);

/// Independent check of a universal polynomial: expands the defining product
/// directly by enumerating n-element subsets of its linear factors, then
/// substitutes concrete elementary symmetric polynomials into expr and
/// compares. Shares no code with the rewriting path above. For product kind
/// the check runs with k x-variables and l y-variables; for composition kind
/// with k x-variables (l is ignored).
bool splitting_oracle_check(const UniversalPoly& up, unsigned k, unsigned l = 0);

}  // namespace lambdak
