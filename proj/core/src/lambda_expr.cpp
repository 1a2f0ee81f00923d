#include <lambdak/lambda_expr.hpp>

#include <stdexcept>
#include <vector>

namespace lambdak {

unsigned LambdaExpr::encode_r(unsigned i) {
  if (i == 0) throw std::invalid_argument("LambdaExpr: symbol index must be >= 1");
  return 2 * (i - 1);
}

unsigned LambdaExpr::encode_s(unsigned j) {
  if (j == 0) throw std::invalid_argument("LambdaExpr: symbol index must be >= 1");
  return 2 * (j - 1) + 1;
}

LambdaExpr::Var LambdaExpr::decode(unsigned poly_var) {
  return Var{poly_var % 2 == 1, poly_var / 2 + 1};
}

LambdaExpr LambdaExpr::r_symbol(unsigned i) {
  return from_poly(MultiPoly::variable(encode_r(i)));
}

LambdaExpr LambdaExpr::s_symbol(unsigned j) {
  return from_poly(MultiPoly::variable(encode_s(j)));
}

LambdaExpr LambdaExpr::from_poly(MultiPoly p) {
  if (p.modulus()) throw std::invalid_argument("LambdaExpr: coefficients must be plain integers");
  LambdaExpr e;
  e.poly_ = std::move(p);
  return e;
}

unsigned LambdaExpr::max_r_index() const {
  unsigned best = 0;
  for (const auto& [exps, coef] : poly_.terms())
    for (unsigned v = 0; v < exps.size(); ++v)
      if (exps[v] > 0 && v % 2 == 0) best = std::max(best, v / 2 + 1);
  return best;
}

unsigned LambdaExpr::max_s_index() const {
  unsigned best = 0;
  for (const auto& [exps, coef] : poly_.terms())
    for (unsigned v = 0; v < exps.size(); ++v)
      if (exps[v] > 0 && v % 2 == 1) best = std::max(best, v / 2 + 1);
  return best;
}

MultiPoly LambdaExpr::substitute(std::span<const MultiPoly> rvals,
                                 std::span<const MultiPoly> svals) const {
  std::map<unsigned, MultiPoly> bindings;
  const unsigned rmax = max_r_index();
  const unsigned smax = max_s_index();
  if (rvals.size() < rmax || svals.size() < smax)
    throw std::invalid_argument("LambdaExpr::substitute: not enough values for occurring symbols");
  for (unsigned i = 1; i <= rmax; ++i) bindings.emplace(encode_r(i), rvals[i - 1]);
  for (unsigned j = 1; j <= smax; ++j) bindings.emplace(encode_s(j), svals[j - 1]);
  return poly_.substitute(bindings);
}

std::string LambdaExpr::to_string() const {
  const unsigned nv = poly_.nvars();
  std::vector<std::string> names(nv);
  for (unsigned v = 0; v < nv; ++v) {
    const Var var = decode(v);
    names[v] = (var.s_bank ? "Ls" : "Lr") + std::to_string(var.index);
  }
  return poly_.to_string(names);
}

}  // namespace lambdak
