#include <lambdak/symfun.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lambdak {

namespace {

// e_0..e_up_to of the given variables, by the incremental product
// prod_v (1 + x_v t).
std::vector<MultiPoly> elementaries_of(unsigned first_var, unsigned count,
                                       unsigned up_to) {
  std::vector<MultiPoly> e(up_to + 1, MultiPoly::zero());
  e[0] = MultiPoly::one();
  unsigned seen = 0;
  for (unsigned v = first_var; v < first_var + count; ++v) {
    ++seen;
    const MultiPoly xv = MultiPoly::variable(v);
    for (unsigned d = std::min(up_to, seen); d >= 1; --d)
      e[d] += e[d - 1] * xv;
  }
  return e;
}

// Calls fn(idx) for every ascending size-r index subset of {0..total-1}.
template <class Fn>
void for_each_subset(unsigned total, unsigned r, Fn&& fn) {
  if (r > total) return;
  std::vector<unsigned> idx(r);
  std::iota(idx.begin(), idx.end(), 0u);
  while (true) {
    fn(static_cast<const std::vector<unsigned>&>(idx));
    if (r == 0) return;
    unsigned pos = r;
    while (pos > 0 && idx[pos - 1] == total - r + (pos - 1)) --pos;
    if (pos == 0) return;
    --pos;
    ++idx[pos];
    for (unsigned q = pos + 1; q < r; ++q) idx[q] = idx[q - 1] + 1;
  }
}

void require_plain_integers(const MultiPoly& p, const char* where) {
  if (p.modulus())
    throw std::invalid_argument(std::string(where) +
                                ": coefficients must be plain integers");
}

// Verifies invariance of p under adjacent transpositions inside
// [first, first+count) and that p mentions no variable >= bound.
void require_symmetric_block(const MultiPoly& p, unsigned first, unsigned count,
                             unsigned bound, const char* where) {
  if (p.nvars() > bound)
    throw std::invalid_argument(std::string(where) + ": mentions variable x" +
                                std::to_string(p.nvars() - 1) +
                                " outside the declared range");
  for (unsigned i = first; i + 1 < first + count; ++i) {
    if (p.swap_vars(i, i + 1) != p)
      throw std::invalid_argument(std::string(where) +
                                  ": not symmetric: swapping x" +
                                  std::to_string(i) + " and x" +
                                  std::to_string(i + 1) +
                                  " changes the polynomial");
  }
}

// Rewrites a polynomial symmetric separately in x_0..x_{k-1} and
// x_k..x_{k+l-1} as a LambdaExpr, with Lr_i standing for e_i of the first
// block and Ls_j for e_j of the second. Leading-term subtraction: the
// graded-lex leading exponents of a symmetric polynomial are weakly
// decreasing within each block, so they are exactly the leading exponents of
// a unique product of elementaries, which is subtracted off. Each round
// strictly lowers the leading term in the graded-lex well-order, so the loop
// terminates with an exact rewrite.
LambdaExpr express_bigraded(const MultiPoly& p, unsigned k, unsigned l,
                            const char* where) {
  require_plain_integers(p, where);
  require_symmetric_block(p, 0, k, k + l, where);
  require_symmetric_block(p, k, l, k + l, where);

  // Intermediate polynomials stay within deg, so e_i is needed only for
  // i <= deg in each block.
  const unsigned deg = p.degree() < 0 ? 0 : static_cast<unsigned>(p.degree());
  const std::vector<MultiPoly> ex = elementaries_of(0, k, std::min(k, deg));
  const std::vector<MultiPoly> ey = elementaries_of(k, l, std::min(l, deg));

  std::vector<std::pair<Exponents, Int>> result_terms;
  MultiPoly work = p;
  while (!work.is_zero()) {
    const auto& [lead_exps, lead_coef] = work.leading_term();
    Exponents a(lead_exps);
    a.resize(k + l, 0);

    MultiPoly subtrahend(lead_coef);
    Exponents lambda_exps;
    auto emit = [&](unsigned block_first, unsigned block_count, bool s_bank,
                    const std::vector<MultiPoly>& elems) {
      for (unsigned i = 1; i <= block_count; ++i) {
        const unsigned cur = a[block_first + i - 1];
        const unsigned next = (i == block_count) ? 0 : a[block_first + i];
        if (cur < next)
          throw std::logic_error(std::string(where) +
                                 ": leading exponents not weakly decreasing");
        const unsigned d = cur - next;
        if (d == 0) continue;
        subtrahend *= elems[i].pow(d);
        const unsigned var = s_bank ? LambdaExpr::encode_s(i) : LambdaExpr::encode_r(i);
        if (lambda_exps.size() <= var) lambda_exps.resize(var + 1, 0);
        lambda_exps[var] = d;
      }
    };
    emit(0, k, false, ex);
    emit(k, l, true, ey);

    work -= subtrahend;
    result_terms.emplace_back(std::move(lambda_exps), lead_coef);
  }
  return LambdaExpr::from_poly(MultiPoly::from_terms(std::move(result_terms)));
}

// Coefficient of t^n in prod_f (1 + f t) over the given monomial factors.
MultiPoly product_coefficient(const std::vector<MultiPoly>& factors, unsigned n) {
  std::vector<MultiPoly> c(n + 1, MultiPoly::zero());
  c[0] = MultiPoly::one();
  unsigned seen = 0;
  for (const MultiPoly& f : factors) {
    ++seen;
    for (unsigned d = std::min<unsigned>(n, seen); d >= 1; --d)
      c[d] += c[d - 1] * f;
  }
  return c[n];
}

std::vector<MultiPoly> product_factors(unsigned k, unsigned l) {
  std::vector<MultiPoly> factors;
  factors.reserve(static_cast<size_t>(k) * l);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < l; ++j) {
      Exponents e(k + j + 1, 0);
      e[i] = 1;
      e[k + j] = 1;
      factors.push_back(MultiPoly::monomial(1, std::move(e)));
    }
  return factors;
}

std::vector<MultiPoly> compose_factors(unsigned m, unsigned k) {
  if (m == 0) throw std::invalid_argument("compose_factors: m must be >= 1");
  std::vector<MultiPoly> factors;
  for_each_subset(k, m, [&](const std::vector<unsigned>& idx) {
    Exponents e(idx.back() + 1, 0);
    for (unsigned v : idx) e[v] = 1;
    factors.push_back(MultiPoly::monomial(1, std::move(e)));
  });
  return factors;
}

}  // namespace

MultiPoly elementary(unsigned k, unsigned i) {
  if (i == 0) return MultiPoly::one();
  if (i > k) return MultiPoly::zero();
  return elementaries_of(0, k, i)[i];
}

MultiPoly express_in_elementaries(const MultiPoly& p, unsigned k) {
  const LambdaExpr expr = express_bigraded(p, k, 0, "express_in_elementaries");
  // Compress the Lr-only layout (variable 2*(i-1)) down to variable i-1.
  std::vector<std::pair<Exponents, Int>> out;
  for (const auto& [exps, coef] : expr.poly().terms()) {
    Exponents ne((exps.size() + 1) / 2, 0);
    for (size_t v = 0; v < exps.size(); ++v)
      if (exps[v] > 0) ne[v / 2] = exps[v];
    out.emplace_back(std::move(ne), coef);
  }
  return MultiPoly::from_terms(std::move(out));
}

UniversalPoly universal_product(unsigned n, unsigned k, unsigned l) {
  if (k < n || l < n)
    throw std::invalid_argument(
        "universal_product: need k >= n and l >= n for a stable answer");
  const MultiPoly q = product_coefficient(product_factors(k, l), n);
  UniversalPoly up{UniversalPoly::Kind::product, n, 0,
                   express_bigraded(q, k, l, "universal_product")};
  if (up.expr.max_r_index() > n || up.expr.max_s_index() > n)
    throw std::logic_error("universal_product: symbol index exceeds n");
  return up;
}

UniversalPoly universal_compose(unsigned n, unsigned m, unsigned k) {
  if (m == 0) throw std::invalid_argument("universal_compose: m must be >= 1");
  if (k < n * m)
    throw std::invalid_argument(
        "universal_compose: need k >= n*m for a stable answer");
  const MultiPoly q = product_coefficient(compose_factors(m, k), n);
  UniversalPoly up{UniversalPoly::Kind::composition, n, m,
                   express_bigraded(q, k, 0, "universal_compose")};
  if (up.expr.max_r_index() > n * m || up.expr.uses_s())
    throw std::logic_error("universal_compose: unexpected symbol in result");
  return up;
}

bool splitting_oracle_check(const UniversalPoly& up, unsigned k, unsigned l) {
  std::vector<MultiPoly> factors;
  if (up.kind == UniversalPoly::Kind::product) {
    if (k < up.n || l < up.n)
      throw std::invalid_argument("splitting_oracle_check: need k, l >= n");
    factors = product_factors(k, l);
  } else {
    if (k < up.n * up.m)
      throw std::invalid_argument("splitting_oracle_check: need k >= n*m");
    factors = compose_factors(up.m, k);
  }

  // Direct expansion: sum over n-element subsets of the linear factors of
  // the product of their monomials. Avoids both the incremental product and
  // the elementary rewrite.
  std::map<Exponents, Int, GrlexGreater> acc;
  for_each_subset(static_cast<unsigned>(factors.size()), up.n,
                  [&](const std::vector<unsigned>& idx) {
                    Exponents sum;
                    for (unsigned fi : idx) {
                      const Exponents& fe = factors[fi].leading_term().first;
                      if (sum.size() < fe.size()) sum.resize(fe.size(), 0);
                      for (size_t v = 0; v < fe.size(); ++v) sum[v] += fe[v];
                    }
                    acc[sum] += 1;
                  });
  std::vector<std::pair<Exponents, Int>> direct_terms;
  direct_terms.reserve(acc.size());
  for (auto& [e, c] : acc) direct_terms.emplace_back(e, c);
  const MultiPoly direct = MultiPoly::from_terms(std::move(direct_terms));

  const unsigned rmax = up.expr.max_r_index();
  const unsigned smax = up.expr.max_s_index();
  std::vector<MultiPoly> ex = elementaries_of(0, k, rmax);
  std::vector<MultiPoly> ey = elementaries_of(k, l, smax);
  ex.erase(ex.begin());  // substitute() wants e_1 first
  ey.erase(ey.begin());
  const MultiPoly substituted = up.expr.substitute(ex, ey);

  return substituted == direct;
}

}  // namespace lambdak
