#include <lambdak/lambda_ring.hpp>

#include <algorithm>
#include <mutex>
#include <stdexcept>

namespace lambdak {

BinomialZ::Element BinomialZ::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<long long> d(-20, 20);
  return Int(d(rng));
}

AdamsFormula newton_adams_formula(unsigned k) {
  if (k == 0)
    throw std::invalid_argument("newton_adams_formula: k must be >= 1");
  static std::mutex mu;
  static std::vector<LambdaExpr> cache;  // cache[i] = psi^(i+1)
  std::scoped_lock lock(mu);
  if (cache.empty()) cache.push_back(LambdaExpr::r_symbol(1));
  while (cache.size() < k) {
    const unsigned next = static_cast<unsigned>(cache.size()) + 1;
    const long long lead = (next % 2 == 1) ? static_cast<long long>(next)
                                           : -static_cast<long long>(next);
    LambdaExpr acc = LambdaExpr::r_symbol(next) * Int(lead);
    for (unsigned i = 1; i < next; ++i) {
      const LambdaExpr term = LambdaExpr::r_symbol(i) * cache[next - i - 1];
      acc = (i % 2 == 1) ? acc + term : acc - term;
    }
    cache.push_back(acc);
  }
  return {k, cache[k - 1]};
}

LineSumRing::LineSumRing(unsigned nvars, unsigned degree_bound)
    : nvars_(nvars), bound_(degree_bound) {
  if (nvars_ == 0)
    throw std::invalid_argument("LineSumRing: need at least one variable");
  if (bound_ == 0)
    throw std::invalid_argument("LineSumRing: degree bound must be >= 1");
}

LineSumRing::Element LineSumRing::line_sum() const {
  MultiPoly s;
  for (unsigned v = 0; v < nvars_; ++v) s += MultiPoly::variable(v);
  return s.truncate_degree(bound_);
}

LineSumRing::Element LineSumRing::lambda(unsigned i, const Element& a) const {
  if (i == 0) return one();
  if (a.modulus())
    throw std::invalid_argument("LineSumRing::lambda: foreign element");
  // lambda^i of a multiset of monomials is its i-th elementary symmetric
  // value; the multiset is read off the coefficients.
  std::vector<MultiPoly> e(i + 1, MultiPoly::zero());
  e[0] = one();
  unsigned long long seen = 0;
  for (const auto& [exps, coef] : a.terms()) {
    if (coef < 0)
      throw std::invalid_argument(
          "LineSumRing::lambda: negative coefficient at " +
          MultiPoly::monomial(1, exps).to_string() +
          " (virtual elements are not modeled)");
    if (total_degree(exps) > bound_) continue;  // already zero in the quotient
    if (coef > 100000)
      throw std::invalid_argument("LineSumRing::lambda: multiplicity too large");
    const MultiPoly mono = MultiPoly::monomial(1, exps);
    for (Int c = coef; c > 0; --c) {
      ++seen;
      const unsigned top = static_cast<unsigned>(
          std::min<unsigned long long>(i, seen));
      for (unsigned d = top; d >= 1; --d)
        e[d] = (e[d] + e[d - 1] * mono).truncate_degree(bound_);
    }
  }
  return e[i];
}

bool LineSumRing::divisible(const Element& a, const Int& p) const {
  return std::all_of(a.terms().begin(), a.terms().end(),
                     [&](const auto& t) { return t.second % p == 0; });
}

LineSumRing::Element LineSumRing::sample(std::mt19937_64& rng) const {
  std::uniform_int_distribution<int> constant(0, 2), orbits(0, 2), coefd(1, 2),
      degd(1, 2);
  std::uniform_int_distribution<unsigned> vard(0, nvars_ - 1);
  MultiPoly r{Int(constant(rng))};
  const int picks = orbits(rng);
  for (int t = 0; t < picks; ++t) {
    Exponents e(nvars_, 0);
    const int deg = degd(rng);
    for (int d = 0; d < deg; ++d) ++e[vard(rng)];
    // Sum the orbit under variable permutations so the element is symmetric.
    std::sort(e.begin(), e.end());
    const Int c{coefd(rng)};
    do {
      r += MultiPoly::monomial(c, e);
    } while (std::next_permutation(e.begin(), e.end()));
  }
  return r.truncate_degree(bound_);
}

}  // namespace lambdak
