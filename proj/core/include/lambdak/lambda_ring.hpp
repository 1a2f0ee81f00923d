#pragma once

#include <lambdak/integers.hpp>
#include <lambdak/lambda_expr.hpp>
#include <lambdak/multipoly.hpp>
#include <lambdak/report.hpp>
#include <lambdak/symfun.hpp>

#include <concepts>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace lambdak {

/// A ring R carrying lambda operations, presented as a value type whose
/// methods are pure. Elements are opaque to the generic code here.
template <class R>
concept LambdaRingInstance = requires(const R ring, const typename R::Element& a,
                                      unsigned i, const Int& n) {
  typename R::Element;
  { ring.eq(a, a) } -> std::convertible_to<bool>;
  { ring.add(a, a) } -> std::same_as<typename R::Element>;
  { ring.mul(a, a) } -> std::same_as<typename R::Element>;
  { ring.neg(a) } -> std::same_as<typename R::Element>;
  { ring.zero() } -> std::same_as<typename R::Element>;
  { ring.one() } -> std::same_as<typename R::Element>;
  { ring.from_int(n) } -> std::same_as<typename R::Element>;
  { ring.lambda(i, a) } -> std::same_as<typename R::Element>;
  { ring.to_string(a) } -> std::convertible_to<std::string>;
};

/// Optional: decides membership in p*R (the meaning depends on the carrier).
template <class R>
concept HasDivisibility = requires(const R ring, const typename R::Element& a,
                                   const Int& p) {
  { ring.divisible(a, p) } -> std::convertible_to<bool>;
};

/// Optional: draws elements for property checks.
template <class R>
concept HasSampler = requires(const R ring, std::mt19937_64& rng) {
  { ring.sample(rng) } -> std::same_as<typename R::Element>;
};

/// The integers with lambda^i(n) = binomial(n, i). Valid for negative n via
/// the falling factorial. Every Adams operation is the identity.
class BinomialZ {
 public:
  using Element = Int;

  bool eq(const Element& a, const Element& b) const { return a == b; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element neg(const Element& a) const { return -a; }
  Element zero() const { return Int(0); }
  Element one() const { return Int(1); }
  Element from_int(const Int& n) const { return n; }
  Element lambda(unsigned i, const Element& n) const { return binomial(n, i); }
  bool divisible(const Element& a, const Int& p) const { return a % p == 0; }
  Element sample(std::mt19937_64& rng) const;
  std::string to_string(const Element& a) const { return a.str(); }
};

/// Truncated polynomial ring Z[x_1..x_k] / (monomials of degree > D), with
/// each monomial treated as a line element: lambda^i of a nonnegative sum of
/// monomials is the i-th elementary symmetric value of that multiset.
/// Symmetric nonnegative elements are closed under the ring operations and
/// under every lambda and Adams operation, so checks sampled from them never
/// leave the domain. lambda on an element with a negative coefficient is
/// rejected: this instance does not model virtual elements.
class LineSumRing {
 public:
  using Element = MultiPoly;

  LineSumRing(unsigned nvars, unsigned degree_bound);

  unsigned nvars() const { return nvars_; }
  unsigned degree_bound() const { return bound_; }

  /// x_1 + ... + x_k, the universal sum of lines.
  Element line_sum() const;

  bool eq(const Element& a, const Element& b) const { return a == b; }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element mul(const Element& a, const Element& b) const {
    return (a * b).truncate_degree(bound_);
  }
  Element neg(const Element& a) const { return -a; }
  Element zero() const { return MultiPoly::zero(); }
  Element one() const { return MultiPoly::one(); }
  Element from_int(const Int& n) const { return MultiPoly(n); }
  Element lambda(unsigned i, const Element& a) const;
  /// Coefficientwise divisibility by p.
  bool divisible(const Element& a, const Int& p) const;
  /// Random symmetric nonnegative element: a constant plus a few symmetrized
  /// monomial orbits of degree <= 2.
  Element sample(std::mt19937_64& rng) const;
  std::string to_string(const Element& a) const { return a.to_string(); }

 private:
  unsigned nvars_;
  unsigned bound_;
};

/// Wraps an instance, replacing lambda^index by lambda^index + 1. Everything
/// else forwards. Used as a negative control: the wrapped ring violates the
/// addition and product laws, and the checks must say so.
template <class R>
class CorruptedLambda {
 public:
  using Element = typename R::Element;

  explicit CorruptedLambda(R base, unsigned index = 2)
      : base_(std::move(base)), index_(index) {}

  bool eq(const Element& a, const Element& b) const { return base_.eq(a, b); }
  Element add(const Element& a, const Element& b) const { return base_.add(a, b); }
  Element mul(const Element& a, const Element& b) const { return base_.mul(a, b); }
  Element neg(const Element& a) const { return base_.neg(a); }
  Element zero() const { return base_.zero(); }
  Element one() const { return base_.one(); }
  Element from_int(const Int& n) const { return base_.from_int(n); }
  Element lambda(unsigned i, const Element& a) const {
    Element v = base_.lambda(i, a);
    return i == index_ ? base_.add(v, base_.one()) : v;
  }
  bool divisible(const Element& a, const Int& p) const
    requires HasDivisibility<R>
  {
    return base_.divisible(a, p);
  }
  Element sample(std::mt19937_64& rng) const
    requires HasSampler<R>
  {
    return base_.sample(rng);
  }
  std::string to_string(const Element& a) const { return base_.to_string(a); }

 private:
  R base_;
  unsigned index_;
};

/// psi^k written as an integer polynomial in Lr_1..Lr_k, from the Newton
/// recurrence psi^k = (-1)^(k-1) k Lr_k + sum_{i=1}^{k-1} (-1)^(i+1) Lr_i psi^(k-i).
struct AdamsFormula {
  unsigned k = 0;
  LambdaExpr expr;
};

/// Cached; thread-safe. k must be >= 1.
AdamsFormula newton_adams_formula(unsigned k);

/// Evaluates a symbol expression with Lr_i -> rvals[i-1], Ls_j -> svals[j-1].
template <LambdaRingInstance R>
typename R::Element eval_lambda_expr(const R& ring, const LambdaExpr& ex,
                                     std::span<const typename R::Element> rvals,
                                     std::span<const typename R::Element> svals = {}) {
  if (ex.max_r_index() > rvals.size() || ex.max_s_index() > svals.size())
    throw std::invalid_argument("eval_lambda_expr: not enough lambda values");
  using E = typename R::Element;
  E acc = ring.zero();
  for (const auto& [exps, coef] : ex.poly().terms()) {
    E term = ring.from_int(coef);
    for (unsigned v = 0; v < exps.size(); ++v) {
      if (exps[v] == 0) continue;
      const LambdaExpr::Var var = LambdaExpr::decode(v);
      const E& base = var.s_bank ? svals[var.index - 1] : rvals[var.index - 1];
      for (unsigned e = 0; e < exps[v]; ++e) term = ring.mul(term, base);
    }
    acc = ring.add(acc, term);
  }
  return acc;
}

/// lambda^1(a) .. lambda^up_to(a).
template <LambdaRingInstance R>
std::vector<typename R::Element> lambda_values(const R& ring,
                                               const typename R::Element& a,
                                               unsigned up_to) {
  std::vector<typename R::Element> v;
  v.reserve(up_to);
  for (unsigned i = 1; i <= up_to; ++i) v.push_back(ring.lambda(i, a));
  return v;
}

/// psi^k(a) via the Newton expansion in the lambda values of a.
template <LambdaRingInstance R>
typename R::Element adams(const R& ring, unsigned k, const typename R::Element& a) {
  const AdamsFormula f = newton_adams_formula(k);
  const auto lam = lambda_values(ring, a, f.expr.max_r_index());
  return eval_lambda_expr(ring, f.expr, lam);
}

struct AxiomCheckConfig {
  unsigned samples = 100;
  unsigned n_max = 4;   // addition and product laws for n <= n_max
  unsigned nm_cap = 6;  // composition law for pairs with n*m <= nm_cap
  std::uint64_t seed = 1;
};

struct AdamsCheckConfig {
  unsigned samples = 100;
  unsigned k_max = 4;   // additivity / multiplicativity of psi^k
  unsigned kl_cap = 8;  // composition psi^k psi^l for k*l <= kl_cap
  std::vector<unsigned> frobenius_primes = {2, 3, 5, 7};
  std::uint64_t seed = 1;
};

namespace detail {

struct Failure {
  bool hit = false;
  std::string detail;
  void record(unsigned sample, std::string vars) {
    if (hit) return;
    hit = true;
    detail = "sample " + std::to_string(sample) + ": " + std::move(vars);
  }
};

}  // namespace detail

/// Checks the defining laws on sampled pairs: lambda^0 = 1, lambda^1 = id,
/// lambda^n(1) = 0 for n > 1, the addition law, the product law against
/// universal_product, and the composition law against universal_compose.
/// An exception escaping the instance mid-sample is recorded as a failure
/// of operations_well_defined rather than propagated.
template <LambdaRingInstance R>
  requires HasSampler<R>
Report check_axioms(const R& ring, const AxiomCheckConfig& cfg = {}) {
  Report rep;
  rep.suite = "axioms";
  rep.seed = cfg.seed;
  using E = typename R::Element;

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<E, E>> pairs;
  pairs.reserve(cfg.samples);
  for (unsigned s = 0; s < cfg.samples; ++s) {
    E a = ring.sample(rng);
    E b = ring.sample(rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }

  // Unit axioms need no samples.
  {
    bool ok = true;
    std::string detail;
    for (unsigned n = 2; n <= std::max(cfg.n_max, 2u) && ok; ++n) {
      const E v = ring.lambda(n, ring.one());
      if (!ring.eq(v, ring.zero())) {
        ok = false;
        detail = "lambda^" + std::to_string(n) + "(1) = " + ring.to_string(v);
      }
    }
    rep.add("unit_lambda_vanishes", ok, detail);
  }

  detail::Failure f0, f1;
  std::vector<detail::Failure> fadd(cfg.n_max + 1), fmul(cfg.n_max + 1);

  std::vector<UniversalPoly> prods;
  for (unsigned n = 1; n <= cfg.n_max; ++n)
    prods.push_back(universal_product(n, n, n));
  std::vector<UniversalPoly> comps;
  for (unsigned n = 1; n <= cfg.nm_cap; ++n)
    for (unsigned m = 2; n * m <= cfg.nm_cap; ++m)
      comps.push_back(universal_compose(n, m, n * m));
  std::vector<detail::Failure> fcomp(comps.size());
  detail::Failure fexc;

  const unsigned lam_depth = std::max(cfg.n_max, cfg.nm_cap);
  for (unsigned s = 0; s < pairs.size(); ++s) {
    try {
      const E& a = pairs[s].first;
      const E& b = pairs[s].second;
      const auto la = lambda_values(ring, a, lam_depth);
      const auto lb = lambda_values(ring, b, lam_depth);

      if (!ring.eq(ring.lambda(0, a), ring.one()))
        f0.record(s, "lambda^0(" + ring.to_string(a) + ") != 1");
      if (!ring.eq(la[0], a))
        f1.record(s, "lambda^1(" + ring.to_string(a) + ") = " + ring.to_string(la[0]));

      const E sum = ring.add(a, b);
      const E prod = ring.mul(a, b);
      for (unsigned n = 1; n <= cfg.n_max; ++n) {
        // addition law
        E rhs = ring.lambda(n, b);  // i = 0 term
        for (unsigned i = 1; i < n; ++i) rhs = ring.add(rhs, ring.mul(la[i - 1], lb[n - i - 1]));
        rhs = ring.add(rhs, la[n - 1]);  // i = n term
        const E lhs = ring.lambda(n, sum);
        if (!ring.eq(lhs, rhs))
          fadd[n].record(s,
                         "a=" + ring.to_string(a) + ", b=" + ring.to_string(b) +
                             ", lambda^" + std::to_string(n) + "(a+b)=" + ring.to_string(lhs) +
                             ", sum side=" + ring.to_string(rhs));

        // product law
        const E plhs = ring.lambda(n, prod);
        const E prhs = eval_lambda_expr(ring, prods[n - 1].expr, la, lb);
        if (!ring.eq(plhs, prhs))
          fmul[n].record(s,
                         "a=" + ring.to_string(a) + ", b=" + ring.to_string(b) +
                             ", lambda^" + std::to_string(n) + "(ab)=" + ring.to_string(plhs) +
                             ", universal side=" + ring.to_string(prhs));
      }

      for (size_t c = 0; c < comps.size(); ++c) {
        const unsigned n = comps[c].n, m = comps[c].m;
        const E lhs = ring.lambda(n, la[m - 1]);
        const E rhs = eval_lambda_expr(ring, comps[c].expr, la);
        if (!ring.eq(lhs, rhs))
          fcomp[c].record(s,
                          "a=" + ring.to_string(a) + ", lambda^" + std::to_string(n) +
                              "(lambda^" + std::to_string(m) + "(a))=" + ring.to_string(lhs) +
                              ", universal side=" + ring.to_string(rhs));
      }
    } catch (const std::exception& e) {
      fexc.record(s, std::string("threw: ") + e.what());
    }
  }

  rep.add("operations_well_defined", !fexc.hit, fexc.detail);
  rep.add("lambda0_is_one", !f0.hit, f0.detail);
  rep.add("lambda1_is_identity", !f1.hit, f1.detail);
  for (unsigned n = 1; n <= cfg.n_max; ++n) {
    rep.add("addition_law_n" + std::to_string(n), !fadd[n].hit, fadd[n].detail);
    rep.add("product_law_n" + std::to_string(n), !fmul[n].hit, fmul[n].detail);
  }
  for (size_t c = 0; c < comps.size(); ++c)
    rep.add("composition_law_n" + std::to_string(comps[c].n) + "_m" +
                std::to_string(comps[c].m),
            !fcomp[c].hit, fcomp[c].detail);
  rep.sort_checks();
  return rep;
}

/// Checks psi^1 = id, psi^k psi^l = psi^(kl), additivity and
/// multiplicativity of each psi^k, and the Frobenius congruence
/// psi^p(a) == a^p mod pR for the listed primes. An exception escaping the
/// instance mid-sample is recorded as a failure of operations_well_defined
/// rather than propagated.
template <LambdaRingInstance R>
  requires HasSampler<R>
Report check_adams_properties(const R& ring, const AdamsCheckConfig& cfg = {}) {
  Report rep;
  rep.suite = "adams";
  rep.seed = cfg.seed;
  using E = typename R::Element;

  std::mt19937_64 rng(cfg.seed);
  std::vector<std::pair<E, E>> pairs;
  pairs.reserve(cfg.samples);
  for (unsigned s = 0; s < cfg.samples; ++s) {
    E a = ring.sample(rng);
    E b = ring.sample(rng);
    pairs.emplace_back(std::move(a), std::move(b));
  }

  std::vector<std::pair<unsigned, unsigned>> kl_pairs;
  for (unsigned k = 1; k <= cfg.kl_cap; ++k)
    for (unsigned l = 1; k * l <= cfg.kl_cap; ++l) kl_pairs.emplace_back(k, l);

  detail::Failure fid;
  std::vector<detail::Failure> fadd(cfg.k_max + 1), fmul(cfg.k_max + 1);
  std::vector<detail::Failure> fcomp(kl_pairs.size());
  std::vector<detail::Failure> ffrob(cfg.frobenius_primes.size());
  detail::Failure fexc;

  for (unsigned s = 0; s < pairs.size(); ++s) {
    try {
      const E& a = pairs[s].first;
      const E& b = pairs[s].second;

      if (!ring.eq(adams(ring, 1, a), a))
        fid.record(s, "psi^1(" + ring.to_string(a) + ") != a");

      for (unsigned k = 2; k <= cfg.k_max; ++k) {
        const E al = adams(ring, k, a), bl = adams(ring, k, b);
        const E sum_lhs = adams(ring, k, ring.add(a, b));
        if (!ring.eq(sum_lhs, ring.add(al, bl)))
          fadd[k].record(s,
                         "a=" + ring.to_string(a) + ", b=" + ring.to_string(b) +
                             ", psi^" + std::to_string(k) + "(a+b)=" + ring.to_string(sum_lhs));
        const E mul_lhs = adams(ring, k, ring.mul(a, b));
        if (!ring.eq(mul_lhs, ring.mul(al, bl)))
          fmul[k].record(s,
                         "a=" + ring.to_string(a) + ", b=" + ring.to_string(b) +
                             ", psi^" + std::to_string(k) + "(ab)=" + ring.to_string(mul_lhs));
      }

      for (size_t c = 0; c < kl_pairs.size(); ++c) {
        const auto [k, l] = kl_pairs[c];
        const E lhs = adams(ring, k, adams(ring, l, a));
        const E rhs = adams(ring, k * l, a);
        if (!ring.eq(lhs, rhs))
          fcomp[c].record(s,
                          "a=" + ring.to_string(a) + ", psi^" + std::to_string(k) +
                              "(psi^" + std::to_string(l) + "(a))=" + ring.to_string(lhs) +
                              ", psi^" + std::to_string(k * l) + "(a)=" + ring.to_string(rhs));
      }

      if constexpr (HasDivisibility<R>) {
        for (size_t c = 0; c < cfg.frobenius_primes.size(); ++c) {
          const unsigned p = cfg.frobenius_primes[c];
          E pw = ring.one();
          for (unsigned e = 0; e < p; ++e) pw = ring.mul(pw, a);
          const E diff = ring.add(adams(ring, p, a), ring.neg(pw));
          if (!ring.divisible(diff, Int(p)))
            ffrob[c].record(s,
                            "a=" + ring.to_string(a) + ", psi^" + std::to_string(p) +
                                "(a) - a^" + std::to_string(p) + " = " + ring.to_string(diff));
        }
      }
    } catch (const std::exception& e) {
      fexc.record(s, std::string("threw: ") + e.what());
    }
  }

  rep.add("operations_well_defined", !fexc.hit, fexc.detail);
  rep.add("psi1_is_identity", !fid.hit, fid.detail);
  for (unsigned k = 2; k <= cfg.k_max; ++k) {
    rep.add("psi_additive_k" + std::to_string(k), !fadd[k].hit, fadd[k].detail);
    rep.add("psi_multiplicative_k" + std::to_string(k), !fmul[k].hit, fmul[k].detail);
  }
  for (size_t c = 0; c < kl_pairs.size(); ++c)
    rep.add("psi_composition_k" + std::to_string(kl_pairs[c].first) + "_l" +
                std::to_string(kl_pairs[c].second),
            !fcomp[c].hit, fcomp[c].detail);
  for (size_t c = 0; c < cfg.frobenius_primes.size(); ++c) {
    const std::string name = "psi_frobenius_p" + std::to_string(cfg.frobenius_primes[c]);
    if constexpr (HasDivisibility<R>)
      rep.add(name, !ffrob[c].hit, ffrob[c].detail);
    else
      rep.add_skipped(name, "instance has no divisibility test");
  }
  rep.sort_checks();
  return rep;
}

}  // namespace lambdak
