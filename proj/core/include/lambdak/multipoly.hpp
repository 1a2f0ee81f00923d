#pragma once

#include <lambdak/integers.hpp>

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lambdak {

/// Exponent vector of a monomial: exps[i] is the exponent of variable x<i>.
/// Canonical keys have trailing zeros stripped, so the constant monomial
/// is the empty vector.
using Exponents = std::vector<unsigned>;

/// Graded-lexicographic comparison, largest monomial first: higher total
/// degree wins, ties broken lexicographically with x0 most significant.
/// This is the one monomial order used everywhere (term storage, leading
/// terms, serialization).
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

unsigned total_degree(const Exponents& e);

/// Sparse multivariate polynomial with exact integer coefficients, optionally
/// reduced mod a fixed modulus m >= 2 (in which case every stored coefficient
/// lies in [0, m)). Values are immutable in spirit: every operation returns a
/// new canonical polynomial and never mutates its inputs.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Int, GrlexGreater>;

  /// The zero polynomial (no modulus).
  MultiPoly() = default;

  /// Constant polynomial.
  explicit MultiPoly(Int constant, std::optional<Int> modulus = std::nullopt);
  explicit MultiPoly(long long constant) : MultiPoly(Int(constant)) {}

  static MultiPoly zero(std::optional<Int> modulus = std::nullopt);
  static MultiPoly one(std::optional<Int> modulus = std::nullopt);
  static MultiPoly variable(unsigned index,
                            std::optional<Int> modulus = std::nullopt);
  static MultiPoly monomial(Int coef, Exponents exps,
                            std::optional<Int> modulus = std::nullopt);
  /// Sum of the given terms; duplicate exponent vectors are combined.
  static MultiPoly from_terms(std::vector<std::pair<Exponents, Int>> terms,
                              std::optional<Int> modulus = std::nullopt);

  const TermMap& terms() const { return terms_; }
  const std::optional<Int>& modulus() const { return modulus_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Int constant_term() const;
  /// Coefficient of the given monomial (zero if absent); exps need not be in
  /// canonical key form.
  Int coefficient(Exponents exps) const;

  /// Number of variable slots: one past the largest variable index that
  /// occurs (0 for constants).
  unsigned nvars() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  size_t term_count() const { return terms_.size(); }

  /// Leading term under graded-lex (largest). Precondition: not zero.
  const std::pair<const Exponents, Int>& leading_term() const;

  bool operator==(const MultiPoly& o) const {
    return modulus_ == o.modulus_ && terms_ == o.terms_;
  }
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly operator*(const Int& scalar) const;
  MultiPoly pow(unsigned e) const;

  /// Simultaneous substitution of polynomials for variables. Every variable
  /// occurring in *this must be bound; an unbound variable is an error naming
  /// its index. Bindings must live in the same coefficient ring.
  MultiPoly substitute(const std::map<unsigned, MultiPoly>& bindings) const;

  /// Coefficientwise reduction into Z/m. Requires m >= 2 and that *this has
  /// no modulus yet.
  MultiPoly reduce_mod(const Int& m) const;

  /// Exchange two variable slots (used for symmetry checks).
  MultiPoly swap_vars(unsigned i, unsigned j) const;

  /// Drop every term of total degree > bound.
  MultiPoly truncate_degree(unsigned bound) const;

  /// True iff the representation satisfies the canonical-form invariants
  /// (no zero coefficients, no trailing zeros in keys, coefficients reduced
  /// when a modulus is set).
  bool is_canonical() const;

  /// Deterministic text form: terms in graded-lex order, e.g.
  /// "x0^2*x1 - 2*x0 + 1". The zero polynomial prints "0".
  std::string to_string() const;
  /// Same, with names[i] printed instead of x<i>.
  std::string to_string(std::span<const std::string> names) const;

  /// Inverse of to_string for the x<i> naming; the modulus is supplied by the
  /// caller since the text form does not carry it.
  static MultiPoly parse(std::string_view text,
                         std::optional<Int> modulus = std::nullopt);

 private:
  TermMap terms_;
  std::optional<Int> modulus_;

  void insert_term(Exponents exps, Int coef);
  void require_same_ring(const MultiPoly& o, const char* op) const;
  static void strip_trailing_zeros(Exponents& e);

  friend class LambdaExpr;
};

inline MultiPoly operator*(const Int& scalar, const MultiPoly& p) {
  return p * scalar;
}

}  // namespace lambdak
