#pragma once

#include <lambdak/multipoly.hpp>

#include <span>
#include <string>

namespace lambdak {

/// Formal integer polynomial in the symbols Lr1, Lr2, ... and Ls1, Ls2, ...,
/// where Lr_i stands for lambda^i applied to a first ring element and Ls_j
/// for lambda^j applied to a second one. This is the output language of the
/// universal polynomials and of the Newton expansion of the Adams operations.
///
/// Internally a MultiPoly with a fixed variable layout: poly variable 2*(i-1)
/// is Lr_i and 2*(j-1)+1 is Ls_j, so any two expressions share one naming and
/// compare with plain polynomial equality.
class LambdaExpr {
 public:
  LambdaExpr() = default;  // zero
  explicit LambdaExpr(Int constant) : poly_(std::move(constant)) {}

  static unsigned encode_r(unsigned i);  // i >= 1
  static unsigned encode_s(unsigned j);  // j >= 1
  struct Var {
    bool s_bank;     // false: Lr, true: Ls
    unsigned index;  // >= 1
  };
  static Var decode(unsigned poly_var);

  static LambdaExpr r_symbol(unsigned i);
  static LambdaExpr s_symbol(unsigned j);
  /// Wrap a polynomial already written in the interleaved layout.
  static LambdaExpr from_poly(MultiPoly p);

  const MultiPoly& poly() const { return poly_; }
  bool is_zero() const { return poly_.is_zero(); }

  /// Largest i such that Lr_i occurs (0 if none), and likewise for Ls_j.
  unsigned max_r_index() const;
  unsigned max_s_index() const;
  bool uses_s() const { return max_s_index() > 0; }

  bool operator==(const LambdaExpr& o) const { return poly_ == o.poly_; }
  bool operator!=(const LambdaExpr& o) const { return !(*this == o); }

  LambdaExpr operator-() const { return from_poly(-poly_); }
  LambdaExpr operator+(const LambdaExpr& o) const { return from_poly(poly_ + o.poly_); }
  LambdaExpr operator-(const LambdaExpr& o) const { return from_poly(poly_ - o.poly_); }
  LambdaExpr operator*(const LambdaExpr& o) const { return from_poly(poly_ * o.poly_); }
  LambdaExpr operator*(const Int& c) const { return from_poly(poly_ * c); }
  LambdaExpr pow(unsigned e) const { return from_poly(poly_.pow(e)); }

  /// Substitute polynomials for the symbols: Lr_i -> rvals[i-1],
  /// Ls_j -> svals[j-1]. Every occurring symbol must be covered.
  MultiPoly substitute(std::span<const MultiPoly> rvals,
                       std::span<const MultiPoly> svals = {}) const;

  /// "Lr1^2*Ls2 - 2*Lr2*Ls2" style text, terms in graded-lex order.
  std::string to_string() const;

 private:
  MultiPoly poly_;
};

inline LambdaExpr operator*(const Int& c, const LambdaExpr& e) { return e * c; }

}  // namespace lambdak
