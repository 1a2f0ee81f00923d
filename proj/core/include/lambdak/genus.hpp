#pragma once

#include <lambdak/integers.hpp>
#include <lambdak/multipoly.hpp>
#include <lambdak/report.hpp>

#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace lambdak {

/// True iff a is congruent to one of +-1, +-5, +-7, +-11 mod 24.
bool allowed_a_residue(const Int& a);
/// Validates and returns the residue in [0, 24).
Int require_allowed_a(const Int& a, const char* where);

/// ((X/2), (X/3)) for an allowed a-value: (1,1), (1,-1), (-1,1), (-1,-1)
/// for a congruent to +-1, +-5, +-7, +-11 respectively. Throws
/// std::invalid_argument on a forbidden residue, naming the allowed set.
std::pair<int, int> rector_pair(const Int& a);

/// Element of the degree-0 truncated module with basis {1, xi*x, bR*x^2}
/// (filtrations 0, 4, 8; everything of filtration >= 9 is quotiented away).
struct KODeg0 {
  Int unit{0};
  Int xix{0};
  Int bx2{0};

  bool operator==(const KODeg0&) const = default;
  KODeg0 operator+(const KODeg0& o) const;
  KODeg0 operator-(const KODeg0& o) const;
  KODeg0 operator*(const Int& c) const;
  std::string to_string() const;
};

/// Truncated filtered model of the real K-theory of a space in the genus,
/// determined by the integer class a (well-defined mod 24 once an
/// orientation is fixed). Carries the relation xi^2 = 4 bR and the psi^2
/// action on the degree-0 module; psi2_b_coefficient is the scale of psi^2
/// on bR*x^2 and exists as a knob for consistency tests (16 is the value
/// forced by multiplicativity).
class KOModel {
 public:
  explicit KOModel(Int a, Int psi2_b_coefficient = Int(16));

  const Int& a() const { return a_; }
  const Int& psi2_b_coefficient() const { return psi2_b_; }

  /// Ring product on the degree-0 module; (xi x)^2 = 4 bR x^2 and bR x^2
  /// annihilates everything but constants (filtration overflow).
  KODeg0 mul(const KODeg0& u, const KODeg0& v) const;
  /// Linear extension of psi^2(1) = 1, psi^2(xi x) = 4 xi x + 2a bR x^2,
  /// psi^2(bR x^2) = psi2_b_coefficient * bR x^2.
  KODeg0 psi2(const KODeg0& v) const;

  /// Model after the degree-4 representative change x' = x + m xi x^2;
  /// a' = a + 24m is recomputed from psi^2(xi x') in the primed basis, not
  /// assumed.
  KOModel representative_shift(const Int& m) const;
  /// Model after x' = -x; a' = -a, recomputed the same way.
  KOModel orientation_flip() const;

 private:
  KOModel change_basis(int s, const Int& m) const;

  Int a_;
  Int psi2_b_;
};

/// Truncated model of the p-local complex K-theory of a space in the genus:
/// polynomial in the generator t (the class b^2 u, filtration 4) with
/// coefficients mod p^2, truncated at filtration 2p+3, so t^k survives iff
/// k <= (p+1)/2. psi^p(t) = t^p + 2 sign p t^((p+1)/2) + p w + p^2 x0 where
/// w (filtration >= 2p+3) and x0 (filtration 4) are noise classes whose
/// coefficients default to zero; both die in the reduced model.
class KModel {
 public:
  static constexpr unsigned var_t = 0;
  static constexpr unsigned var_w = 1;
  static constexpr unsigned var_x0 = 2;

  KModel(long long p, int sign, Int w_coeff = Int(0), Int x0_coeff = Int(0));

  long long prime() const { return p_; }
  int sign() const { return sign_; }
  unsigned max_power() const { return static_cast<unsigned>((p_ + 1) / 2); }
  unsigned filtration_cutoff() const { return static_cast<unsigned>(2 * p_ + 3); }
  Int coeff_modulus() const { return Int(p_) * p_; }

  /// psi^p(t) before any reduction, over plain integers.
  MultiPoly psi_t_full() const;

  /// Filtration weight of a monomial: t and x0 weigh 4, w weighs 2p+3.
  unsigned filtration(const Exponents& e) const;
  /// Drops monomials of filtration >= 2p+3. Works for plain or mod-p^2
  /// polynomials and is the only filtration rule in the model.
  MultiPoly drop_dead(const MultiPoly& q) const;
  /// Full reduction of a plain polynomial: coefficients mod p^2, then dead
  /// monomials dropped.
  MultiPoly reduce(const MultiPoly& q) const;
  /// Mod-p variant (for the Frobenius shape of psi^p).
  MultiPoly reduce_mod_p(const MultiPoly& q) const;

  /// psi^p(t^k) = (psi^p t)^k, fully reduced. k may be 0 (gives 1); k above
  /// max_power() is out of the truncated model and rejected.
  MultiPoly psi_p(unsigned k) const;

 private:
  long long p_;
  int sign_;
  Int w_coeff_;
  Int x0_coeff_;
};

/// Rector's classification data for a space in the genus: the class of a
/// mod 24 up to sign, canonically represented in {1, 5, 7, 11}, plus one
/// sign per odd prime 5 <= p <= P_max. (X/2) and (X/3) are derived from the
/// a-class. P_max is implied by the largest tracked prime; the sign map must
/// cover every prime in [5, P_max].
class GenusPoint {
 public:
  GenusPoint(const Int& a_raw, std::map<long long, int> odd_signs);

  /// The point with a = 1 and every sign +1.
  static GenusPoint bs3(long long p_max);

  int a_class() const { return a_class_; }
  const std::map<long long, int>& odd_signs() const { return odd_signs_; }
  /// Largest tracked prime (3 when no odd signs are tracked).
  long long p_max() const { return p_max_; }

  int sign2() const;
  int sign3() const;
  /// (X/p): derived for p in {2, 3}, looked up for p >= 5.
  int sign_at(long long p) const;

  bool operator==(const GenusPoint&) const = default;

  std::string to_json() const;
  static GenusPoint from_json(std::string_view text);

 private:
  int a_class_;
  std::map<long long, int> odd_signs_;
  long long p_max_;
};

/// Deterministic verification suite over the models: shift and flip laws,
/// the (X/2),(X/3) table, psi^2 linearity and multiplicativity, psi^p
/// examples with multiplicativity, mod-p shape, and noise independence, and
/// GenusPoint JSON round-trips.
Report run_genus_checks();

}  // namespace lambdak
