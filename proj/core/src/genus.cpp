#include <lambdak/genus.hpp>

#include <array>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace lambdak {

namespace {

constexpr std::array<int, 8> kAllowedResidues = {1, 5, 7, 11, 13, 17, 19, 23};

const char* kAllowedSetMessage =
    "a must be congruent to +-1, +-5, +-7, or +-11 mod 24";

// The relation xi^2 = 4 bR.
const Int kXiSquaredScale(4);

}  // namespace

bool allowed_a_residue(const Int& a) {
  const Int r = mod_floor(a, Int(24));
  for (int v : kAllowedResidues)
    if (r == v) return true;
  return false;
}

Int require_allowed_a(const Int& a, const char* where) {
  if (!allowed_a_residue(a))
    throw std::invalid_argument(std::string(where) + ": " + kAllowedSetMessage +
                                " (got " + a.str() + ")");
  return mod_floor(a, Int(24));
}

std::pair<int, int> rector_pair(const Int& a) {
  const Int r = require_allowed_a(a, "rector_pair");
  const Int cls = r > 12 ? Int(24) - r : r;
  if (cls == 1) return {1, 1};
  if (cls == 5) return {1, -1};
  if (cls == 7) return {-1, 1};
  return {-1, -1};  // cls == 11
}

KODeg0 KODeg0::operator+(const KODeg0& o) const {
  return {unit + o.unit, xix + o.xix, bx2 + o.bx2};
}

KODeg0 KODeg0::operator-(const KODeg0& o) const {
  return {unit - o.unit, xix - o.xix, bx2 - o.bx2};
}

KODeg0 KODeg0::operator*(const Int& c) const {
  return {unit * c, xix * c, bx2 * c};
}

std::string KODeg0::to_string() const {
  MultiPoly p(unit);
  p += MultiPoly::variable(0) * xix;
  p += MultiPoly::variable(1) * bx2;
  const std::array<std::string, 2> names = {"xi*x", "bR*x^2"};
  return p.to_string(names);
}

KOModel::KOModel(Int a, Int psi2_b_coefficient)
    : a_(std::move(a)), psi2_b_(std::move(psi2_b_coefficient)) {
  require_allowed_a(a_, "KOModel");
}

KODeg0 KOModel::mul(const KODeg0& u, const KODeg0& v) const {
  // (xi x)^2 = xi^2 x^2 = 4 bR x^2; xi x * bR x^2 and (bR x^2)^2 exceed the
  // filtration threshold and vanish.
  return {u.unit * v.unit,
          u.unit * v.xix + u.xix * v.unit,
          u.unit * v.bx2 + u.bx2 * v.unit + kXiSquaredScale * u.xix * v.xix};
}

KODeg0 KOModel::psi2(const KODeg0& v) const {
  return {v.unit, 4 * v.xix, 2 * a_ * v.xix + psi2_b_ * v.bx2};
}

KOModel KOModel::change_basis(int s, const Int& m) const {
  // The degree-4 representative changes to x' = s x + m xi x^2, so
  // xi x' = s xi x + 4m bR x^2 while bR x'^2 = bR x^2 below the threshold.
  const KODeg0 xixp{0, Int(s), kXiSquaredScale * m};
  const KODeg0 im = psi2(xixp);
  // Solve im = alpha * xixp + beta * bR x'^2 in the primed basis; the new
  // class is read off beta = 2 a'.
  if (im.unit != 0)
    throw std::logic_error("KOModel::change_basis: psi^2 left the span");
  const Int alpha = im.xix * s;  // s^2 = 1
  const Int beta = im.bx2 - alpha * (kXiSquaredScale * m);
  if (alpha != 4)
    throw std::logic_error("KOModel::change_basis: xi-coordinate not scaled by 4");
  if (beta % 2 != 0)
    throw std::logic_error("KOModel::change_basis: odd bR-coordinate");
  return KOModel(beta / 2, psi2_b_);
}

KOModel KOModel::representative_shift(const Int& m) const {
  return change_basis(1, m);
}

KOModel KOModel::orientation_flip() const { return change_basis(-1, Int(0)); }

KModel::KModel(long long p, int sign, Int w_coeff, Int x0_coeff)
    : p_(p), sign_(sign), w_coeff_(std::move(w_coeff)), x0_coeff_(std::move(x0_coeff)) {
  if (p_ < 3 || p_ % 2 == 0 || !is_prime(p_))
    throw std::invalid_argument("KModel: p must be an odd prime (got " +
                                std::to_string(p_) + ")");
  if (sign_ != 1 && sign_ != -1)
    throw std::invalid_argument("KModel: sign must be +1 or -1");
}

MultiPoly KModel::psi_t_full() const {
  MultiPoly r = MultiPoly::monomial(1, Exponents{static_cast<unsigned>(p_)});
  r += MultiPoly::monomial(2 * sign_ * Int(p_), Exponents{max_power()});
  r += MultiPoly::monomial(Int(p_) * w_coeff_, Exponents{0, 1});
  r += MultiPoly::monomial(coeff_modulus() * x0_coeff_, Exponents{0, 0, 1});
  return r;
}

unsigned KModel::filtration(const Exponents& e) const {
  unsigned f = 0;
  if (e.size() > var_t) f += 4 * e[var_t];
  if (e.size() > var_w) f += filtration_cutoff() * e[var_w];
  if (e.size() > var_x0) f += 4 * e[var_x0];
  return f;
}

MultiPoly KModel::drop_dead(const MultiPoly& q) const {
  std::vector<std::pair<Exponents, Int>> kept;
  for (const auto& [e, c] : q.terms())
    if (filtration(e) < filtration_cutoff()) kept.emplace_back(e, c);
  return MultiPoly::from_terms(std::move(kept), q.modulus());
}

MultiPoly KModel::reduce(const MultiPoly& q) const {
  if (q.modulus()) {
    if (*q.modulus() != coeff_modulus())
      throw std::invalid_argument("KModel::reduce: foreign modulus");
    return drop_dead(q);
  }
  return drop_dead(q.reduce_mod(coeff_modulus()));
}

MultiPoly KModel::reduce_mod_p(const MultiPoly& q) const {
  if (q.modulus())
    throw std::invalid_argument("KModel::reduce_mod_p: expected plain integers");
  return drop_dead(q.reduce_mod(Int(p_)));
}

MultiPoly KModel::psi_p(unsigned k) const {
  if (k > max_power())
    throw std::invalid_argument("KModel::psi_p: t^" + std::to_string(k) +
                                " is not in the truncated model (max power " +
                                std::to_string(max_power()) + ")");
  return reduce(psi_t_full().pow(k));
}

GenusPoint::GenusPoint(const Int& a_raw, std::map<long long, int> odd_signs)
    : odd_signs_(std::move(odd_signs)) {
  const Int r = require_allowed_a(a_raw, "GenusPoint");
  const Int cls = r > 12 ? Int(24) - r : r;
  a_class_ = static_cast<int>(cls);

  p_max_ = 3;
  for (const auto& [p, s] : odd_signs_) {
    if (p < 5 || !is_prime(p))
      throw std::invalid_argument("GenusPoint: sign key " + std::to_string(p) +
                                  " is not a prime >= 5");
    if (s != 1 && s != -1)
      throw std::invalid_argument("GenusPoint: sign at p=" + std::to_string(p) +
                                  " must be +1 or -1");
    p_max_ = p;
  }
  for (long long p : primes_in(5, p_max_))
    if (!odd_signs_.contains(p))
      throw std::invalid_argument("GenusPoint: missing sign for prime " +
                                  std::to_string(p));
}

GenusPoint GenusPoint::bs3(long long p_max) {
  std::map<long long, int> signs;
  for (long long p : primes_in(5, p_max)) signs[p] = 1;
  return GenusPoint(Int(1), std::move(signs));
}

int GenusPoint::sign2() const { return rector_pair(Int(a_class_)).first; }

int GenusPoint::sign3() const { return rector_pair(Int(a_class_)).second; }

int GenusPoint::sign_at(long long p) const {
  if (p == 2) return sign2();
  if (p == 3) return sign3();
  const auto it = odd_signs_.find(p);
  if (it == odd_signs_.end())
    throw std::invalid_argument("GenusPoint: no sign tracked at p=" +
                                std::to_string(p));
  return it->second;
}

std::string GenusPoint::to_json() const {
  nlohmann::json j;
  j["a_class"] = a_class_;
  nlohmann::json signs = nlohmann::json::object();
  for (const auto& [p, s] : odd_signs_) signs[std::to_string(p)] = s;
  j["signs"] = std::move(signs);
  return j.dump();
}

GenusPoint GenusPoint::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("GenusPoint: bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("a_class") ||
      !j["a_class"].is_number_integer())
    throw std::invalid_argument("GenusPoint: expected an integer \"a_class\" field");
  std::map<long long, int> signs;
  if (j.contains("signs")) {
    if (!j["signs"].is_object())
      throw std::invalid_argument("GenusPoint: \"signs\" must be an object");
    for (const auto& [key, val] : j["signs"].items()) {
      long long p = 0;
      try {
        size_t pos = 0;
        p = std::stoll(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
      } catch (const std::exception&) {
        throw std::invalid_argument("GenusPoint: sign key \"" + key +
                                    "\" is not a prime");
      }
      if (!val.is_number_integer())
        throw std::invalid_argument("GenusPoint: sign at p=" + key +
                                    " must be +1 or -1");
      signs[p] = val.get<int>();
    }
  }
  return GenusPoint(Int(j["a_class"].get<long long>()), std::move(signs));
}

namespace {

std::vector<KODeg0> small_vectors() {
  std::vector<KODeg0> vs;
  for (int u = -1; u <= 2; ++u)
    for (int x = -1; x <= 2; ++x)
      for (int b = -1; b <= 2; ++b) vs.push_back({Int(u), Int(x), Int(b)});
  return vs;
}

}  // namespace

Report run_genus_checks() {
  Report rep;
  rep.suite = "genus";

  // (X/2),(X/3) table, all eight residues.
  {
    bool ok = true;
    std::string detail;
    const std::array<std::pair<int, std::pair<int, int>>, 8> want = {{
        {1, {1, 1}}, {23, {1, 1}}, {5, {1, -1}}, {19, {1, -1}},
        {7, {-1, 1}}, {17, {-1, 1}}, {11, {-1, -1}}, {13, {-1, -1}},
    }};
    for (const auto& [a, pq] : want) {
      if (rector_pair(Int(a)) != pq) {
        ok = false;
        detail = "a=" + std::to_string(a);
        break;
      }
    }
    rep.add("rector_pair_table", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int r = 0; r < 24 && ok; ++r) {
      if (allowed_a_residue(Int(r))) continue;
      try {
        rector_pair(Int(r));
        ok = false;
        detail = "r=" + std::to_string(r) + " accepted";
      } catch (const std::invalid_argument&) {
      }
    }
    rep.add("rector_pair_rejects_forbidden", ok, detail);
  }

  // Shift and flip laws on every residue class.
  {
    bool ok = true;
    std::string detail;
    for (int a : kAllowedResidues) {
      const KOModel base{Int(a)};
      for (int m = -5; m <= 5 && ok; ++m) {
        const KOModel shifted = base.representative_shift(Int(m));
        if (shifted.a() != a + 24 * m ||
            mod_floor(shifted.a(), Int(24)) != mod_floor(Int(a), Int(24))) {
          ok = false;
          detail = "a=" + std::to_string(a) + ", m=" + std::to_string(m) +
                   " -> " + shifted.a().str();
        }
      }
    }
    rep.add("shift_preserves_class", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int a : kAllowedResidues) {
      const KOModel base{Int(a)};
      for (int m1 = -3; m1 <= 3 && ok; ++m1)
        for (int m2 = -3; m2 <= 3 && ok; ++m2) {
          const Int two_step =
              base.representative_shift(Int(m1)).representative_shift(Int(m2)).a();
          const Int one_step = base.representative_shift(Int(m1 + m2)).a();
          if (two_step != one_step) {
            ok = false;
            detail = "a=" + std::to_string(a) + ", m1=" + std::to_string(m1) +
                     ", m2=" + std::to_string(m2);
          }
        }
    }
    rep.add("shift_composes", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (int a : kAllowedResidues) {
      const KOModel base{Int(a)};
      if (base.orientation_flip().a() != -a ||
          base.orientation_flip().orientation_flip().a() != a) {
        ok = false;
        detail = "a=" + std::to_string(a);
      }
      for (int m = -3; m <= 3 && ok; ++m) {
        const Int left = base.representative_shift(Int(m)).orientation_flip().a();
        const Int right = base.orientation_flip().representative_shift(Int(-m)).a();
        if (left != right) {
          ok = false;
          detail = "a=" + std::to_string(a) + ", m=" + std::to_string(m) +
                   " (flip/shift)";
        }
      }
    }
    rep.add("flip_negates_and_commutes", ok, detail);
  }

  // psi^2 is linear and multiplicative on the truncated degree-0 module.
  {
    bool ok = true;
    std::string detail;
    const auto vs = small_vectors();
    for (int a : {1, 5, 19}) {
      const KOModel M{Int(a)};
      if (M.psi2(KODeg0{1, 0, 0}) != KODeg0{1, 0, 0}) {
        ok = false;
        detail = "psi2(1) != 1";
      }
      for (size_t i = 0; i < vs.size() && ok; ++i)
        for (size_t j = i; j < vs.size() && ok; ++j) {
          if (M.psi2(vs[i] + vs[j]) != M.psi2(vs[i]) + M.psi2(vs[j])) {
            ok = false;
            detail = "additivity at a=" + std::to_string(a);
          }
          if (M.psi2(M.mul(vs[i], vs[j])) !=
              M.mul(M.psi2(vs[i]), M.psi2(vs[j]))) {
            ok = false;
            detail = "multiplicativity at a=" + std::to_string(a) + ", u=" +
                     vs[i].to_string() + ", v=" + vs[j].to_string();
          }
        }
    }
    rep.add("psi2_ring_map", ok, detail);
  }
  {
    // The printed psi^2 values for the base point a=1.
    const KOModel M{Int(1)};
    const bool ok = M.psi2(KODeg0{0, 1, 0}) == KODeg0{0, 4, 2} &&
                    M.psi2(KODeg0{0, 0, 1}) == KODeg0{0, 0, 16} &&
                    M.psi2(KODeg0{}) == KODeg0{};
    rep.add("psi2_base_point_values", ok, ok ? "" : "a=1 psi2 table wrong");
  }

  // psi^p on the K model: pinned values, multiplicativity, mod-p shape,
  // noise independence.
  {
    const KModel m3{3, 1};
    const KModel m5{5, -1};
    const MultiPoly want3 =
        MultiPoly::monomial(6, Exponents{2}, m3.coeff_modulus());
    const MultiPoly want5 =
        MultiPoly::monomial(15, Exponents{3}, m5.coeff_modulus());
    bool ok = m3.psi_p(1) == want3 && m5.psi_p(1) == want5 &&
              m3.psi_p(0) == MultiPoly::one(m3.coeff_modulus());
    std::string detail;
    if (!ok) detail = "p=3: " + m3.psi_p(1).to_string() + "; p=5: " + m5.psi_p(1).to_string();
    rep.add("kmodel_psi_values", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (long long p : {3LL, 5LL, 7LL, 11LL, 13LL}) {
      for (int sign : {1, -1}) {
        const KModel M{p, sign};
        const MultiPoly psi1 = M.psi_p(1);
        for (unsigned k = 0; k <= M.max_power() && ok; ++k) {
          if (M.psi_p(k) != M.drop_dead(psi1.pow(k))) {
            ok = false;
            detail = "p=" + std::to_string(p) + ", k=" + std::to_string(k);
          }
        }
        try {
          M.psi_p(M.max_power() + 1);
          ok = false;
          detail = "p=" + std::to_string(p) + ": out-of-range k accepted";
        } catch (const std::invalid_argument&) {
        }
      }
    }
    rep.add("kmodel_psi_multiplicative", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (long long p : {3LL, 5LL, 7LL}) {
      for (int sign : {1, -1}) {
        const KModel M{p, sign};
        const MultiPoly tp =
            MultiPoly::monomial(1, Exponents{static_cast<unsigned>(p)});
        if (!M.reduce_mod_p(M.psi_t_full() - tp).is_zero()) {
          ok = false;
          detail = "p=" + std::to_string(p) + ", sign=" + std::to_string(sign);
        }
      }
    }
    rep.add("kmodel_psi_frobenius_shape", ok, detail);
  }
  {
    bool ok = true;
    std::string detail;
    for (long long p : {3LL, 5LL, 7LL}) {
      const KModel clean{p, -1};
      for (const auto& [w, x0] :
           std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, -3}}) {
        const KModel noisy{p, -1, Int(w), Int(x0)};
        for (unsigned k = 0; k <= clean.max_power() && ok; ++k)
          if (clean.psi_p(k) != noisy.psi_p(k)) {
            ok = false;
            detail = "p=" + std::to_string(p) + ", w=" + std::to_string(w) +
                     ", x0=" + std::to_string(x0) + ", k=" + std::to_string(k);
          }
      }
    }
    rep.add("kmodel_noise_quotiented_away", ok, detail);
  }

  // GenusPoint canonical forms and JSON.
  {
    const GenusPoint p23{Int(23), {}};
    const GenusPoint p19{Int(19), {}};
    const GenusPoint b = GenusPoint::bs3(97);
    bool ok = p23.a_class() == 1 && p19.a_class() == 5 && b.a_class() == 1 &&
              b.p_max() == 97 && b.sign2() == 1 && b.sign3() == 1 &&
              b.sign_at(97) == 1 && b.odd_signs().size() == primes_in(5, 97).size();
    rep.add("genus_point_canonical", ok, ok ? "" : "canonical forms wrong");
  }
  {
    const GenusPoint b = GenusPoint::bs3(23);
    GenusPoint mixed{Int(17), {{5, -1}, {7, 1}, {11, -1}, {13, 1}}};
    bool ok = GenusPoint::from_json(b.to_json()) == b &&
              GenusPoint::from_json(mixed.to_json()) == mixed &&
              mixed.a_class() == 7 && mixed.sign_at(11) == -1;
    rep.add("genus_json_round_trip", ok, ok ? "" : "round trip changed the point");
  }
  {
    bool ok = true;
    std::string detail;
    const std::vector<std::string> bad = {
        R"({"a_class": 3, "signs": {}})",
        R"({"a_class": 1, "signs": {"7": 1}})",
        R"({"a_class": 1, "signs": {"5": 2}})",
        R"({"signs": {}})",
        R"(not json)",
    };
    for (const std::string& text : bad) {
      try {
        GenusPoint::from_json(text);
        ok = false;
        detail = "accepted: " + text;
        break;
      } catch (const std::invalid_argument&) {
      }
    }
    rep.add("genus_json_rejects_malformed", ok, detail);
  }

  rep.sort_checks();
  return rep;
}

}  // namespace lambdak
