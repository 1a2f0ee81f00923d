#include <lambdak/multipoly.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace lambdak {

unsigned total_degree(const Exponents& e) {
  unsigned d = 0;
  for (unsigned x : e) d += x;
  return d;
}

bool GrlexGreater::operator()(const Exponents& a, const Exponents& b) const {
  const unsigned da = total_degree(a);
  const unsigned db = total_degree(b);
  if (da != db) return da > db;
  const size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    const unsigned ea = i < a.size() ? a[i] : 0;
    const unsigned eb = i < b.size() ? b[i] : 0;
    if (ea != eb) return ea > eb;
  }
  return false;
}

void MultiPoly::strip_trailing_zeros(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

MultiPoly::MultiPoly(Int constant, std::optional<Int> modulus)
    : modulus_(std::move(modulus)) {
  if (modulus_ && *modulus_ < 2)
    throw std::invalid_argument("MultiPoly: modulus must be >= 2");
  insert_term({}, std::move(constant));
}

MultiPoly MultiPoly::zero(std::optional<Int> modulus) {
  MultiPoly p;
  p.modulus_ = std::move(modulus);
  return p;
}

MultiPoly MultiPoly::one(std::optional<Int> modulus) {
  return MultiPoly(Int(1), std::move(modulus));
}

MultiPoly MultiPoly::variable(unsigned index, std::optional<Int> modulus) {
  Exponents e(index + 1, 0);
  e[index] = 1;
  return monomial(1, std::move(e), std::move(modulus));
}

MultiPoly MultiPoly::monomial(Int coef, Exponents exps,
                              std::optional<Int> modulus) {
  MultiPoly p;
  p.modulus_ = std::move(modulus);
  if (p.modulus_ && *p.modulus_ < 2)
    throw std::invalid_argument("MultiPoly: modulus must be >= 2");
  p.insert_term(std::move(exps), std::move(coef));
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<std::pair<Exponents, Int>> terms,
                                std::optional<Int> modulus) {
  MultiPoly p;
  p.modulus_ = std::move(modulus);
  if (p.modulus_ && *p.modulus_ < 2)
    throw std::invalid_argument("MultiPoly: modulus must be >= 2");
  for (auto& [exps, coef] : terms) p.insert_term(std::move(exps), std::move(coef));
  return p;
}

void MultiPoly::insert_term(Exponents exps, Int coef) {
  if (modulus_) coef = mod_floor(coef, *modulus_);
  if (coef == 0) return;
  strip_trailing_zeros(exps);
  // try_emplace leaves its arguments untouched when the key already exists.
  auto [it, inserted] = terms_.try_emplace(std::move(exps), std::move(coef));
  if (!inserted) {
    it->second += coef;
    if (modulus_) it->second = mod_floor(it->second, *modulus_);
    if (it->second == 0) terms_.erase(it);
  }
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

Int MultiPoly::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Int(0) : it->second;
}

Int MultiPoly::coefficient(Exponents exps) const {
  strip_trailing_zeros(exps);
  auto it = terms_.find(exps);
  return it == terms_.end() ? Int(0) : it->second;
}

unsigned MultiPoly::nvars() const {
  unsigned n = 0;
  for (const auto& [e, c] : terms_) n = std::max<unsigned>(n, e.size());
  return n;
}

int MultiPoly::degree() const {
  if (terms_.empty()) return -1;
  // grlex-first key has maximal total degree
  return static_cast<int>(total_degree(terms_.begin()->first));
}

const std::pair<const Exponents, Int>& MultiPoly::leading_term() const {
  if (terms_.empty())
    throw std::invalid_argument("MultiPoly: zero polynomial has no leading term");
  return *terms_.begin();
}

void MultiPoly::require_same_ring(const MultiPoly& o, const char* op) const {
  if (modulus_ != o.modulus_) {
    std::ostringstream msg;
    msg << "MultiPoly::" << op << ": incompatible coefficient rings (";
    if (modulus_) msg << "Z/" << *modulus_; else msg << "Z";
    msg << " vs ";
    if (o.modulus_) msg << "Z/" << *o.modulus_; else msg << "Z";
    msg << ")";
    throw std::invalid_argument(msg.str());
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  r.modulus_ = modulus_;
  for (const auto& [e, c] : terms_) {
    Int nc = -c;
    if (modulus_) nc = mod_floor(nc, *modulus_);
    if (nc != 0) r.terms_.emplace_hint(r.terms_.end(), e, std::move(nc));
  }
  return r;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  require_same_ring(o, "add");
  const MultiPoly* big = this;
  const MultiPoly* small = &o;
  if (big->terms_.size() < small->terms_.size()) std::swap(big, small);
  MultiPoly r = *big;
  for (const auto& [e, c] : small->terms_) {
    auto [it, inserted] = r.terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (modulus_) it->second = mod_floor(it->second, *modulus_);
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  return *this + (-o);
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  require_same_ring(o, "mul");
  if (is_zero() || o.is_zero()) return MultiPoly::zero(modulus_);

  // Single-term factors keep the key order: translating every exponent
  // vector by a fixed monomial preserves graded-lex.
  const MultiPoly* poly = this;
  const MultiPoly* mono = &o;
  if (poly->terms_.size() == 1 && mono->terms_.size() > 1)
    std::swap(poly, mono);
  if (mono->terms_.size() == 1) {
    const auto& [me, mc] = *mono->terms_.begin();
    MultiPoly r;
    r.modulus_ = modulus_;
    for (const auto& [e, c] : poly->terms_) {
      Exponents ne(std::max(e.size(), me.size()), 0);
      for (size_t i = 0; i < e.size(); ++i) ne[i] += e[i];
      for (size_t i = 0; i < me.size(); ++i) ne[i] += me[i];
      Int nc = c * mc;
      if (modulus_) nc = mod_floor(nc, *modulus_);
      if (nc != 0) r.terms_.emplace_hint(r.terms_.end(), std::move(ne), std::move(nc));
    }
    return r;
  }

  MultiPoly r;
  r.modulus_ = modulus_;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      Exponents ne(std::max(ea.size(), eb.size()), 0);
      for (size_t i = 0; i < ea.size(); ++i) ne[i] += ea[i];
      for (size_t i = 0; i < eb.size(); ++i) ne[i] += eb[i];
      Int nc = ca * cb;
      auto it = r.terms_.find(ne);
      if (it == r.terms_.end()) {
        if (modulus_) nc = mod_floor(nc, *modulus_);
        if (nc != 0) r.terms_.emplace(std::move(ne), std::move(nc));
      } else {
        it->second += nc;
        if (modulus_) it->second = mod_floor(it->second, *modulus_);
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const Int& scalar) const {
  return *this * MultiPoly(scalar, modulus_);
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = MultiPoly::one(modulus_);
  MultiPoly base = *this;
  while (e) {
    if (e & 1u) result *= base;
    base *= base;
    e >>= 1u;
  }
  return result;
}

MultiPoly MultiPoly::substitute(
    const std::map<unsigned, MultiPoly>& bindings) const {
  for (const auto& [var, value] : bindings) {
    (void)var;
    require_same_ring(value, "substitute");
  }
  MultiPoly result = MultiPoly::zero(modulus_);
  for (const auto& [e, c] : terms_) {
    MultiPoly term(c, modulus_);
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = bindings.find(static_cast<unsigned>(i));
      if (it == bindings.end())
        throw std::invalid_argument(
            "MultiPoly::substitute: unbound variable x" + std::to_string(i));
      term *= it->second.pow(e[i]);
    }
    result += term;
  }
  return result;
}

MultiPoly MultiPoly::reduce_mod(const Int& m) const {
  if (modulus_)
    throw std::invalid_argument(
        "MultiPoly::reduce_mod: polynomial already has a modulus");
  if (m < 2)
    throw std::invalid_argument("MultiPoly::reduce_mod: modulus must be >= 2");
  MultiPoly r;
  r.modulus_ = m;
  for (const auto& [e, c] : terms_) {
    Int nc = mod_floor(c, m);
    if (nc != 0) r.terms_.emplace_hint(r.terms_.end(), e, std::move(nc));
  }
  return r;
}

MultiPoly MultiPoly::swap_vars(unsigned i, unsigned j) const {
  if (i == j) return *this;
  MultiPoly r;
  r.modulus_ = modulus_;
  for (const auto& [e, c] : terms_) {
    Exponents ne = e;
    const unsigned need = std::max(i, j) + 1;
    if (ne.size() < need) ne.resize(need, 0);
    std::swap(ne[i], ne[j]);
    strip_trailing_zeros(ne);
    r.terms_.emplace(std::move(ne), c);
  }
  return r;
}

MultiPoly MultiPoly::truncate_degree(unsigned bound) const {
  MultiPoly r;
  r.modulus_ = modulus_;
  for (const auto& [e, c] : terms_)
    if (total_degree(e) <= bound) r.terms_.emplace_hint(r.terms_.end(), e, c);
  return r;
}

bool MultiPoly::is_canonical() const {
  for (const auto& [e, c] : terms_) {
    if (c == 0) return false;
    if (!e.empty() && e.back() == 0) return false;
    if (modulus_ && (c < 0 || c >= *modulus_)) return false;
  }
  return true;
}

namespace {

std::string default_name(size_t i) { return "x" + std::to_string(i); }

void append_monomial(std::string& out, const Exponents& e,
                     std::span<const std::string> names) {
  bool first = true;
  for (size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!first) out += '*';
    first = false;
    out += i < names.size() ? names[i] : default_name(i);
    if (e[i] > 1) {
      out += '^';
      out += std::to_string(e[i]);
    }
  }
}

}  // namespace

std::string MultiPoly::to_string() const { return to_string({}); }

std::string MultiPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    Int a = c;
    if (first) {
      if (a < 0) {
        out += '-';
        a = -a;
      }
      first = false;
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    if (e.empty()) {
      out += a.str();
    } else if (a == 1) {
      append_monomial(out, e, names);
    } else {
      out += a.str();
      out += '*';
      append_monomial(out, e, names);
    }
  }
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool eof() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  bool consume(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("MultiPoly::parse: " + what + " at offset " +
                                std::to_string(pos));
  }
  Int integer() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) fail("expected integer");
    return Int(std::string(text.substr(start, pos - start)));
  }
  unsigned index() {
    Int v = integer();
    if (v < 0 || v > 1000000) fail("variable index out of range");
    return static_cast<unsigned>(v.convert_to<unsigned long>());
  }
};

}  // namespace

MultiPoly MultiPoly::parse(std::string_view text, std::optional<Int> modulus) {
  Parser p{text};
  MultiPoly result = MultiPoly::zero(modulus);
  if (p.eof()) p.fail("empty input");
  bool negative = false;
  if (p.consume('-'))
    negative = true;
  else
    p.consume('+');
  while (true) {
    // one term: optional coefficient and/or variable powers joined by '*'
    Int coef = 1;
    Exponents exps;
    bool saw_factor = false;
    while (true) {
      char c = p.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        coef *= p.integer();
        saw_factor = true;
      } else if (c == 'x') {
        ++p.pos;
        unsigned var = p.index();
        unsigned e = 1;
        if (p.consume('^')) {
          Int ev = p.integer();
          if (ev < 0 || ev > 1000000) p.fail("exponent out of range");
          e = static_cast<unsigned>(ev.convert_to<unsigned long>());
        }
        if (exps.size() < var + 1) exps.resize(var + 1, 0);
        exps[var] += e;
        saw_factor = true;
      } else {
        p.fail("expected coefficient or variable");
      }
      if (!p.consume('*')) break;
    }
    if (!saw_factor) p.fail("empty term");
    if (negative) coef = -coef;
    result += MultiPoly::monomial(std::move(coef), std::move(exps), modulus);
    if (p.eof()) break;
    if (p.consume('+'))
      negative = false;
    else if (p.consume('-'))
      negative = true;
    else
      p.fail("expected '+' or '-'");
    if (p.eof()) p.fail("dangling sign");
  }
  return result;
}

}  // namespace lambdak
