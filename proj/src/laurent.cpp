#include "blab/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "blab/errors.hpp"

namespace blab {

ExpVec exp_add(const ExpVec& a, const ExpVec& b) {
  if (a.size() != b.size()) throw ContextError("exponent vectors of different length");
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

ExpVec exp_sub(const ExpVec& a, const ExpVec& b) {
  if (a.size() != b.size()) throw ContextError("exponent vectors of different length");
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

ExpVec exp_neg(const ExpVec& a) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

ExpVec exp_scale(const ExpVec& a, std::int64_t n) {
  ExpVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * n;
  return r;
}

bool exp_is_zero(const ExpVec& a) {
  return std::all_of(a.begin(), a.end(), [](std::int64_t v) { return v == 0; });
}

namespace {

void require_same_context(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.nvars() != b.nvars()) throw ContextError("polynomials live in different variable contexts");
  if (a.modulus() != b.modulus()) throw ContextError("polynomials have different coefficient domains");
}

bool modulus_is_prime(const mpz_class& m) { return mpz_probab_prime_p(m.get_mpz_t(), 30) > 0; }

}  // namespace

LaurentPoly::LaurentPoly(std::size_t nvars, mpz_class modulus) : nvars_(nvars), modulus_(std::move(modulus)) {
  if (modulus_ < 0 || modulus_ == 1) throw DomainError("coefficient modulus must be 0 or at least 2");
}

LaurentPoly LaurentPoly::constant(std::size_t nvars, const mpz_class& c, const mpz_class& modulus) {
  LaurentPoly p(nvars, modulus);
  p.add_term(ExpVec(nvars, 0), c);
  return p;
}

LaurentPoly LaurentPoly::monomial(const ExpVec& e, const mpz_class& c, const mpz_class& modulus) {
  LaurentPoly p(e.size(), modulus);
  p.add_term(e, c);
  return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t index, const mpz_class& modulus) {
  ExpVec e(nvars, 0);
  e.at(index) = 1;
  return monomial(e, 1, modulus);
}

mpz_class LaurentPoly::coeff(const ExpVec& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::normalize_coeff(mpz_class& c) const {
  if (modulus_ != 0) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), modulus_.get_mpz_t());
}

void LaurentPoly::add_term(const ExpVec& e, const mpz_class& c) {
  if (e.size() != nvars_) throw ContextError("exponent vector length does not match variable count");
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  normalize_coeff(it->second);
  if (it->second == 0) terms_.erase(it);
}

bool LaurentPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && exp_is_zero(terms_.begin()->first));
}

bool LaurentPoly::is_unit_monomial() const {
  if (terms_.size() != 1) return false;
  const mpz_class& c = terms_.begin()->second;
  if (c == 1) return true;
  if (modulus_ == 0) return c == -1;
  return c == modulus_ - 1;
}

const std::pair<const ExpVec, mpz_class>& LaurentPoly::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return *terms_.begin();
}

const std::pair<const ExpVec, mpz_class>& LaurentPoly::trailing_term() const {
  if (terms_.empty()) throw DomainError("trailing term of the zero polynomial");
  return *terms_.rbegin();
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& b) {
  require_same_context(*this, b);
  for (const auto& [e, c] : b.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& b) {
  require_same_context(*this, b);
  for (const auto& [e, c] : b.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  r += b;
  return r;
}

LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly r = a;
  r -= b;
  return r;
}

LaurentPoly operator-(const LaurentPoly& a) {
  LaurentPoly r(a.nvars(), a.modulus());
  for (const auto& [e, c] : a.terms()) r.add_term(e, -c);
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  require_same_context(a, b);
  LaurentPoly r(a.nvars(), a.modulus());
  ExpVec e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

LaurentPoly scale(const LaurentPoly& a, const mpz_class& c) {
  LaurentPoly r(a.nvars(), a.modulus());
  for (const auto& [e, ca] : a.terms()) r.add_term(e, ca * c);
  return r;
}

LaurentPoly shift(const LaurentPoly& a, const ExpVec& s) {
  if (s.size() != a.nvars()) throw ContextError("shift vector length does not match variable count");
  LaurentPoly r(a.nvars(), a.modulus());
  for (const auto& [e, c] : a.terms()) r.add_term(exp_add(e, s), c);
  return r;
}

LaurentPoly pow(const LaurentPoly& a, unsigned k) {
  LaurentPoly result = LaurentPoly::constant(a.nvars(), 1, a.modulus());
  LaurentPoly base = a;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

LaurentPoly substitute_power(const LaurentPoly& f, std::int64_t N) {
  if (N < 1) throw DomainError("substitute_power requires N >= 1");
  LaurentPoly r(f.nvars(), f.modulus());
  for (const auto& [e, c] : f.terms()) r.add_term(exp_scale(e, N), c);
  return r;
}

LaurentPoly compose(const LaurentPoly& f, const std::vector<LaurentPoly>& images) {
  if (images.size() != f.nvars()) throw ContextError("compose needs one image per variable");
  if (images.empty()) return f;
  const std::size_t target_vars = images.front().nvars();
  const mpz_class& m = images.front().modulus();
  std::vector<std::optional<LaurentPoly>> inverses(images.size());
  LaurentPoly r(target_vars, m);
  for (const auto& [e, c] : f.terms()) {
    LaurentPoly term = LaurentPoly::constant(target_vars, c, m);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] > 0) {
        term = term * pow(images[i], static_cast<unsigned>(e[i]));
      } else if (e[i] < 0) {
        if (!inverses[i]) {
          if (!images[i].is_unit_monomial())
            throw DomainError("negative exponent composed with a non-invertible image");
          const auto& [ei, ci] = images[i].leading_term();
          inverses[i] = LaurentPoly::monomial(exp_neg(ei), ci, m);
        }
        term = term * pow(*inverses[i], static_cast<unsigned>(-e[i]));
      }
    }
    r += term;
  }
  return r;
}

bool is_flat(const LaurentPoly& f) {
  if (f.is_zero()) return false;
  for (const auto& [e, c] : f.terms()) {
    const bool unit = c == 1 || (f.modulus() == 0 ? c == -1 : c == f.modulus() - 1);
    if (!unit) return false;
  }
  return true;
}

std::int64_t max_degree_in(const LaurentPoly& f, std::size_t var) {
  if (f.is_zero()) throw DomainError("degree of the zero polynomial");
  std::int64_t d = f.terms().begin()->first.at(var);
  for (const auto& [e, c] : f.terms()) d = std::max(d, e[var]);
  return d;
}

std::int64_t min_degree_in(const LaurentPoly& f, std::size_t var) {
  if (f.is_zero()) throw DomainError("degree of the zero polynomial");
  std::int64_t d = f.terms().begin()->first.at(var);
  for (const auto& [e, c] : f.terms()) d = std::min(d, e[var]);
  return d;
}

LaurentPoly coefficient_in(const LaurentPoly& f, std::size_t var, std::int64_t j) {
  LaurentPoly r(f.nvars(), f.modulus());
  for (const auto& [e, c] : f.terms()) {
    if (e[var] != j) continue;
    ExpVec s = e;
    s[var] = 0;
    r.add_term(s, c);
  }
  return r;
}

ExpVec min_exponents(const LaurentPoly& f) {
  if (f.is_zero()) throw DomainError("min exponents of the zero polynomial");
  ExpVec m = f.terms().begin()->first;
  for (const auto& [e, c] : f.terms())
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], e[i]);
  return m;
}

std::pair<ExpVec, LaurentPoly> strip_monomial(const LaurentPoly& f) {
  if (f.is_zero()) return {ExpVec(f.nvars(), 0), f};
  ExpVec m = min_exponents(f);
  return {m, shift(f, exp_neg(m))};
}

std::size_t choose_pivot(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("pivot of the zero polynomial");
  std::optional<std::size_t> best;
  std::int64_t best_span = 0;
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    const std::int64_t span = max_degree_in(p, v) - min_degree_in(p, v);
    if (span > 0 && (!best || span < best_span)) {
      best = v;
      best_span = span;
    }
  }
  if (!best) throw DomainError("polynomial has positive degree in no variable");
  return *best;
}

namespace {

// c / lc when it is exact and cheap to decide, nullopt otherwise.
std::optional<LaurentPoly> coefficient_quotient(const LaurentPoly& c, const LaurentPoly& lc) {
  if (lc.is_unit_monomial()) {
    const auto& [e, u] = lc.leading_term();
    return shift(scale(c, u), exp_neg(e));
  }
  if (lc.modulus() != 0 && !modulus_is_prime(lc.modulus())) return std::nullopt;
  return exact_quotient(c, lc);
}

}  // namespace

PseudoDivision pseudo_divide(const LaurentPoly& f, const LaurentPoly& p, std::size_t pivot) {
  require_same_context(f, p);
  if (pivot >= p.nvars()) throw ContextError("pivot index out of range");
  if (p.is_zero() || max_degree_in(p, pivot) == min_degree_in(p, pivot))
    throw DomainError("divisor has no positive degree in the pivot");
  const std::int64_t D = max_degree_in(p, pivot);
  const LaurentPoly lc = coefficient_in(p, pivot, D);
  PseudoDivision out{LaurentPoly(f.nvars(), f.modulus()), f, 0};
  LaurentPoly& q = out.quotient;
  LaurentPoly& r = out.remainder;
  while (!r.is_zero()) {
    const std::int64_t t = max_degree_in(r, pivot);
    if (t < D) break;
    LaurentPoly c = coefficient_in(r, pivot, t);
    LaurentPoly factor;
    if (auto ex = coefficient_quotient(c, lc)) {
      factor = std::move(*ex);
    } else {
      r = r * lc;
      q = q * lc;
      ++out.multiplier_exponent;
      factor = std::move(c);
    }
    ExpVec s(f.nvars(), 0);
    s[pivot] = t - D;
    LaurentPoly term = shift(factor, s);
    q += term;
    r -= term * p;
  }
  return out;
}

std::optional<LaurentPoly> exact_quotient(const LaurentPoly& f, const LaurentPoly& g) {
  require_same_context(f, g);
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  if (f.modulus() != 0 && !modulus_is_prime(f.modulus()))
    throw DomainError("exact division over Z/mZ needs a prime modulus");
  if (f.is_zero()) return f;
  auto [sf, f0] = strip_monomial(f);
  auto [sg, g0] = strip_monomial(g);
  const ExpVec offset = exp_sub(sf, sg);
  if (g0.is_constant()) {
    const mpz_class c = g0.leading_term().second;
    LaurentPoly q(f.nvars(), f.modulus());
    if (f.modulus() == 0) {
      for (const auto& [e, a] : f0.terms()) {
        if (!mpz_divisible_p(a.get_mpz_t(), c.get_mpz_t())) return std::nullopt;
        q.add_term(e, a / c);
      }
    } else {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), c.get_mpz_t(), f.modulus().get_mpz_t());
      q = scale(f0, inv);
    }
    return shift(q, offset);
  }
  const std::size_t pivot = choose_pivot(g0);
  if (max_degree_in(f0, pivot) < max_degree_in(g0, pivot)) return std::nullopt;
  PseudoDivision pd = pseudo_divide(f0, g0, pivot);
  if (!pd.remainder.is_zero()) return std::nullopt;
  LaurentPoly q = std::move(pd.quotient);
  if (pd.multiplier_exponent > 0) {
    const LaurentPoly lc = coefficient_in(g0, pivot, max_degree_in(g0, pivot));
    auto reduced = exact_quotient(q, pow(lc, pd.multiplier_exponent));
    if (!reduced) return std::nullopt;
    q = std::move(*reduced);
  }
  return shift(q, offset);
}

bool divides(const LaurentPoly& p, const LaurentPoly& f) {
  if (p.is_zero()) throw DomainError("divides: divisor is zero");
  return exact_quotient(f, p).has_value();
}

ContentSplit content_and_primitive(const LaurentPoly& f) {
  if (f.modulus() != 0) throw DomainError("content is defined over the integers only");
  if (f.is_zero()) throw DomainError("content of the zero polynomial");
  mpz_class g = 0;
  for (const auto& [e, c] : f.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  LaurentPoly prim(f.nvars(), 0);
  for (const auto& [e, c] : f.terms()) prim.add_term(e, c / g);
  return {g, prim};
}

FiniteField::Elem evaluate(const LaurentPoly& f, const FiniteField& field,
                           const std::vector<FiniteField::Elem>& point) {
  if (point.size() != f.nvars()) throw ContextError("evaluation point has the wrong dimension");
  if (f.modulus() != 0 && f.modulus() != field.characteristic())
    throw ContextError("coefficient domain does not embed in the evaluation field");
  FiniteField::Elem acc = field.zero();
  for (const auto& [e, c] : f.terms()) {
    FiniteField::Elem term = field.from_integer(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (e[i] < 0 && field.is_zero(point[i]))
        throw DomainError("negative exponent at a zero coordinate");
      term = field.mul(term, field.pow(point[i], e[i]));
    }
    field.add_into(acc, term);
  }
  return acc;
}

VarNames default_var_names(std::size_t k, const std::string& prefix) {
  VarNames v;
  for (std::size_t i = 1; i <= k; ++i) v.push_back(prefix + std::to_string(i));
  return v;
}

VarNames infer_var_names(std::string_view text) {
  char prefix = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    const bool boundary = i == 0 || !(std::isalnum(static_cast<unsigned char>(text[i - 1])) || text[i - 1] == '_');
    if (!boundary || (ch != 'x' && ch != 'y')) continue;
    std::size_t j = i + 1;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    if (j == i + 1) continue;
    if (prefix && prefix != ch) throw ParseError("mixed x and y variable names", i);
    prefix = ch;
    k = std::max<std::size_t>(k, std::stoul(std::string(text.substr(i + 1, j - i - 1))));
  }
  if (!prefix) return {};
  return default_var_names(k, std::string(1, prefix));
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const VarNames& vars, const mpz_class& modulus)
      : text_(text), vars_(vars), modulus_(modulus) {}

  LaurentPoly run() {
    LaurentPoly r = expr();
    skip();
    if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, text_[pos_]) + "'", pos_);
    return r;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  LaurentPoly expr() {
    LaurentPoly r(vars_.size(), modulus_);
    bool negative = false;
    if (accept('-')) negative = true;
    else accept('+');
    LaurentPoly t = term();
    r += negative ? -t : t;
    while (true) {
      if (accept('+')) r += term();
      else if (accept('-')) r -= term();
      else break;
    }
    return r;
  }

  LaurentPoly term() {
    LaurentPoly r = factor();
    while (accept('*')) r = r * factor();
    return r;
  }

  mpz_class integer() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected integer", start);
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  std::int64_t signed_integer() {
    skip();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    const std::size_t start = pos_;
    mpz_class v = integer();
    if (!v.fits_slong_p()) throw ParseError("exponent out of range", start);
    return negative ? -v.get_si() : v.get_si();
  }

  LaurentPoly factor() {
    skip();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      LaurentPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      if (accept('^')) {
        const std::size_t at = pos_;
        const std::int64_t k = signed_integer();
        if (k < 0) throw ParseError("negative power of a parenthesized expression", at);
        inner = pow(inner, static_cast<unsigned>(k));
      }
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) return LaurentPoly::constant(vars_.size(), integer(), modulus_);
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) throw ParseError("unknown variable '" + name + "'", start);
      ExpVec e(vars_.size(), 0);
      e[static_cast<std::size_t>(it - vars_.begin())] = accept('^') ? signed_integer() : 1;
      return LaurentPoly::monomial(e, 1, modulus_);
    }
    throw ParseError("unexpected character '" + std::string(1, ch) + "'", pos_);
  }

  std::string_view text_;
  const VarNames& vars_;
  const mpz_class& modulus_;
  std::size_t pos_ = 0;
};

}  // namespace

LaurentPoly parse(std::string_view text, const VarNames& vars, const mpz_class& modulus) {
  return Parser(text, vars, modulus).run();
}

std::string serialize(const LaurentPoly& f, const VarNames& vars) {
  if (vars.size() != f.nvars()) throw ContextError("variable name count does not match polynomial");
  if (f.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    const bool negative = c < 0;
    const mpz_class mag = abs(c);
    if (first) out << (negative ? "-" : "");
    else out << (negative ? " - " : " + ");
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars[i];
      if (e[i] != 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) out << mag.get_str();
    else if (mag == 1) out << mono;
    else out << mag.get_str() << "*" << mono;
  }
  return out.str();
}

std::string to_string(const LaurentPoly& f) { return serialize(f, default_var_names(f.nvars())); }

}  // namespace blab
