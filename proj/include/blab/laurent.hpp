#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blab/finite_field.hpp"

namespace blab {

// Exponent vector of a Laurent monomial; compared lexicographically.
using ExpVec = std::vector<std::int64_t>;

ExpVec exp_add(const ExpVec& a, const ExpVec& b);
ExpVec exp_sub(const ExpVec& a, const ExpVec& b);
ExpVec exp_neg(const ExpVec& a);
ExpVec exp_scale(const ExpVec& a, std::int64_t n);
bool exp_is_zero(const ExpVec& a);

// Sparse Laurent polynomial in a fixed number of variables with coefficients in
// Z (modulus 0) or Z/mZ. Terms are kept in descending lexicographic order and no
// stored coefficient is zero; for Z/mZ coefficients are kept in [0, m).
class LaurentPoly {
 public:
  using TermMap = std::map<ExpVec, mpz_class, std::greater<ExpVec>>;

  LaurentPoly() = default;
  explicit LaurentPoly(std::size_t nvars, mpz_class modulus = 0);

  static LaurentPoly constant(std::size_t nvars, const mpz_class& c, const mpz_class& modulus = 0);
  static LaurentPoly monomial(const ExpVec& e, const mpz_class& c = 1, const mpz_class& modulus = 0);
  static LaurentPoly variable(std::size_t nvars, std::size_t index, const mpz_class& modulus = 0);

  std::size_t nvars() const { return nvars_; }
  const mpz_class& modulus() const { return modulus_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }
  mpz_class coeff(const ExpVec& e) const;

  // Accumulates c * x^e into the polynomial.
  void add_term(const ExpVec& e, const mpz_class& c);

  bool is_constant() const;
  // True when the polynomial is c * x^e with c = +1 or -1.
  bool is_unit_monomial() const;
  bool is_monomial() const { return terms_.size() == 1; }

  // Lexicographically largest and smallest terms; polynomial must be nonzero.
  const std::pair<const ExpVec, mpz_class>& leading_term() const;
  const std::pair<const ExpVec, mpz_class>& trailing_term() const;

  LaurentPoly& operator+=(const LaurentPoly& b);
  LaurentPoly& operator-=(const LaurentPoly& b);

  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.nvars_ == b.nvars_ && a.modulus_ == b.modulus_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

 private:
  void normalize_coeff(mpz_class& c) const;

  std::size_t nvars_ = 0;
  mpz_class modulus_ = 0;
  TermMap terms_;
};

LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly operator-(const LaurentPoly& a);
LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly scale(const LaurentPoly& a, const mpz_class& c);
// Multiplies by the monomial x^e.
LaurentPoly shift(const LaurentPoly& a, const ExpVec& e);
LaurentPoly pow(const LaurentPoly& a, unsigned k);

// Replaces every exponent vector e by N*e, i.e. x_i -> x_i^N.
LaurentPoly substitute_power(const LaurentPoly& f, std::int64_t N);

// Replaces x_i by images[i]. Images for variables occurring with a negative
// exponent must be invertible, i.e. (plus or minus) monomials.
LaurentPoly compose(const LaurentPoly& f, const std::vector<LaurentPoly>& images);

bool is_flat(const LaurentPoly& f);

std::int64_t max_degree_in(const LaurentPoly& f, std::size_t var);
std::int64_t min_degree_in(const LaurentPoly& f, std::size_t var);
// Coefficient of x_var^j, as a polynomial in the remaining variables (x_var absent).
LaurentPoly coefficient_in(const LaurentPoly& f, std::size_t var, std::int64_t j);

// Componentwise minimum of the exponent vectors of a nonzero polynomial.
ExpVec min_exponents(const LaurentPoly& f);
// f = x^shift * stripped with stripped a polynomial not divisible by any variable.
std::pair<ExpVec, LaurentPoly> strip_monomial(const LaurentPoly& f);

struct PseudoDivision {
  LaurentPoly quotient;
  LaurentPoly remainder;
  unsigned multiplier_exponent = 0;
};

// lc^e * f = q * p + r where lc is the leading coefficient of p in the pivot and
// the top pivot exponent of r is below that of p. lc is only multiplied in when
// the current leading coefficient of the remainder is not an exact multiple.
PseudoDivision pseudo_divide(const LaurentPoly& f, const LaurentPoly& p, std::size_t pivot);

// Pivot used for divisibility: the variable of smallest positive degree span in p,
// lowest index on ties. Requires p to involve at least one variable.
std::size_t choose_pivot(const LaurentPoly& p);

// Returns q with f = g * q in the Laurent ring, or nullopt when none exists.
// Over Z/mZ the modulus must be prime.
std::optional<LaurentPoly> exact_quotient(const LaurentPoly& f, const LaurentPoly& g);

bool divides(const LaurentPoly& p, const LaurentPoly& f);

struct ContentSplit {
  mpz_class content;
  LaurentPoly primitive;
};

ContentSplit content_and_primitive(const LaurentPoly& f);

// Evaluates f at a point of a finite field; coordinates occurring with negative
// exponents must be nonzero. Coefficients over Z are reduced into the field.
FiniteField::Elem evaluate(const LaurentPoly& f, const FiniteField& field,
                           const std::vector<FiniteField::Elem>& point);

using VarNames = std::vector<std::string>;

VarNames default_var_names(std::size_t k, const std::string& prefix = "x");
// Variable names x1..xk (or y1..yk) sufficient to parse `text`, k the largest index seen.
VarNames infer_var_names(std::string_view text);

LaurentPoly parse(std::string_view text, const VarNames& vars, const mpz_class& modulus = 0);
std::string serialize(const LaurentPoly& f, const VarNames& vars);
// Serialization with default names x1..xk.
std::string to_string(const LaurentPoly& f);

}  // namespace blab
