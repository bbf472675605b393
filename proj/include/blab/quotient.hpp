#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blab/finite_field.hpp"
#include "blab/laurent.hpp"

namespace blab {

enum class RingKind { FreeLaurent, SinglePoly, BaumslagLocalization };

// Element of a QuotientRing.
//  * FreeLaurent and raw SinglePoly elements: `num` only, `den` empty.
//  * Canonical SinglePoly elements: num / B^den[0], where B is the pivot-free part
//    of the relation (see QuotientRing) and num does not involve the pivot.
//  * Baumslag elements: num / (Y1^a (1+Y1)^b Y2^c (1+Y2)^d) with den = {a,b,c,d}.
struct RingElem {
  LaurentPoly num;
  std::vector<std::int64_t> den;
};

struct Fingerprint {
  std::vector<std::uint64_t> values;
  std::uint64_t seed = 0;
  friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
    return a.seed == b.seed && a.values == b.values;
  }
};

// One evaluation point on the variety of the relation, in a finite field.
struct FingerprintPoint {
  FiniteField field;
  std::vector<FiniteField::Elem> vars;   // values of the numerator variables
  std::vector<FiniteField::Elem> units;  // values of the unit basis (M generators)
  std::vector<FiniteField::Elem> unit_inverses;
  std::vector<FiniteField::Elem> den_factors;  // B, or Y1, 1+Y1, Y2, 1+Y2
};

class QuotientRing;

// Evaluation homomorphisms from a ring into finite fields, fixed by a seed.
class FingerprintContext {
 public:
  static constexpr std::size_t kCoordinates = 2;

  FingerprintContext(const QuotientRing& ring, std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }
  const std::vector<FingerprintPoint>& points() const { return points_; }

  FiniteField::Elem evaluate(const RingElem& a, std::size_t coordinate) const;
  // Value of the unit with exponent vector `exps` at a coordinate.
  FiniteField::Elem unit_value(const ExpVec& exps, std::size_t coordinate) const;
  Fingerprint fingerprint(const RingElem& a) const;

 private:
  std::uint64_t seed_;
  RingKind kind_;
  std::vector<FingerprintPoint> points_;
};

class QuotientRing {
 public:
  static QuotientRing free_laurent(std::size_t k, const mpz_class& modulus = 0);
  // Z[x^±]/(p). The pivot defaults to the one used by divides(). p must be
  // primitive with positive degree in the pivot; irreducibility is the caller's claim.
  static QuotientRing single_poly(const LaurentPoly& p, std::optional<std::size_t> pivot = std::nullopt);
  static QuotientRing baumslag();

  RingKind kind() const { return kind_; }
  // Number of variables of numerators.
  std::size_t nvars() const { return nvars_; }
  // Length of exponent vectors accepted by unit().
  std::size_t unit_rank() const { return kind_ == RingKind::BaumslagLocalization ? 4 : nvars_; }
  const mpz_class& modulus() const { return modulus_; }
  const LaurentPoly& relation() const { return relation_; }
  std::size_t pivot() const { return pivot_; }
  bool has_canonical_form() const { return canonical_; }
  bool supports_fingerprint() const { return modulus_ == 0; }

  RingElem zero() const;
  RingElem one() const;
  RingElem from_poly(const LaurentPoly& f) const;
  // The unit x^exps; in the Baumslag ring the basis is Y1, 1+Y1, Y2, 1+Y2.
  RingElem unit(const ExpVec& exps) const;

  RingElem add(const RingElem& a, const RingElem& b) const;
  RingElem sub(const RingElem& a, const RingElem& b) const;
  RingElem neg(const RingElem& a) const;
  RingElem mul(const RingElem& a, const RingElem& b) const;
  RingElem mul_unit(const ExpVec& exps, const RingElem& a) const;

  // Unique reduced representative; throws DomainError for rings without one.
  RingElem canonicalize(const RingElem& a) const;
  // Canonical form when available, the element itself otherwise.
  RingElem normalize(const RingElem& a) const { return canonical_ ? canonicalize(a) : a; }
  bool is_zero(const RingElem& a) const;
  bool eq_mod(const RingElem& a, const RingElem& b) const;
  // Byte string identifying the canonical form; requires has_canonical_form().
  std::string canonical_key(const RingElem& a) const;

  Fingerprint fingerprint(const RingElem& a, std::uint64_t seed) const;
  FingerprintContext fingerprint_context(std::uint64_t seed) const { return FingerprintContext(*this, seed); }

  // Pivot-free parts of a canonical SinglePoly relation p ~ A * pivot + B.
  const LaurentPoly& pivot_coefficient() const { return coeff_a_; }
  const LaurentPoly& pivot_free_part() const { return coeff_b_; }
  // Denominator factors: {B} for SinglePoly, {Y1, 1+Y1, Y2, 1+Y2} for Baumslag.
  const std::vector<LaurentPoly>& den_factors() const { return den_factors_; }

  friend bool operator==(const QuotientRing& a, const QuotientRing& b) {
    return a.kind_ == b.kind_ && a.nvars_ == b.nvars_ && a.modulus_ == b.modulus_ && a.relation_ == b.relation_ &&
           a.pivot_ == b.pivot_;
  }

 private:
  QuotientRing() = default;
  void check(const RingElem& a) const;
  RingElem reduce_fraction(LaurentPoly num, std::vector<std::int64_t> den) const;
  LaurentPoly den_power(const std::vector<std::int64_t>& e) const;
  RingElem to_fraction(const RingElem& a) const;

  RingKind kind_ = RingKind::FreeLaurent;
  std::size_t nvars_ = 0;
  mpz_class modulus_ = 0;
  LaurentPoly relation_;
  std::size_t pivot_ = 0;
  bool canonical_ = true;
  LaurentPoly coeff_a_, coeff_b_;
  std::vector<LaurentPoly> den_factors_;
};

}  // namespace blab
