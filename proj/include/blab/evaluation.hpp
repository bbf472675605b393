#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "blab/groups.hpp"
#include "blab/quotient.hpp"

namespace blab {

// Image of [[m, u], [0, 1]] under the evaluation maps of a FingerprintContext,
// one (u, m) pair per coordinate.
struct Affine {
  std::array<FiniteField::Elem, FingerprintContext::kCoordinates> u;
  std::array<FiniteField::Elem, FingerprintContext::kCoordinates> m;
};

// Evaluates group elements of a family with integer coefficients into affine maps
// over finite fields. Composition is (u1, m1)(u2, m2) = (u1 + m1 u2, m1 m2), which
// costs a constant number of field operations independent of the element size.
class AffineEvaluator {
 public:
  AffineEvaluator(const GroupSpec& spec, std::uint64_t seed);

  const FingerprintContext& context() const { return ctx_; }
  std::uint64_t seed() const { return ctx_.seed(); }

  Affine identity() const;
  Affine image(const GroupElem& g) const;
  Affine compose(const Affine& a, const Affine& b) const;
  // a <- a * b.
  void compose_into(Affine& a, const Affine& b) const;
  Affine inverse(const Affine& a) const;

  // Key of an element from its exponents and affine image. Equal elements always
  // get equal keys; distinct ones collide with probability about deg / 2^120.
  std::string key(const ExpVec& exps, const Affine& a) const;
  // 128-bit hash of the same data, for large hash tables.
  std::array<std::uint64_t, 2> hash(const ExpVec& exps, const Affine& a) const;

 private:
  FingerprintContext ctx_;
};

// Keys for exact group elements: canonical forms when the family has no
// fingerprints (lamps mod m), otherwise exponents plus a fingerprint of the upper
// entry. `exact()` tells whether equal keys imply equal elements.
class ElementKeyer {
 public:
  ElementKeyer(const GroupSpec& spec, std::uint64_t seed);
  bool exact() const { return exact_; }
  std::string key(const GroupElem& g) const;

 private:
  const GroupSpec* spec_;
  bool exact_;
  std::vector<FingerprintContext> ctx_;
};

}  // namespace blab
