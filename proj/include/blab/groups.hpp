#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "blab/laurent.hpp"
#include "blab/quotient.hpp"

namespace blab {

enum class GroupFamily { Lamplighter, GkP, BaumslagTF };

// Normal form of the matrix [[x^exps, upper], [0, 1]].
//
// Multiplication composes the affine maps v -> x^exps * v + upper, so
//   upper(ab) = upper(a) + x^exps(a) * upper(b),  exps(ab) = exps(a) + exps(b).
// For BaumslagTF the monomial basis is Y1, 1+Y1, Y2, 1+Y2.
struct GroupElem {
  RingElem upper;
  ExpVec exps;
};

struct Generator {
  std::string name;
  GroupElem elem;
};

enum class HomKind { Pi, Phi, PhiPrime };

struct Homomorphism {
  HomKind kind = HomKind::Pi;
  std::size_t target_rank = 0;
};

std::string to_string(HomKind kind);
HomKind parse_hom_kind(std::string_view name);

class GroupSpec {
 public:
  // Z^d wreath lamps: lamp ring Z (modulus 0) or Z/mZ.
  static GroupSpec lamplighter(std::size_t d, const mpz_class& lamp_modulus);
  // G_k over Z[x^±]/(relation) (SinglePoly) or the free ring (FreeLaurent).
  static GroupSpec gkp(QuotientRing ring, VarNames vars);
  static GroupSpec baumslag_tf();

  GroupFamily family() const { return family_; }
  const QuotientRing& ring() const { return ring_; }
  const VarNames& var_names() const { return vars_; }
  // Length of exponent vectors.
  std::size_t rank() const { return ring_.unit_rank(); }
  const mpz_class& lamp_modulus() const { return ring_.modulus(); }

  // Named generators, without inverses: delta first, then the diagonal generators.
  const std::vector<Generator>& generators() const { return generators_; }
  // Generator by name or alias; throws Error for an unknown name.
  const GroupElem& generator(std::string_view name) const;
  bool has_generator(std::string_view name) const;
  void add_alias(const std::string& alias, const std::string& target);
  const std::map<std::string, std::string, std::less<>>& aliases() const { return aliases_; }
  // Generators followed by their inverses, named "g" and "g^-1".
  std::vector<Generator> symmetric_generators() const;

  GroupElem identity() const;
  GroupElem multiply(const GroupElem& a, const GroupElem& b) const;
  GroupElem inverse(const GroupElem& a) const;
  GroupElem power(const GroupElem& a, std::int64_t n) const;
  // h * g * h^-1.
  GroupElem conjugate(const GroupElem& h, const GroupElem& g) const;
  bool equals(const GroupElem& a, const GroupElem& b) const;
  bool is_identity(const GroupElem& a) const { return equals(a, identity()); }
  // Elements of the form [[1, u], [0, 1]].
  bool is_unipotent(const GroupElem& a) const { return exp_is_zero(a.exps); }

  // Exact byte key of the normal form; available when the ring has canonical forms.
  bool has_exact_keys() const { return ring_.has_canonical_form(); }
  std::string exact_key(const GroupElem& a) const;

  // Homomorphism of the requested kind for this family; throws Error when it is
  // not defined here (phi and phi_prime exist only for BaumslagTF).
  Homomorphism homomorphism(HomKind kind) const;
  // pi for every family.
  Homomorphism default_projection() const { return homomorphism(HomKind::Pi); }

  // Human-readable upper entry, e.g. "x1^2 - 1" or "(y1 + 1)/(y1^2)".
  std::string upper_to_string(const GroupElem& a) const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b) {
    return a.family_ == b.family_ && a.ring_ == b.ring_ && a.vars_ == b.vars_;
  }

 private:
  GroupSpec() = default;
  void check(const GroupElem& a) const;
  GroupElem make(RingElem upper, ExpVec exps) const;
  void build_generators(const std::vector<std::string>& diagonal_names);

  GroupFamily family_ = GroupFamily::GkP;
  QuotientRing ring_ = QuotientRing::free_laurent(1);
  VarNames vars_;
  std::vector<Generator> generators_;
  std::map<std::string, std::string, std::less<>> aliases_;
};

// Linear image of the diagonal exponents. pi keeps all exponents for lamplighters
// and G_k, and (alpha1, alpha3) for BaumslagTF; phi keeps (alpha1, alpha2, alpha3);
// phi_prime keeps all four.
std::vector<std::int64_t> project(const GroupSpec& spec, const Homomorphism& h, const GroupElem& a);

// One letter of a word: a generator name with an optional "^-1"; "^k" for integer k
// is accepted as a power.
struct Letter {
  std::string name;
  std::int64_t power = 1;
};
using Word = std::vector<Letter>;

// Letters separated by whitespace or '*', e.g. "M_x1 delta M_x1^-1".
Word parse_word(std::string_view text);
std::string word_to_string(const Word& w);
Word inverse_word(const Word& w);
GroupElem word_to_elem(const GroupSpec& spec, const Word& word);
GroupElem word_to_elem(const GroupSpec& spec, std::string_view text);

// G_3(1 + x1 - x2) with aliases M_y1 -> M_x1, M_y1+1 -> M_x2, M_y2 -> M_x3.
GroupSpec restricted_baumslag_spec();

}  // namespace blab
