#include "blab/groups.hpp"

#include <cctype>
#include <charconv>

#include "blab/errors.hpp"

namespace blab {

std::string to_string(HomKind kind) {
  switch (kind) {
    case HomKind::Pi: return "pi";
    case HomKind::Phi: return "phi";
    case HomKind::PhiPrime: return "phi_prime";
  }
  return "pi";
}

HomKind parse_hom_kind(std::string_view name) {
  if (name == "pi") return HomKind::Pi;
  if (name == "phi") return HomKind::Phi;
  if (name == "phi_prime") return HomKind::PhiPrime;
  throw Error("unknown homomorphism '" + std::string(name) + "' (expected pi, phi or phi_prime)");
}

void GroupSpec::build_generators(const std::vector<std::string>& diagonal_names) {
  const std::size_t r = rank();
  generators_.clear();
  generators_.push_back({"delta", make(ring_.one(), ExpVec(r, 0))});
  for (std::size_t i = 0; i < diagonal_names.size(); ++i) {
    ExpVec e(r, 0);
    e[i] = 1;
    generators_.push_back({diagonal_names[i], make(ring_.zero(), e)});
  }
}

GroupSpec GroupSpec::lamplighter(std::size_t d, const mpz_class& lamp_modulus) {
  if (d == 0) throw DomainError("lamplighter base rank must be positive");
  if (lamp_modulus < 0 || lamp_modulus == 1) throw DomainError("lamp modulus must be 0 (integers) or at least 2");
  GroupSpec s;
  s.family_ = GroupFamily::Lamplighter;
  s.ring_ = QuotientRing::free_laurent(d, lamp_modulus);
  s.vars_ = default_var_names(d);
  std::vector<std::string> names;
  for (const auto& v : s.vars_) names.push_back("M_" + v);
  s.build_generators(names);
  return s;
}

GroupSpec GroupSpec::gkp(QuotientRing ring, VarNames vars) {
  if (ring.kind() == RingKind::BaumslagLocalization) throw DomainError("G_k needs a free or single-relation ring");
  if (vars.size() != ring.nvars()) throw ContextError("variable names do not match the ring");
  GroupSpec s;
  s.family_ = GroupFamily::GkP;
  s.ring_ = std::move(ring);
  s.vars_ = std::move(vars);
  std::vector<std::string> names;
  for (const auto& v : s.vars_) names.push_back("M_" + v);
  s.build_generators(names);
  return s;
}

GroupSpec GroupSpec::baumslag_tf() {
  GroupSpec s;
  s.family_ = GroupFamily::BaumslagTF;
  s.ring_ = QuotientRing::baumslag();
  s.vars_ = {"y1", "y2"};
  s.build_generators({"M_y1", "M_y1+1", "M_y2", "M_y2+1"});
  return s;
}

bool GroupSpec::has_generator(std::string_view name) const {
  if (aliases_.find(name) != aliases_.end()) return true;
  for (const auto& g : generators_)
    if (g.name == name) return true;
  return false;
}

const GroupElem& GroupSpec::generator(std::string_view name) const {
  if (auto it = aliases_.find(name); it != aliases_.end()) name = it->second;
  for (const auto& g : generators_)
    if (g.name == name) return g.elem;
  throw Error("unknown generator '" + std::string(name) + "'");
}

void GroupSpec::add_alias(const std::string& alias, const std::string& target) {
  for (const auto& g : generators_)
    if (g.name == alias) throw Error("alias '" + alias + "' shadows a generator");
  generator(target);
  aliases_[alias] = target;
}

std::vector<Generator> GroupSpec::symmetric_generators() const {
  std::vector<Generator> out = generators_;
  for (const auto& g : generators_) out.push_back({g.name + "^-1", inverse(g.elem)});
  return out;
}

void GroupSpec::check(const GroupElem& a) const {
  if (a.exps.size() != rank()) throw ContextError("group element does not belong to this group");
}

GroupElem GroupSpec::make(RingElem upper, ExpVec exps) const { return GroupElem{std::move(upper), std::move(exps)}; }

GroupElem GroupSpec::identity() const { return make(ring_.zero(), ExpVec(rank(), 0)); }

GroupElem GroupSpec::multiply(const GroupElem& a, const GroupElem& b) const {
  check(a);
  check(b);
  RingElem upper = ring_.add(a.upper, ring_.mul_unit(a.exps, b.upper));
  return make(ring_.normalize(upper), exp_add(a.exps, b.exps));
}

GroupElem GroupSpec::inverse(const GroupElem& a) const {
  check(a);
  ExpVec e = exp_neg(a.exps);
  RingElem upper = ring_.normalize(ring_.neg(ring_.mul_unit(e, a.upper)));
  return make(std::move(upper), std::move(e));
}

GroupElem GroupSpec::power(const GroupElem& a, std::int64_t n) const {
  GroupElem base = n < 0 ? inverse(a) : a;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  GroupElem acc = identity();
  while (k) {
    if (k & 1) acc = multiply(acc, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return acc;
}

GroupElem GroupSpec::conjugate(const GroupElem& h, const GroupElem& g) const {
  return multiply(multiply(h, g), inverse(h));
}

bool GroupSpec::equals(const GroupElem& a, const GroupElem& b) const {
  check(a);
  check(b);
  return a.exps == b.exps && ring_.eq_mod(a.upper, b.upper);
}

std::string GroupSpec::exact_key(const GroupElem& a) const {
  check(a);
  std::string key;
  for (std::int64_t e : a.exps) key += std::to_string(e) + ",";
  key += "|" + ring_.canonical_key(a.upper);
  return key;
}

Homomorphism GroupSpec::homomorphism(HomKind kind) const {
  if (family_ == GroupFamily::BaumslagTF) {
    switch (kind) {
      case HomKind::Pi: return {kind, 2};
      case HomKind::Phi: return {kind, 3};
      case HomKind::PhiPrime: return {kind, 4};
    }
  }
  if (kind != HomKind::Pi) throw Error(to_string(kind) + " is defined only for the Baumslag group");
  return {kind, rank()};
}

std::string GroupSpec::upper_to_string(const GroupElem& a) const {
  const std::string num = serialize(a.upper.num, vars_);
  bool has_den = false;
  for (std::int64_t e : a.upper.den) has_den |= e != 0;
  if (!has_den) return num;
  std::string den;
  for (std::size_t i = 0; i < a.upper.den.size(); ++i) {
    if (a.upper.den[i] == 0) continue;
    if (!den.empty()) den += "*";
    den += "(" + serialize(ring_.den_factors()[i], vars_) + ")";
    if (a.upper.den[i] != 1) den += "^" + std::to_string(a.upper.den[i]);
  }
  return "(" + num + ")/(" + den + ")";
}

std::vector<std::int64_t> project(const GroupSpec& spec, const Homomorphism& h, const GroupElem& a) {
  if (a.exps.size() != spec.rank()) throw ContextError("group element does not belong to this group");
  const Homomorphism expected = spec.homomorphism(h.kind);
  if (expected.target_rank != h.target_rank) throw ContextError("homomorphism does not match the group");
  if (spec.family() != GroupFamily::BaumslagTF) return a.exps;
  switch (h.kind) {
    case HomKind::Pi: return {a.exps[0], a.exps[2]};
    case HomKind::Phi: return {a.exps[0], a.exps[1], a.exps[2]};
    case HomKind::PhiPrime: return a.exps;
  }
  return a.exps;
}

Word parse_word(std::string_view text) {
  Word w;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*') {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '*') ++j;
    std::string_view tok = text.substr(i, j - i);
    Letter letter;
    if (auto caret = tok.rfind('^'); caret != std::string_view::npos) {
      std::string_view p = tok.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(p.data(), p.data() + p.size(), letter.power);
      if (ec != std::errc() || ptr != p.data() + p.size()) throw ParseError("bad exponent in word letter", caret + i + 1);
      tok = tok.substr(0, caret);
    }
    if (tok.empty()) throw ParseError("empty generator name", i);
    letter.name = std::string(tok);
    w.push_back(std::move(letter));
    i = j;
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (const auto& l : w) {
    if (!out.empty()) out += ' ';
    out += l.name;
    if (l.power != 1) out += "^" + std::to_string(l.power);
  }
  return out;
}

Word inverse_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l.power = -l.power;
  return out;
}

GroupElem word_to_elem(const GroupSpec& spec, const Word& word) {
  GroupElem acc = spec.identity();
  for (const auto& l : word) acc = spec.multiply(acc, spec.power(spec.generator(l.name), l.power));
  return acc;
}

GroupElem word_to_elem(const GroupSpec& spec, std::string_view text) { return word_to_elem(spec, parse_word(text)); }

GroupSpec restricted_baumslag_spec() {
  const VarNames vars = default_var_names(3);
  GroupSpec s = GroupSpec::gkp(QuotientRing::single_poly(parse("1 + x1 - x2", vars), 1), vars);
  s.add_alias("M_y1", "M_x1");
  s.add_alias("M_y1+1", "M_x2");
  s.add_alias("M_y2", "M_x3");
  return s;
}

}  // namespace blab
