#include "blab/quotient.hpp"

#include <algorithm>
#include <random>

#include "blab/errors.hpp"

namespace blab {

namespace {

constexpr int kRootRetries = 64;

std::mt19937_64 coordinate_rng(std::uint64_t seed, std::size_t coordinate) {
  return std::mt19937_64(splitmix64(seed ^ (0xD1B54A32D192ED03ULL * (coordinate + 1))));
}

std::uint64_t random_nonzero(std::mt19937_64& rng, std::uint64_t q) {
  return std::uniform_int_distribution<std::uint64_t>(1, q - 1)(rng);
}

}  // namespace

QuotientRing QuotientRing::free_laurent(std::size_t k, const mpz_class& modulus) {
  QuotientRing r;
  r.kind_ = RingKind::FreeLaurent;
  r.nvars_ = k;
  r.modulus_ = modulus;
  r.relation_ = LaurentPoly(k, modulus);
  r.canonical_ = true;
  return r;
}

QuotientRing QuotientRing::single_poly(const LaurentPoly& p, std::optional<std::size_t> pivot) {
  if (p.modulus() != 0) throw DomainError("relations are supported over the integers only");
  if (p.is_zero()) throw DomainError("relation must be nonzero");
  if (content_and_primitive(p).content != 1) throw DomainError("relation must be primitive");
  QuotientRing r;
  r.kind_ = RingKind::SinglePoly;
  r.nvars_ = p.nvars();
  r.relation_ = strip_monomial(p).second;
  if (r.relation_.is_constant()) throw DomainError("relation is a unit; the quotient ring is zero");
  r.pivot_ = pivot ? *pivot : choose_pivot(r.relation_);
  if (r.pivot_ >= r.nvars_) throw ContextError("pivot index out of range");
  if (max_degree_in(r.relation_, r.pivot_) == min_degree_in(r.relation_, r.pivot_))
    throw DomainError("relation has no positive degree in the pivot");
  const bool linear = max_degree_in(r.relation_, r.pivot_) == 1 && min_degree_in(r.relation_, r.pivot_) == 0;
  if (linear) {
    r.coeff_a_ = coefficient_in(r.relation_, r.pivot_, 1);
    r.coeff_b_ = coefficient_in(r.relation_, r.pivot_, 0);
  }
  r.canonical_ = linear && r.coeff_a_.is_unit_monomial() && !r.coeff_b_.is_zero();
  if (r.canonical_) r.den_factors_ = {r.coeff_b_};
  return r;
}

QuotientRing QuotientRing::baumslag() {
  QuotientRing r;
  r.kind_ = RingKind::BaumslagLocalization;
  r.nvars_ = 2;
  r.relation_ = LaurentPoly(2);
  r.canonical_ = true;
  const VarNames y{"y1", "y2"};
  r.den_factors_ = {parse("y1", y), parse("1 + y1", y), parse("y2", y), parse("1 + y2", y)};
  return r;
}

void QuotientRing::check(const RingElem& a) const {
  if (a.num.nvars() != nvars_ || a.num.modulus() != modulus_)
    throw ContextError("ring element does not belong to this ring");
  const std::size_t dens = den_factors_.size();
  if (!a.den.empty() && a.den.size() != dens) throw ContextError("ring element has the wrong representation");
}

RingElem QuotientRing::zero() const { return normalize(RingElem{LaurentPoly(nvars_, modulus_), {}}); }

RingElem QuotientRing::one() const { return from_poly(LaurentPoly::constant(nvars_, 1, modulus_)); }

RingElem QuotientRing::from_poly(const LaurentPoly& f) const {
  RingElem a{f, {}};
  check(a);
  return normalize(a);
}

LaurentPoly QuotientRing::den_power(const std::vector<std::int64_t>& e) const {
  LaurentPoly r = LaurentPoly::constant(nvars_, 1, modulus_);
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] < 0) throw DomainError("negative denominator exponent");
    if (e[i] == 0) continue;
    if (den_factors_[i].is_monomial()) {
      r = r * LaurentPoly::monomial(exp_scale(den_factors_[i].leading_term().first, e[i]),
                                    mpz_class(den_factors_[i].leading_term().second) == -1 && (e[i] % 2) ? -1 : 1);
    } else {
      r = r * pow(den_factors_[i], static_cast<unsigned>(e[i]));
    }
  }
  return r;
}

RingElem QuotientRing::reduce_fraction(LaurentPoly num, std::vector<std::int64_t> den) const {
  if (num.is_zero()) return RingElem{std::move(num), std::vector<std::int64_t>(den_factors_.size(), 0)};
  if (kind_ == RingKind::BaumslagLocalization) {
    // Move negative Y exponents into the denominator, then cancel common factors.
    for (std::size_t v = 0; v < 2; ++v) {
      const std::int64_t m = min_degree_in(num, v);
      if (m >= 0) continue;
      ExpVec s(2, 0);
      s[v] = -m;
      den[2 * v] -= m;
      num = shift(num, s);
    }
    for (std::size_t v = 0; v < 2; ++v) {
      const std::size_t y = 2 * v, y1 = 2 * v + 1;
      const std::int64_t k = std::min(den[y], min_degree_in(num, v));
      if (k > 0) {
        ExpVec s(2, 0);
        s[v] = -k;
        num = shift(num, s);
        den[y] -= k;
      }
      while (den[y1] > 0) {
        auto q = exact_quotient(num, den_factors_[y1]);
        if (!q) break;
        num = std::move(*q);
        --den[y1];
      }
    }
    return RingElem{std::move(num), std::move(den)};
  }
  while (den[0] > 0) {
    auto q = exact_quotient(num, coeff_b_);
    if (!q) break;
    num = std::move(*q);
    --den[0];
  }
  return RingElem{std::move(num), std::move(den)};
}

RingElem QuotientRing::to_fraction(const RingElem& a) const {
  check(a);
  if (!a.den.empty()) return a;
  if (kind_ == RingKind::BaumslagLocalization) return RingElem{a.num, {0, 0, 0, 0}};
  // SinglePoly with p = A * x + B, A = u * x^alpha: substitute x = -B / A.
  if (a.num.is_zero()) return RingElem{a.num, {0}};
  const std::int64_t jmin = min_degree_in(a.num, pivot_), jmax = max_degree_in(a.num, pivot_);
  const std::int64_t E = std::max<std::int64_t>(0, -jmin);
  const auto& [alpha, u] = coeff_a_.leading_term();
  std::vector<LaurentPoly> b_pow{LaurentPoly::constant(nvars_, 1)};
  while (static_cast<std::int64_t>(b_pow.size()) <= jmax + E) b_pow.push_back(b_pow.back() * coeff_b_);
  LaurentPoly num(nvars_);
  for (std::int64_t j = jmin; j <= jmax; ++j) {
    LaurentPoly c = coefficient_in(a.num, pivot_, j);
    if (c.is_zero()) continue;
    // (-1)^j * A^{-j} = (-u)^j * x^{-j * alpha}; u = +-1 so u^{-1} = u.
    const bool sign_flip = (j % 2 != 0) && u > 0;
    LaurentPoly term = shift(c, exp_scale(alpha, -j)) * b_pow[static_cast<std::size_t>(j + E)];
    num += sign_flip ? -term : term;
  }
  return reduce_fraction(std::move(num), {E});
}

RingElem QuotientRing::canonicalize(const RingElem& a) const {
  check(a);
  if (!canonical_) throw DomainError("this ring has no canonical forms; use fingerprints and eq_mod");
  if (kind_ == RingKind::FreeLaurent) return a;
  RingElem f = to_fraction(a);
  return reduce_fraction(f.num, f.den);
}

RingElem QuotientRing::add(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  if (kind_ == RingKind::FreeLaurent || !canonical_) return RingElem{a.num + b.num, {}};
  RingElem fa = to_fraction(a), fb = to_fraction(b);
  std::vector<std::int64_t> d(fa.den.size());
  std::vector<std::int64_t> da(d.size()), db(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = std::max(fa.den[i], fb.den[i]);
    da[i] = d[i] - fa.den[i];
    db[i] = d[i] - fb.den[i];
  }
  LaurentPoly num = fa.num * den_power(da) + fb.num * den_power(db);
  return reduce_fraction(std::move(num), std::move(d));
}

RingElem QuotientRing::neg(const RingElem& a) const {
  check(a);
  return RingElem{-a.num, a.den};
}

RingElem QuotientRing::sub(const RingElem& a, const RingElem& b) const { return add(a, neg(b)); }

RingElem QuotientRing::mul(const RingElem& a, const RingElem& b) const {
  check(a);
  check(b);
  if (kind_ == RingKind::FreeLaurent || !canonical_) return RingElem{a.num * b.num, {}};
  RingElem fa = to_fraction(a), fb = to_fraction(b);
  std::vector<std::int64_t> d(fa.den.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = fa.den[i] + fb.den[i];
  return reduce_fraction(fa.num * fb.num, std::move(d));
}

RingElem QuotientRing::unit(const ExpVec& exps) const {
  if (exps.size() != unit_rank()) throw ContextError("unit exponent vector has the wrong length");
  if (kind_ == RingKind::BaumslagLocalization) {
    std::vector<std::int64_t> pos(4), negp(4);
    for (std::size_t i = 0; i < 4; ++i) {
      pos[i] = std::max<std::int64_t>(0, exps[i]);
      negp[i] = std::max<std::int64_t>(0, -exps[i]);
    }
    return RingElem{den_power(pos), negp};
  }
  RingElem m{LaurentPoly::monomial(exps, 1, modulus_), {}};
  return normalize(m);
}

RingElem QuotientRing::mul_unit(const ExpVec& exps, const RingElem& a) const {
  if (kind_ == RingKind::FreeLaurent || (kind_ == RingKind::SinglePoly && !canonical_)) {
    check(a);
    return RingElem{shift(a.num, exps), {}};
  }
  return mul(unit(exps), a);
}

bool QuotientRing::is_zero(const RingElem& a) const {
  check(a);
  if (a.num.is_zero()) return true;
  if (kind_ == RingKind::SinglePoly && a.den.empty()) return divides(relation_, a.num);
  return false;
}

bool QuotientRing::eq_mod(const RingElem& a, const RingElem& b) const { return is_zero(sub(a, b)); }

std::string QuotientRing::canonical_key(const RingElem& a) const {
  RingElem c = canonicalize(a);
  std::string key = to_string(c.num);
  for (std::int64_t e : c.den) key += "/" + std::to_string(e);
  return key;
}

Fingerprint QuotientRing::fingerprint(const RingElem& a, std::uint64_t seed) const {
  return fingerprint_context(seed).fingerprint(a);
}

FingerprintContext::FingerprintContext(const QuotientRing& ring, std::uint64_t seed)
    : seed_(seed), kind_(ring.kind()) {
  if (!ring.supports_fingerprint()) throw DomainError("fingerprints need integer coefficients");
  const std::uint64_t q = fingerprint_prime(seed);
  const PrimeField base(q);
  for (std::size_t c = 0; c < kCoordinates; ++c) {
    std::mt19937_64 rng = coordinate_rng(seed, c);
    FingerprintPoint pt;
    if (ring.kind() == RingKind::FreeLaurent) {
      pt.field = FiniteField(q);
      for (std::size_t v = 0; v < ring.nvars(); ++v) pt.vars.push_back(pt.field.embed(random_nonzero(rng, q)));
    } else if (ring.kind() == RingKind::BaumslagLocalization) {
      pt.field = FiniteField(q);
      for (std::size_t v = 0; v < 2; ++v) {
        std::uint64_t y = 0;
        do y = random_nonzero(rng, q);
        while (y == q - 1);
        pt.vars.push_back(pt.field.embed(y));
      }
    } else {
      const LaurentPoly& p = ring.relation();
      const std::size_t piv = ring.pivot();
      const std::int64_t D = max_degree_in(p, piv);
      bool found = false;
      for (int attempt = 0; attempt < kRootRetries && !found; ++attempt) {
        FiniteField fq(q);
        std::vector<FiniteField::Elem> sample;
        for (std::size_t v = 0; v < ring.nvars(); ++v) sample.push_back(fq.embed(random_nonzero(rng, q)));
        FqPoly univariate(static_cast<std::size_t>(D + 1), 0);
        for (std::int64_t j = 0; j <= D; ++j)
          univariate[static_cast<std::size_t>(j)] = blab::evaluate(coefficient_in(p, piv, j), fq, sample)[0];
        if (univariate.back() == 0) continue;
        auto h = min_degree_irreducible_factor(base, univariate, static_cast<int>(D), rng);
        if (!h) continue;
        pt.field = FiniteField(q, *h);
        for (std::size_t v = 0; v < ring.nvars(); ++v)
          pt.vars.push_back(v == piv ? pt.field.generator() : pt.field.embed(sample[v][0]));
        found = true;
      }
      if (!found) throw DomainError("no root of the relation found within the retry budget");
    }
    for (const auto& f : ring.den_factors()) pt.den_factors.push_back(blab::evaluate(f, pt.field, pt.vars));
    pt.units = ring.kind() == RingKind::BaumslagLocalization ? pt.den_factors : pt.vars;
    for (const auto& u : pt.units) pt.unit_inverses.push_back(pt.field.inv(u));
    points_.push_back(std::move(pt));
  }
}

FiniteField::Elem FingerprintContext::evaluate(const RingElem& a, std::size_t coordinate) const {
  const FingerprintPoint& pt = points_.at(coordinate);
  FiniteField::Elem v = blab::evaluate(a.num, pt.field, pt.vars);
  for (std::size_t i = 0; i < a.den.size(); ++i)
    if (a.den[i] != 0) v = pt.field.mul(v, pt.field.pow(pt.den_factors[i], -a.den[i]));
  return v;
}

FiniteField::Elem FingerprintContext::unit_value(const ExpVec& exps, std::size_t coordinate) const {
  const FingerprintPoint& pt = points_.at(coordinate);
  if (exps.size() != pt.units.size()) throw ContextError("unit exponent vector has the wrong length");
  FiniteField::Elem v = pt.field.one();
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 0) v = pt.field.mul(v, pt.field.pow(pt.units[i], exps[i]));
    else if (exps[i] < 0) v = pt.field.mul(v, pt.field.pow(pt.unit_inverses[i], -exps[i]));
  }
  return v;
}

Fingerprint FingerprintContext::fingerprint(const RingElem& a) const {
  Fingerprint fp;
  fp.seed = seed_;
  for (std::size_t c = 0; c < points_.size(); ++c) {
    FiniteField::Elem v = evaluate(a, c);
    fp.values.insert(fp.values.end(), v.begin(), v.end());
  }
  return fp;
}

}  // namespace blab
