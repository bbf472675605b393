#include "blab/evaluation.hpp"

#include <cstring>

#include "blab/errors.hpp"

namespace blab {

namespace {

void append_words(std::string& out, const std::uint64_t* data, std::size_t n) {
  const std::size_t old = out.size();
  out.resize(old + n * sizeof(std::uint64_t));
  std::memcpy(out.data() + old, data, n * sizeof(std::uint64_t));
}

void append_exps(std::string& out, const ExpVec& exps) {
  const std::size_t old = out.size();
  out.resize(old + exps.size() * sizeof(std::int64_t));
  std::memcpy(out.data() + old, exps.data(), exps.size() * sizeof(std::int64_t));
}

}  // namespace

AffineEvaluator::AffineEvaluator(const GroupSpec& spec, std::uint64_t seed) : ctx_(spec.ring(), seed) {}

Affine AffineEvaluator::identity() const {
  Affine a;
  for (std::size_t c = 0; c < a.u.size(); ++c) {
    a.u[c] = ctx_.points()[c].field.zero();
    a.m[c] = ctx_.points()[c].field.one();
  }
  return a;
}

Affine AffineEvaluator::image(const GroupElem& g) const {
  Affine a;
  for (std::size_t c = 0; c < a.u.size(); ++c) {
    a.u[c] = ctx_.evaluate(g.upper, c);
    a.m[c] = ctx_.unit_value(g.exps, c);
  }
  return a;
}

Affine AffineEvaluator::compose(const Affine& a, const Affine& b) const {
  Affine r = a;
  compose_into(r, b);
  return r;
}

void AffineEvaluator::compose_into(Affine& a, const Affine& b) const {
  for (std::size_t c = 0; c < a.u.size(); ++c) {
    const FiniteField& f = ctx_.points()[c].field;
    f.add_into(a.u[c], f.mul(a.m[c], b.u[c]));
    a.m[c] = f.mul(a.m[c], b.m[c]);
  }
}

Affine AffineEvaluator::inverse(const Affine& a) const {
  Affine r;
  for (std::size_t c = 0; c < a.u.size(); ++c) {
    const FiniteField& f = ctx_.points()[c].field;
    r.m[c] = f.inv(a.m[c]);
    r.u[c] = f.neg(f.mul(r.m[c], a.u[c]));
  }
  return r;
}

std::string AffineEvaluator::key(const ExpVec& exps, const Affine& a) const {
  std::string out;
  append_exps(out, exps);
  for (const auto& u : a.u) append_words(out, u.data(), u.size());
  return out;
}

std::array<std::uint64_t, 2> AffineEvaluator::hash(const ExpVec& exps, const Affine& a) const {
  std::uint64_t h1 = 0x243F6A8885A308D3ULL, h2 = 0x13198A2E03707344ULL;
  auto mix = [&](std::uint64_t w) {
    h1 = splitmix64(h1 ^ w);
    h2 = splitmix64(h2 + (w * 0x9E3779B97F4A7C15ULL) + (h1 << 1));
  };
  for (std::int64_t e : exps) mix(static_cast<std::uint64_t>(e));
  for (const auto& u : a.u)
    for (std::uint64_t w : u) mix(w);
  return {h1, h2};
}

ElementKeyer::ElementKeyer(const GroupSpec& spec, std::uint64_t seed)
    : spec_(&spec), exact_(!spec.ring().supports_fingerprint()) {
  if (exact_ && !spec.has_exact_keys()) throw DomainError("group has neither canonical forms nor fingerprints");
  if (!exact_) ctx_.emplace_back(spec.ring(), seed);
}

std::string ElementKeyer::key(const GroupElem& g) const {
  if (exact_) return spec_->exact_key(g);
  std::string out;
  append_exps(out, g.exps);
  Fingerprint fp = ctx_.front().fingerprint(g.upper);
  append_words(out, fp.values.data(), fp.values.size());
  return out;
}

}  // namespace blab
