#include <gtest/gtest.h>

#include <random>

#include "blab/errors.hpp"
#include "blab/evaluation.hpp"

using namespace blab;

namespace {

GroupElem random_elem(std::mt19937_64& rng, const GroupSpec& spec, int len) {
  auto gens = spec.symmetric_generators();
  GroupElem g = spec.identity();
  for (int i = 0; i < len; ++i) g = spec.multiply(g, gens[rng() % gens.size()].elem);
  return g;
}

}  // namespace

TEST(Evaluation, ImageIsAHomomorphism) {
  std::mt19937_64 rng(7);
  for (const GroupSpec& spec : {restricted_baumslag_spec(), GroupSpec::baumslag_tf(), GroupSpec::lamplighter(2, 0)}) {
    AffineEvaluator ev(spec, 99);
    for (int i = 0; i < 200; ++i) {
      GroupElem a = random_elem(rng, spec, 6), b = random_elem(rng, spec, 6);
      GroupElem ab = spec.multiply(a, b);
      EXPECT_EQ(ev.key(ab.exps, ev.image(ab)), ev.key(ab.exps, ev.compose(ev.image(a), ev.image(b))));
      GroupElem ai = spec.inverse(a);
      EXPECT_EQ(ev.key(ai.exps, ev.image(ai)), ev.key(ai.exps, ev.inverse(ev.image(a))));
    }
  }
}

TEST(Evaluation, KeysSeparateDistinctElements) {
  std::mt19937_64 rng(8);
  GroupSpec g3 = restricted_baumslag_spec();
  AffineEvaluator ev(g3, 5);
  ElementKeyer keyer(g3, 5);
  EXPECT_FALSE(keyer.exact());
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    GroupElem a = random_elem(rng, g3, 8), b = random_elem(rng, g3, 8);
    const bool eq = g3.equals(a, b);
    EXPECT_EQ(eq, keyer.key(a) == keyer.key(b));
    EXPECT_EQ(eq, ev.key(a.exps, ev.image(a)) == ev.key(b.exps, ev.image(b)));
    checked += !eq;
  }
  EXPECT_GT(checked, 400);
  // The relation makes different words equal; keys must agree.
  GroupElem lhs = word_to_elem(g3, "M_x2 delta M_x2^-1"), rhs = word_to_elem(g3, "M_x1 delta M_x1^-1 delta");
  EXPECT_EQ(keyer.key(lhs), keyer.key(rhs));
}

TEST(Evaluation, TorsionLampsUseExactKeys) {
  GroupSpec lamp = GroupSpec::lamplighter(1, 2);
  EXPECT_THROW(AffineEvaluator(lamp, 1), DomainError);
  ElementKeyer keyer(lamp, 1);
  EXPECT_TRUE(keyer.exact());
  EXPECT_EQ(keyer.key(word_to_elem(lamp, "delta delta")), keyer.key(lamp.identity()));
  EXPECT_NE(keyer.key(word_to_elem(lamp, "delta")), keyer.key(lamp.identity()));
}
