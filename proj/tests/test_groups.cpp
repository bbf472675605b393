#include <gtest/gtest.h>

#include <random>

#include "blab/errors.hpp"
#include "blab/groups.hpp"

using namespace blab;

namespace {

Word random_word(std::mt19937_64& rng, const GroupSpec& spec, int max_len) {
  const auto& gens = spec.generators();
  const int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  Word w;
  for (int i = 0; i < len; ++i) w.push_back({gens[rng() % gens.size()].name, (rng() % 2) ? 1 : -1});
  return w;
}

std::vector<GroupSpec> all_families() {
  return {GroupSpec::lamplighter(1, 0), GroupSpec::lamplighter(2, 2), restricted_baumslag_spec(),
          GroupSpec::baumslag_tf(),
          GroupSpec::gkp(QuotientRing::single_poly(parse("2*x1 + 3*x2 + 1", default_var_names(2))),
                         default_var_names(2))};
}

}  // namespace

TEST(Groups, IdentityAndBasicProducts) {
  GroupSpec g3 = restricted_baumslag_spec();
  GroupElem d = g3.generator("delta");
  GroupElem dd = g3.multiply(d, d);
  EXPECT_EQ(g3.upper_to_string(dd), "2");
  EXPECT_TRUE(exp_is_zero(dd.exps));
  GroupElem conj = word_to_elem(g3, "M_x1 delta M_x1^-1");
  EXPECT_EQ(g3.upper_to_string(conj), "x1");
  EXPECT_TRUE(exp_is_zero(conj.exps));

  GroupSpec lamp = GroupSpec::lamplighter(3, 2);
  EXPECT_EQ(lamp.identity().exps, (ExpVec{0, 0, 0}));
  GroupSpec b = GroupSpec::baumslag_tf();
  EXPECT_EQ(project(b, b.default_projection(), b.identity()), (std::vector<std::int64_t>{0, 0}));
}

TEST(Groups, RestrictedBaumslagRelation) {
  GroupSpec g3 = restricted_baumslag_spec();
  GroupElem lhs = word_to_elem(g3, "M_x2 delta M_x2^-1");
  GroupElem rhs = word_to_elem(g3, "M_x1 delta M_x1^-1 delta");
  EXPECT_TRUE(g3.equals(lhs, rhs));
  // Aliases name the same generators.
  EXPECT_TRUE(g3.equals(word_to_elem(g3, "M_y1+1 delta M_y1+1^-1"), word_to_elem(g3, "delta * M_y1 delta M_y1^-1")));
  EXPECT_EQ(g3.generators().size(), 4u);
  EXPECT_EQ(g3.default_projection().target_rank, 3u);
  EXPECT_FALSE(g3.equals(g3.generator("delta"), g3.identity()));

  // Same relation in the Baumslag group itself.
  GroupSpec b = GroupSpec::baumslag_tf();
  EXPECT_TRUE(b.equals(word_to_elem(b, "M_y1+1 delta M_y1+1^-1"), word_to_elem(b, "M_y1 delta M_y1^-1 delta")));
  EXPECT_TRUE(b.equals(word_to_elem(b, "M_y2+1 delta M_y2+1^-1"), word_to_elem(b, "M_y2 delta M_y2^-1 delta")));
}

TEST(Groups, Inverses) {
  GroupSpec g3 = restricted_baumslag_spec();
  GroupElem di = g3.inverse(g3.generator("delta"));
  EXPECT_EQ(g3.upper_to_string(di), "-1");
  EXPECT_EQ(g3.inverse(g3.generator("M_x1")).exps, (ExpVec{-1, 0, 0}));
  EXPECT_EQ(word_to_elem(g3, "").exps, (ExpVec{0, 0, 0}));
  EXPECT_TRUE(g3.is_identity(word_to_elem(g3, "")));
}

TEST(Groups, AxiomsAllFamilies) {
  std::mt19937_64 rng(101);
  for (const GroupSpec& spec : all_families()) {
    for (int i = 0; i < 1000; ++i) {
      Word wa = random_word(rng, spec, 5), wb = random_word(rng, spec, 5), wc = random_word(rng, spec, 5);
      GroupElem a = word_to_elem(spec, wa), b = word_to_elem(spec, wb), c = word_to_elem(spec, wc);
      EXPECT_TRUE(spec.equals(spec.multiply(spec.multiply(a, b), c), spec.multiply(a, spec.multiply(b, c))));
      EXPECT_TRUE(spec.is_identity(spec.multiply(a, spec.inverse(a))));
      EXPECT_TRUE(spec.is_identity(spec.multiply(spec.inverse(a), a)));
      EXPECT_TRUE(spec.equals(spec.multiply(spec.identity(), a), a));
      EXPECT_TRUE(spec.equals(spec.multiply(a, spec.identity()), a));
      Word ww = wa;
      for (const auto& l : inverse_word(wa)) ww.push_back(l);
      EXPECT_TRUE(spec.is_identity(word_to_elem(spec, ww)));
    }
  }
}

TEST(Groups, ProjectionIsHomomorphism) {
  std::mt19937_64 rng(102);
  for (const GroupSpec& spec : all_families()) {
    std::vector<HomKind> kinds{HomKind::Pi};
    if (spec.family() == GroupFamily::BaumslagTF) kinds = {HomKind::Pi, HomKind::Phi, HomKind::PhiPrime};
    for (HomKind kind : kinds) {
      const Homomorphism h = spec.homomorphism(kind);
      for (int i = 0; i < 300; ++i) {
        GroupElem a = word_to_elem(spec, random_word(rng, spec, 6));
        GroupElem b = word_to_elem(spec, random_word(rng, spec, 6));
        auto pa = project(spec, h, a), pb = project(spec, h, b), pab = project(spec, h, spec.multiply(a, b));
        auto pinv = project(spec, h, spec.inverse(a));
        ASSERT_EQ(pa.size(), h.target_rank);
        for (std::size_t j = 0; j < pa.size(); ++j) {
          EXPECT_EQ(pab[j], pa[j] + pb[j]);
          EXPECT_EQ(pinv[j], -pa[j]);
        }
      }
    }
  }
}

TEST(Groups, ProjectionExamples) {
  GroupSpec g3 = restricted_baumslag_spec();
  const Homomorphism pi = g3.default_projection();
  EXPECT_EQ(project(g3, pi, g3.generator("M_x2")), (std::vector<std::int64_t>{0, 1, 0}));
  EXPECT_EQ(project(g3, pi, g3.generator("delta")), (std::vector<std::int64_t>{0, 0, 0}));
  EXPECT_THROW(g3.homomorphism(HomKind::Phi), Error);

  GroupSpec b = GroupSpec::baumslag_tf();
  GroupElem g = word_to_elem(b, "M_y1^3 M_y1+1^6 M_y2^2 M_y2+1^5 delta");
  EXPECT_EQ(project(b, b.homomorphism(HomKind::Phi), g), (std::vector<std::int64_t>{3, 6, 2}));
  EXPECT_EQ(project(b, b.homomorphism(HomKind::Pi), g), (std::vector<std::int64_t>{3, 2}));
  EXPECT_EQ(project(b, b.homomorphism(HomKind::PhiPrime), g), (std::vector<std::int64_t>{3, 6, 2, 5}));
}

TEST(Groups, BaumslagConjugatesDependOnPhiPrime) {
  GroupSpec b = GroupSpec::baumslag_tf();
  std::mt19937_64 rng(103);
  const GroupElem delta = b.generator("delta");
  for (int i = 0; i < 300; ++i) {
    GroupElem g = word_to_elem(b, random_word(rng, b, 6));
    // Multiply by unipotent elements on the right: phi_prime is unchanged.
    GroupElem u = b.conjugate(word_to_elem(b, random_word(rng, b, 4)), delta);
    GroupElem g2 = b.multiply(g, u);
    ASSERT_EQ(project(b, b.homomorphism(HomKind::PhiPrime), g), project(b, b.homomorphism(HomKind::PhiPrime), g2));
    EXPECT_TRUE(b.equals(b.conjugate(g, delta), b.conjugate(g2, delta)));
  }
}

TEST(Groups, DistinctExponentsGiveDistinctMonomials) {
  GroupSpec g3 = restricted_baumslag_spec();
  std::mt19937_64 rng(104);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int i = 0; i < 500; ++i) {
    ExpVec a{d(rng), d(rng), d(rng)}, c{d(rng), d(rng), d(rng)};
    if (a == c) continue;
    EXPECT_FALSE(g3.ring().eq_mod(g3.ring().unit(a), g3.ring().unit(c)));
  }
}

TEST(Groups, TorsionLamps) {
  GroupSpec lamp = GroupSpec::lamplighter(1, 2);
  GroupElem d = lamp.generator("delta");
  EXPECT_TRUE(lamp.is_identity(lamp.multiply(d, d)));
  GroupSpec z = GroupSpec::lamplighter(1, 0);
  EXPECT_FALSE(z.is_identity(z.power(z.generator("delta"), 2)));
}

TEST(Groups, WordParsing) {
  Word w = parse_word("M_y1+1^-1*delta  M_x2^3");
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w[0].name, "M_y1+1");
  EXPECT_EQ(w[0].power, -1);
  EXPECT_EQ(w[2].power, 3);
  EXPECT_EQ(word_to_string(w), "M_y1+1^-1 delta M_x2^3");
  EXPECT_THROW(parse_word("delta^x"), ParseError);
  GroupSpec g3 = restricted_baumslag_spec();
  EXPECT_THROW(word_to_elem(g3, "M_z"), Error);
  EXPECT_TRUE(g3.equals(word_to_elem(g3, "delta^3"), word_to_elem(g3, "delta delta delta")));
}
