#include <gtest/gtest.h>

#include "blab/errors.hpp"
#include "blab/json_io.hpp"

using namespace blab;

namespace {

std::string config_path(const std::string& name) { return std::string(BLAB_SOURCE_DIR) + "/configs/" + name; }

Json minimal(const Json& group) { return Json{{"version", 1}, {"group", group}}; }

}  // namespace

TEST(JsonIo, ShippedGroupConfigsLoad) {
  for (const char* name : {"baumslag-tf.json", "g3-restricted.json", "g3-baumslag.json", "lamp-z2-z2.json",
                           "lamp-z3-z.json", "lamplighter-z2.json"}) {
    SCOPED_TRACE(name);
    GroupConfig c = load_group_config(config_path(name));
    WalkExperiment e = build_walk_experiment(c.spec, c.walk);
    EXPECT_NO_THROW(validate(e.measure));
    EXPECT_EQ(e.lattice.size(), e.pair.projection.target_rank);
    DeltaPair p = build_delta_pair(c.spec, c.cube);
    EXPECT_FALSE(c.spec.equals(p.delta1, p.delta2));
  }
  GroupConfig b = load_group_config(config_path("baumslag-tf.json"));
  EXPECT_EQ(b.spec.family(), GroupFamily::BaumslagTF);
  EXPECT_EQ(b.walk.projection, HomKind::Phi);
  EXPECT_EQ(b.walk.lattice, (std::vector<std::int64_t>{3, 3, 0}));

  // The generic G_k construction agrees with the built-in restricted Baumslag group.
  GroupConfig g = load_group_config(config_path("g3-baumslag.json"));
  EXPECT_TRUE(g.spec == restricted_baumslag_spec());
  EXPECT_TRUE(g.spec.has_generator("M_y1+1"));

  GroupConfig l = load_group_config(config_path("lamp-z2-z2.json"));
  EXPECT_EQ(l.spec.rank(), 2u);
  EXPECT_EQ(l.spec.lamp_modulus(), 2);
}

TEST(JsonIo, MeasureAtomsAndExplicitPair) {
  Json doc = minimal({{"family", "lamplighter"}, {"rank", 1}, {"lamp_modulus", 0}});
  doc["walk"] = {{"measure", {{"kind", "atoms"},
                              {"atoms", Json::array({Json{{"word", "delta"}, {"prob", "1/4"}},
                                                     Json{{"word", "M_x1"}, {"prob", "1/2"}},
                                                     Json{{"word", "M_x1^-1"}, {"prob", "1/4"}}})}}},
                 {"delta_pair", {{"kind", "explicit"}, {"delta1", ""}, {"delta2", "delta"}}}};
  GroupConfig c = parse_group_config(doc);
  Measure mu = build_measure(c.spec, c.walk);
  ASSERT_EQ(mu.atoms.size(), 3u);
  EXPECT_EQ(mu.atoms[1].prob, mpq_class(1, 2));
  WalkExperiment e = build_walk_experiment(c.spec, c.walk);
  EXPECT_EQ(e.measure.weights.size(), 1u);
  EXPECT_TRUE(c.spec.is_identity(e.pair.delta1));
  EXPECT_EQ(e.lattice, (std::vector<std::int64_t>{1}));

  doc["walk"]["measure"]["atoms"][0]["prob"] = "1/8";
  EXPECT_THROW(build_measure(c.spec, parse_group_config(doc).walk), DomainError);
}

TEST(JsonIo, RejectsMalformedConfigs) {
  const Json lamp{{"family", "lamplighter"}, {"rank", 2}, {"lamp_modulus", 2}};
  EXPECT_NO_THROW(parse_group_config(minimal(lamp)));
  Json v = minimal(lamp);
  v["version"] = 2;
  EXPECT_THROW(parse_group_config(v), ConfigError);
  Json extra = minimal(lamp);
  extra["seed"] = 1;
  EXPECT_THROW(parse_group_config(extra), ConfigError);
  EXPECT_THROW(parse_group_config(minimal({{"family", "free_group"}})), ConfigError);
  EXPECT_THROW(parse_group_config(minimal({{"family", "lamplighter"}})), ConfigError);
  EXPECT_THROW(parse_group_config(minimal({{"family", "lamplighter"}, {"rank", 1}, {"lamp_modulus", 1}})), ConfigError);
  EXPECT_THROW(parse_group_config(minimal({{"family", "gkp"}, {"variables", {"x"}}, {"relation", "1 + y"}})),
               ParseError);
  Json badlat = minimal(lamp);
  badlat["walk"] = {{"lattice", {3, 3, 3}}};
  GroupConfig c = parse_group_config(badlat);
  EXPECT_THROW(section_lattice(c.spec, c.walk), ConfigError);
  Json badhom = minimal(lamp);
  badhom["walk"] = {{"projection", "psi"}};
  EXPECT_THROW(parse_group_config(badhom), ConfigError);
  Json phi = minimal(lamp);
  phi["walk"] = {{"projection", "phi"}};
  GroupConfig p = parse_group_config(phi);
  EXPECT_THROW(build_walk_experiment(p.spec, p.walk), Error);
  EXPECT_THROW(load_group_config(config_path("does-not-exist.json")), ConfigError);
}

TEST(JsonIo, BlocksInputFiles) {
  BlocksInput in = parse_blocks_input(read_json_file(config_path("blocks-restricted-baumslag.json")));
  ASSERT_EQ(in.generators.size(), 4u);
  ASSERT_TRUE(in.specialization);
  EXPECT_EQ(in.specialization->values[1], parse("1 + y1", {"y1", "y2"}));
  BlocksReport r = analyze_blocks(in);
  ASSERT_EQ(r.valid.size(), 1u);
  Json j = to_json(r, in.vars);
  EXPECT_EQ(j["valid_count"], 1);
  EXPECT_EQ(j["valid_blocks"][0]["relation"], serialize(parse("1 + x1 - x2", {"x1", "x2", "x3"}), {"x1", "x2", "x3"}));
  EXPECT_EQ(j["valid_blocks"][0]["lattice_rank"], 3);

  BlocksInput lamp = parse_blocks_input(read_json_file(config_path("blocks-lamplighter.json")));
  Json lj = to_json(analyze_blocks(lamp), lamp.vars);
  EXPECT_EQ(lj["valid_blocks"][0]["ring"], "free_laurent");
  EXPECT_TRUE(lj["valid_blocks"][0]["relation"].is_null());

  BlocksInput diag = parse_blocks_input(read_json_file(config_path("blocks-diagonal-only.json")));
  EXPECT_EQ(to_json(analyze_blocks(diag), diag.vars)["valid_count"], 0);

  Json bad = read_json_file(config_path("blocks-restricted-baumslag.json"));
  bad["specialization"]["values"].erase("x3");
  EXPECT_THROW(parse_blocks_input(bad), ConfigError);
  bad = read_json_file(config_path("blocks-restricted-baumslag.json"));
  bad["generators"][0]["matrix"][1][0] = "x1";
  EXPECT_THROW(parse_blocks_input(bad), DomainError);
}

TEST(JsonIo, VerdictSerialization) {
  const VarNames x{"x"};
  Json has = to_json(spp_decide(parse("x - 2", x), 1), x);
  EXPECT_EQ(has["status"], "has_spp");
  EXPECT_EQ(has["N"], 1);
  EXPECT_EQ(has["certificate"], "leading_obstruction");

  Json cyc = to_json(spp_decide(parse("x^2 + x + 1", x), 1), x);
  EXPECT_EQ(cyc["status"], "no_spp");
  EXPECT_EQ(cyc["certificate"], "cyclotomic");
  EXPECT_FALSE(cyc["counterexample"].is_null());

  const VarNames xy{"x1", "x2"};
  CertifyOptions o;
  o.box = cube_box(2, 2);
  Json unk = to_json(spp_decide(parse("1 + x1 + x2", xy), 3, o), xy);
  EXPECT_EQ(unk["status"], "unknown_up_to_bound");
  EXPECT_TRUE(unk["counterexample"].is_null());
  EXPECT_EQ(unk["bound"], 19682);

  Json nine = to_json(verify_nine_product());
  EXPECT_EQ(nine["terms"], 10);
  EXPECT_TRUE(nine["matches"].get<bool>());

  CubeReport r;
  r.n = 2;
  r.witness = std::make_pair(EpsilonVector{0, 0}, EpsilonVector{1, 1});
  Json cr = to_json(r);
  EXPECT_EQ(cr["witness"][1], (std::vector<int>{1, 1}));
  EXPECT_EQ(dump(cr), dump(to_json(r)));
  EXPECT_EQ(dump(cr).back(), '\n');
}
