#include "blab/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "blab/errors.hpp"

namespace blab {
namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ConfigError(where + ": expected a string");
  return j.get<std::string>();
}

std::int64_t get_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return j.get<std::int64_t>();
}

std::vector<std::string> get_strings(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : j) out.push_back(get_string(e, where));
  return out;
}

mpq_class get_probability(const Json& j, const std::string& where) {
  mpq_class q;
  if (j.is_number_integer()) {
    q = mpq_class(j.get<long>());
  } else if (j.is_string()) {
    if (q.set_str(j.get<std::string>(), 10) != 0) throw ConfigError(where + ": bad rational \"" + j.get<std::string>() + "\"");
    if (q.get_den() == 0) throw ConfigError(where + ": zero denominator");
    q.canonicalize();
  } else {
    throw ConfigError(where + ": probabilities are integers or strings like \"1/4\"");
  }
  return q;
}

void check_keys(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, v] : obj.items())
    if (!allowed.count(k)) throw ConfigError(where + ": unknown key \"" + k + "\"");
}

DeltaPairConfig parse_delta_pair(const Json& j, const std::string& where) {
  check_keys(j, {"kind", "delta1", "delta2"}, where);
  DeltaPairConfig c;
  const std::string kind = get_string(require(j, "kind", where), where + ".kind");
  if (kind == "semigroup") return c;
  if (kind != "explicit") throw ConfigError(where + ".kind: expected \"semigroup\" or \"explicit\"");
  c.semigroup = false;
  c.delta1 = get_string(require(j, "delta1", where), where + ".delta1");
  c.delta2 = get_string(require(j, "delta2", where), where + ".delta2");
  return c;
}

ExperimentSection parse_section(const Json& j, const std::string& where) {
  check_keys(j, {"measure", "delta_pair", "projection", "lattice"}, where);
  ExperimentSection s;
  if (j.contains("measure")) {
    const Json& m = j.at("measure");
    check_keys(m, {"kind", "atoms"}, where + ".measure");
    const std::string kind = get_string(require(m, "kind", where + ".measure"), where + ".measure.kind");
    if (kind == "atoms") {
      std::vector<std::pair<std::string, mpq_class>> atoms;
      const Json& list = require(m, "atoms", where + ".measure");
      if (!list.is_array() || list.empty()) throw ConfigError(where + ".measure.atoms: expected a nonempty array");
      for (const auto& a : list) {
        check_keys(a, {"word", "prob"}, where + ".measure.atoms[]");
        atoms.emplace_back(get_string(require(a, "word", where + ".measure.atoms[]"), where + ".measure.atoms[].word"),
                           get_probability(require(a, "prob", where + ".measure.atoms[]"), where + ".measure.atoms[].prob"));
      }
      s.atoms = std::move(atoms);
    } else if (kind != "uniform_generators") {
      throw ConfigError(where + ".measure.kind: expected \"uniform_generators\" or \"atoms\"");
    }
  }
  if (j.contains("delta_pair")) s.delta_pair = parse_delta_pair(j.at("delta_pair"), where + ".delta_pair");
  if (j.contains("projection")) {
    try {
      s.projection = parse_hom_kind(get_string(j.at("projection"), where + ".projection"));
    } catch (const ConfigError&) {
      throw;
    } catch (const Error& e) {
      throw ConfigError(where + ".projection: " + e.what());
    }
  }
  if (j.contains("lattice")) {
    const Json& l = j.at("lattice");
    if (!l.is_array()) throw ConfigError(where + ".lattice: expected an array of integers");
    for (const auto& e : l) {
      const std::int64_t v = get_int(e, where + ".lattice");
      if (v < 0) throw ConfigError(where + ".lattice: entries must be >= 0");
      s.lattice.push_back(v);
    }
  }
  return s;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

GroupSpec parse_group_spec(const Json& g) {
  const std::string where = "group";
  check_keys(g, {"family", "rank", "lamp_modulus", "variables", "relation", "pivot", "aliases"}, where);
  const std::string family = get_string(require(g, "family", where), where + ".family");
  std::optional<GroupSpec> spec;
  if (family == "lamplighter") {
    const std::int64_t rank = get_int(require(g, "rank", where), where + ".rank");
    if (rank < 1) throw ConfigError(where + ".rank: must be >= 1");
    const std::int64_t m = g.contains("lamp_modulus") ? get_int(g.at("lamp_modulus"), where + ".lamp_modulus") : 0;
    if (m < 0 || m == 1) throw ConfigError(where + ".lamp_modulus: 0 (lamps in Z) or at least 2");
    spec = GroupSpec::lamplighter(static_cast<std::size_t>(rank), mpz_class(static_cast<long>(m)));
  } else if (family == "gkp") {
    const VarNames vars = get_strings(require(g, "variables", where), where + ".variables");
    if (vars.empty()) throw ConfigError(where + ".variables: at least one variable");
    if (g.contains("relation")) {
      const LaurentPoly p = parse(get_string(g.at("relation"), where + ".relation"), vars);
      std::optional<std::size_t> pivot;
      if (g.contains("pivot")) {
        const std::int64_t v = get_int(g.at("pivot"), where + ".pivot");
        if (v < 1 || static_cast<std::size_t>(v) > vars.size()) throw ConfigError(where + ".pivot: a 1-based variable index");
        pivot = static_cast<std::size_t>(v - 1);
      }
      spec = GroupSpec::gkp(QuotientRing::single_poly(p, pivot), vars);
    } else {
      spec = GroupSpec::gkp(QuotientRing::free_laurent(vars.size()), vars);
    }
  } else if (family == "restricted_baumslag") {
    spec = restricted_baumslag_spec();
  } else if (family == "baumslag_tf") {
    spec = GroupSpec::baumslag_tf();
  } else {
    throw ConfigError(where + ".family: unknown family \"" + family + "\"");
  }
  if (g.contains("aliases")) {
    const Json& a = g.at("aliases");
    if (!a.is_object()) throw ConfigError(where + ".aliases: expected an object");
    for (const auto& [alias, target] : a.items()) {
      const std::string t = get_string(target, where + ".aliases");
      if (!spec->has_generator(t)) throw ConfigError(where + ".aliases: unknown generator \"" + t + "\"");
      spec->add_alias(alias, t);
    }
  }
  return *spec;
}

GroupConfig parse_group_config(const Json& doc) {
  check_keys(doc, {"version", "name", "description", "group", "walk", "cube"}, "config");
  if (get_int(require(doc, "version", "config"), "config.version") != kConfigVersion)
    throw ConfigError("config.version: expected " + std::to_string(kConfigVersion));
  GroupConfig c{doc.contains("name") ? get_string(doc.at("name"), "config.name") : std::string(),
                parse_group_spec(require(doc, "group", "config")),
                {},
                {}};
  if (doc.contains("walk")) c.walk = parse_section(doc.at("walk"), "walk");
  if (doc.contains("cube")) c.cube = parse_section(doc.at("cube"), "cube");
  return c;
}

GroupConfig load_group_config(const std::string& path) { return parse_group_config(read_json_file(path)); }

Measure build_measure(const GroupSpec& spec, const ExperimentSection& section) {
  if (!section.atoms) return uniform_generator_measure(spec);
  Measure mu;
  for (const auto& [w, p] : *section.atoms) {
    Word word = parse_word(w);
    mu.atoms.push_back({word, word_to_elem(spec, word), p});
  }
  validate(mu);
  return mu;
}

std::vector<std::int64_t> section_lattice(const GroupSpec& spec, const ExperimentSection& section) {
  const std::size_t r = spec.homomorphism(section.projection).target_rank;
  if (section.lattice.empty()) return std::vector<std::int64_t>(r, 1);
  if (section.lattice.size() != r)
    throw ConfigError("lattice has " + std::to_string(section.lattice.size()) + " entries, the projection " +
                      to_string(section.projection) + " has rank " + std::to_string(r));
  return section.lattice;
}

DeltaPair build_delta_pair(const GroupSpec& spec, const ExperimentSection& section) {
  const Homomorphism h = spec.homomorphism(section.projection);
  if (section.delta_pair.semigroup) {
    SemigroupPair sp = build_delta_pair_via_semigroup(build_measure(spec, section), spec);
    return make_delta_pair(spec, sp.pair.delta1, sp.pair.delta2, h);
  }
  return make_delta_pair(spec, word_to_elem(spec, section.delta_pair.delta1),
                         word_to_elem(spec, section.delta_pair.delta2), h);
}

WalkExperiment build_walk_experiment(const GroupSpec& spec, const ExperimentSection& section, unsigned threads) {
  WalkExperiment e;
  const Measure mu = build_measure(spec, section);
  const Homomorphism h = spec.homomorphism(section.projection);
  if (section.delta_pair.semigroup) {
    SemigroupPair sp = build_delta_pair_via_semigroup(mu, spec);
    e.measure = sp.combination;
    e.pair = make_delta_pair(spec, sp.pair.delta1, sp.pair.delta2, h);
  } else {
    e.measure = as_combination(mu);
    e.pair = build_delta_pair(spec, section);
  }
  e.lattice = section_lattice(spec, section);
  e.threads = threads;
  return e;
}

BlocksInput parse_blocks_input(const Json& doc) {
  check_keys(doc, {"version", "name", "description", "variables", "generators", "specialization"}, "blocks");
  if (get_int(require(doc, "version", "blocks"), "blocks.version") != kConfigVersion)
    throw ConfigError("blocks.version: expected " + std::to_string(kConfigVersion));
  BlocksInput in;
  in.vars = get_strings(require(doc, "variables", "blocks"), "blocks.variables");
  const Json& gens = require(doc, "generators", "blocks");
  if (!gens.is_array() || gens.empty()) throw ConfigError("blocks.generators: expected a nonempty array");
  std::set<std::string> names;
  for (const auto& g : gens) {
    check_keys(g, {"name", "matrix"}, "blocks.generators[]");
    NamedMatrix nm;
    nm.name = get_string(require(g, "name", "blocks.generators[]"), "blocks.generators[].name");
    if (!names.insert(nm.name).second) throw ConfigError("blocks.generators: duplicate name \"" + nm.name + "\"");
    const Json& rows = require(g, "matrix", "blocks.generators[]");
    if (!rows.is_array() || rows.empty()) throw ConfigError("blocks.generators[].matrix: expected rows");
    std::vector<std::vector<LaurentPoly>> m;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != rows.size()) throw ConfigError("blocks.generators[].matrix: must be square");
      m.emplace_back();
      for (const auto& e : row) m.back().push_back(parse(get_string(e, "blocks.generators[].matrix"), in.vars));
    }
    nm.matrix = UTMatrix::from_rows(m);
    if (!in.generators.empty() && nm.matrix.size() != in.generators[0].matrix.size())
      throw ConfigError("blocks.generators: matrices of different sizes");
    in.generators.push_back(std::move(nm));
  }
  if (doc.contains("specialization")) {
    const Json& s = doc.at("specialization");
    check_keys(s, {"variables", "values"}, "blocks.specialization");
    Specialization sp;
    sp.target_vars = get_strings(require(s, "variables", "blocks.specialization"), "blocks.specialization.variables");
    const Json& values = require(s, "values", "blocks.specialization");
    if (!values.is_object()) throw ConfigError("blocks.specialization.values: expected an object");
    for (const auto& [k, v] : values.items())
      if (std::find(in.vars.begin(), in.vars.end(), k) == in.vars.end())
        throw ConfigError("blocks.specialization.values: unknown variable \"" + k + "\"");
    for (const auto& v : in.vars) {
      if (!values.contains(v)) throw ConfigError("blocks.specialization.values: no value for \"" + v + "\"");
      sp.values.push_back(parse(get_string(values.at(v), "blocks.specialization.values"), sp.target_vars));
    }
    in.specialization = std::move(sp);
  }
  return in;
}

Json to_json(const SppVerdict& v, const VarNames& vars) {
  Json j;
  j["status"] = v.status == SppStatus::Unknown ? "unknown_up_to_bound" : to_string(v.status);
  j["N"] = v.N ? Json(*v.N) : Json(nullptr);
  j["certificate"] = to_string(v.certificate);
  j["counterexample"] = v.counterexample ? Json(serialize(*v.counterexample, vars)) : Json(nullptr);
  j["witness_N"] = v.witness_N;
  if (v.certificate == CertificateKind::RootModulus) {
    j["rho_lower"] = v.rho_lower;
    j["rho_estimate"] = v.rho_estimate;
  }
  if (v.decomposition) {
    const auto& d = *v.decomposition;
    j["decomposition"] = {{"sign", d.sign},
                          {"monomial_factor", d.monomial_factor},
                          {"direction", d.direction},
                          {"cyclotomic_index", d.cyclotomic_index}};
  } else {
    j["decomposition"] = nullptr;
  }
  j["bound"] = v.bound;
  j["note"] = v.note;
  return j;
}

Json to_json(const CubeReport& r) {
  Json j;
  j["independent"] = r.independent;
  j["n"] = r.n;
  j["method"] = to_string(r.method);
  j["decided"] = r.decided;
  j["witness"] = r.witness ? Json::array({r.witness->first, r.witness->second}) : Json(nullptr);
  return j;
}

Json to_json(const WalkStats& s) {
  auto mean = [](const std::vector<std::int64_t>& v) {
    double t = 0;
    for (auto x : v) t += static_cast<double>(x);
    return v.empty() ? 0.0 : t / static_cast<double>(v.size());
  };
  Json j;
  j["n"] = s.n;
  j["trials"] = s.trials;
  j["seed"] = s.seed;
  j["mean_fresh_delta_count"] = mean(s.fresh_delta_counts);
  j["mean_rate"] = s.mean_rate;
  j["h_nu"] = s.h_nu;
  j["lower_bound_rate"] = s.lower_bound_rate;
  j["delta_mass"] = s.delta_mass;
  j["range_fraction"] = s.range_fraction;
  if (s.endpoint_entropy) {
    const auto& e = *s.endpoint_entropy;
    j["endpoint_entropy"] = {{"plugin", e.plugin},
                             {"miller_madow", e.miller_madow},
                             {"normalized", e.miller_madow / static_cast<double>(s.n)},
                             {"distinct", e.distinct},
                             {"trials", e.trials}};
  } else {
    j["endpoint_entropy"] = nullptr;
  }
  return j;
}

Json to_json(const BlockSpec& b) {
  Json j;
  j["i"] = b.i + 1;
  j["j"] = b.j + 1;
  j["valid"] = b.valid;
  j["witness"] = b.witness ? Json(*b.witness) : Json(nullptr);
  j["diagonal_ratio_exponents"] = b.diagonal_ratio_exponents;
  j["diagonal_ratio_signs"] = b.diagonal_ratio_signs;
  j["lattice_rank"] = b.lattice_rank;
  j["lattice_basis"] = b.lattice_basis;
  return j;
}

Json to_json(const BlocksReport& r, const VarNames& vars) {
  Json j;
  j["blocks"] = Json::array();
  for (const auto& b : r.blocks) j["blocks"].push_back(to_json(b));
  j["valid_blocks"] = Json::array();
  for (const auto& a : r.valid) {
    Json v;
    v["i"] = a.block.i + 1;
    v["j"] = a.block.j + 1;
    v["lattice_rank"] = a.block.lattice_rank;
    v["ratio_generators"] = a.ratio_generators;
    Json values = Json::array();
    const VarNames& names = a.value_vars.empty() ? vars : a.value_vars;
    for (const auto& p : a.values) values.push_back(serialize(p, names));
    v["values"] = values;
    v["relation"] = a.relation ? Json(serialize(*a.relation, default_var_names(a.ratio_generators.size()))) : Json(nullptr);
    v["generalized_cyclotomic"] = a.generalized_cyclotomic;
    v["ring"] = a.ring;
    j["valid_blocks"].push_back(v);
  }
  j["valid_count"] = r.valid.size();
  return j;
}

Json to_json(const NineProduct& p) {
  Json j;
  j["polynomial"] = serialize(p.poly, {"x", "y"});
  j["terms"] = p.poly.size();
  j["matches"] = p.matches;
  j["grouping_agrees"] = p.grouping_agrees;
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace blab
