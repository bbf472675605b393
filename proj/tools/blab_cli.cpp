// blab: command-line front end for the experiments.
//
// Exit codes: 0 decided or succeeded, 1 usage or input error (also a failed
// verification), 2 undecided within the search budget.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "blab/blocks.hpp"
#include "blab/cube.hpp"
#include "blab/errors.hpp"
#include "blab/json_io.hpp"
#include "blab/spp.hpp"
#include "blab/walks.hpp"

using namespace blab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUndecided = 2;

// Random Baumslag pattern sampling in `verify` uses seeds kVerifySeed + i, i < 200.
constexpr std::uint64_t kVerifySeed = 20240;

struct UsageError : Error {
  using Error::Error;
};

unsigned resolve_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("BLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw UsageError("BLAB_THREADS must be a positive integer");
    return static_cast<unsigned>(v);
  }
  return 1;
}

void emit(const Json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << dump(j);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << dump(j);
}

// Variables of a polynomial string: x1..xk / y1..yk when the text uses indexed
// names, otherwise the distinct identifiers in alphabetical order.
VarNames variables_of(const std::string& text) {
  VarNames indexed = infer_var_names(text);
  std::set<std::string> ids;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      ids.insert(text.substr(i, j - i));
      i = j;
    } else {
      ++i;
    }
  }
  bool all_indexed = !indexed.empty();
  for (const auto& id : ids)
    if (std::find(indexed.begin(), indexed.end(), id) == indexed.end()) all_indexed = false;
  if (all_indexed) return indexed;
  if (ids.empty()) return {"x"};
  return VarNames(ids.begin(), ids.end());
}

VarNames split_names(const std::string& s) {
  VarNames out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  if (out.empty()) throw UsageError("--vars needs at least one name");
  return out;
}

Json lattice_json(const std::vector<std::int64_t>& l) { return Json(l); }

// ---------------------------------------------------------------------------

struct SppArgs {
  std::string poly;
  std::string vars;
  std::int64_t N = 1;
  std::optional<std::int64_t> box;
  std::uint64_t budget = 19683;
  std::string out;
};

int cmd_spp(const SppArgs& a) {
  const VarNames vars = a.vars.empty() ? variables_of(a.poly) : split_names(a.vars);
  const LaurentPoly p = parse(a.poly, vars);
  if (a.N < 1) throw UsageError("--N must be >= 1");
  CertifyOptions opt;
  opt.budget = a.budget;
  if (a.box) {
    if (*a.box < 0) throw UsageError("--box must be >= 0");
    opt.box = cube_box(vars.size(), *a.box);
  }
  const SppVerdict v = spp_decide(p, a.N, opt);
  Json j;
  j["command"] = "spp";
  j["input"] = {{"poly", serialize(p, vars)}, {"variables", vars}, {"N", a.N}};
  j["input"]["box"] = a.box ? Json(*a.box) : Json(nullptr);
  j["verdict"] = to_json(v, vars);
  emit(j, a.out);
  return v.status == SppStatus::Unknown ? kExitUndecided : kExitOk;
}

// ---------------------------------------------------------------------------

struct CubeArgs {
  std::string group;
  std::optional<std::int64_t> N;
  std::string lattice;
  std::size_t k = 10;
  std::optional<std::uint64_t> seed;
  std::string demo;
  std::string out;
};

std::vector<std::int64_t> parse_lattice(const std::string& s) {
  std::vector<std::int64_t> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError("--lattice expects comma-separated integers");
    }
    if (used != item.size() || v < 0) throw UsageError("--lattice expects comma-separated integers >= 0");
    out.push_back(v);
  }
  return out;
}

int cube_torsion_demo(const GroupConfig& cfg, const CubeArgs& a) {
  const GroupSpec& spec = cfg.spec;
  if (spec.family() != GroupFamily::Lamplighter || spec.lamp_modulus() == 0)
    throw UsageError("--demo torsion needs a lamplighter group with torsion lamps");
  // A two-lamp configuration delta' = delta M delta M^-1 has order equal to the lamp
  // modulus, so the cube on copies of it collapses.
  const std::string x = spec.generators()[1].name;
  const std::string word = "delta " + x + " delta " + x + "^-1";
  const GroupElem d = word_to_elem(spec, word);
  const std::size_t copies = spec.lamp_modulus().get_ui();
  std::vector<GroupElem> gamma(copies, d);
  const CubeReport r = check_cube_independent(gamma, spec);
  bool verified = false;
  if (r.witness)
    verified = spec.equals(cube_product(spec, gamma, r.witness->first), cube_product(spec, gamma, r.witness->second));
  Json j;
  j["command"] = "cube";
  j["group"] = cfg.name;
  j["demo"] = "torsion";
  j["elements"] = std::vector<std::string>(copies, word);
  j["report"] = to_json(r);
  j["witness_verified"] = verified;
  emit(j, a.out);
  return kExitOk;
}

int cmd_cube(const CubeArgs& a) {
  GroupConfig cfg = load_group_config(a.group);
  if (!a.demo.empty()) {
    if (a.demo != "torsion") throw UsageError("--demo accepts only 'torsion'");
    return cube_torsion_demo(cfg, a);
  }
  if (!a.seed) throw UsageError("--seed is required");
  ExperimentSection section = cfg.cube;
  const std::size_t r = cfg.spec.homomorphism(section.projection).target_rank;
  if (!a.lattice.empty()) {
    section.lattice = parse_lattice(a.lattice);
  } else if (a.N) {
    if (*a.N < 1) throw UsageError("--N must be >= 1");
    section.lattice.assign(r, *a.N);
  }
  const std::vector<std::int64_t> lattice = section_lattice(cfg.spec, section);
  if (a.k < 1 || a.k > 20) throw UsageError("--k must lie in 1..20");
  const DeltaPair pair = build_delta_pair(cfg.spec, section);
  const auto sampled = sample_sublattice_elements(cfg.spec, pair.projection, lattice, a.k, *a.seed);
  std::vector<GroupElem> h;
  Json words = Json::array();
  for (const auto& s : sampled) {
    h.push_back(s.elem);
    words.push_back(word_to_string(s.word));
  }
  const CubeReport rep = check_cube_along_image(pair, h, cfg.spec);
  Json j;
  j["command"] = "cube";
  j["group"] = cfg.name;
  j["projection"] = to_string(section.projection);
  j["lattice"] = lattice_json(lattice);
  j["k"] = a.k;
  j["seed"] = *a.seed;
  j["conjugators"] = words;
  j["report"] = to_json(rep);
  emit(j, a.out);
  return rep.decided ? kExitOk : kExitUndecided;
}

// ---------------------------------------------------------------------------

struct WalkArgs {
  std::string group;
  std::vector<std::int64_t> n;
  std::int64_t trials = 200;
  std::optional<std::uint64_t> seed;
  unsigned threads = 0;
  std::string csv;
  std::string summary_csv;
  std::string out;
  bool no_entropy = false;
};

int cmd_walk(const WalkArgs& a) {
  if (!a.seed) throw UsageError("--seed is required");
  if (a.n.empty()) throw UsageError("--n needs at least one step count");
  for (auto n : a.n)
    if (n < 1) throw UsageError("--n entries must be >= 1");
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  GroupConfig cfg = load_group_config(a.group);
  WalkExperiment e = build_walk_experiment(cfg.spec, cfg.walk, resolve_threads(a.threads));
  e.endpoint_entropy = !a.no_entropy;

  std::vector<WalkStats> all;
  for (auto n : a.n) all.push_back(run_walk_experiment(cfg.spec, e, n, a.trials, *a.seed));

  if (!a.csv.empty()) {
    std::ofstream out(a.csv, std::ios::binary);
    if (!out) throw UsageError("cannot write " + a.csv);
    write_walk_csv(out, all);
  }
  if (!a.summary_csv.empty()) {
    std::ofstream out(a.summary_csv, std::ios::binary);
    if (!out) throw UsageError("cannot write " + a.summary_csv);
    out << "n,trials,mean_rate,h_nu,lower_bound_rate,range_fraction,endpoint_entropy_mm,normalized_entropy\n";
    char buf[512];
    for (const auto& s : all) {
      const double mm = s.endpoint_entropy ? s.endpoint_entropy->miller_madow : 0.0;
      std::snprintf(buf, sizeof buf, "%lld,%lld,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", static_cast<long long>(s.n),
                    static_cast<long long>(s.trials), s.mean_rate, s.h_nu, s.lower_bound_rate, s.range_fraction, mm,
                    mm / static_cast<double>(s.n));
      out << buf;
    }
  }
  Json j;
  j["command"] = "walk";
  j["group"] = cfg.name;
  j["projection"] = to_string(e.pair.projection.kind);
  j["lattice"] = lattice_json(e.lattice);
  j["seed"] = *a.seed;
  j["trials"] = a.trials;
  j["delta_pair"] = {{"delta1_upper", cfg.spec.upper_to_string(e.pair.delta1)},
                     {"delta1_exps", e.pair.delta1.exps},
                     {"delta2_upper", cfg.spec.upper_to_string(e.pair.delta2)},
                     {"delta2_exps", e.pair.delta2.exps}};
  j["results"] = Json::array();
  for (const auto& s : all) j["results"].push_back(to_json(s));
  emit(j, a.out);
  return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
  std::string only;
  bool tamper_relation = false;
  std::string out;
};

Json check(const std::string& name, bool passed, Json detail) {
  return Json{{"name", name}, {"passed", passed}, {"detail", std::move(detail)}};
}

Json verify_nine() {
  const NineProduct np = verify_nine_product();
  Json d = to_json(np);
  d["expected"] = serialize(nine_product_expected(), {"x", "y"});
  return check("nine-product", np.matches && np.grouping_agrees, d);
}

Json verify_flat_search() {
  const VarNames xy{"x", "y"};
  const LaurentPoly p = parse("1 + x + y", xy);
  const SupportBox box = cube_box(2, 2);
  const auto at3 = spp_search_counterexample(p, 3, box);
  const auto at1 = spp_search_counterexample(p, 1, box);
  const bool ok = !at3 && at1 && divides(p, *at1);
  std::uint64_t candidates = 1;
  for (std::uint64_t i = 0; i < box.cells(); ++i) candidates *= 3;
  Json d{{"candidates", candidates - 1},
         {"counterexample_N3", at3 ? Json(serialize(*at3, xy)) : Json(nullptr)},
         {"control_N1", at1 ? Json(serialize(*at1, xy)) : Json(nullptr)}};
  return check("flat-search", ok, d);
}

Json verify_patterns() {
  std::size_t nonzero = 0;
  for (std::uint64_t i = 0; i < 200; ++i)
    if (verify_baumslag_flat_nonzero(random_baumslag_pattern(kVerifySeed + i))) ++nonzero;
  return check("baumslag-patterns", nonzero == 200, Json{{"patterns", 200}, {"nonzero", nonzero}});
}

// Conjugating delta by M_{y1+1} must equal conjugating by M_{y1} and then
// multiplying by delta, since (y1 + 1) * 1 = y1 * 1 + 1.
bool relation_holds(const GroupSpec& g) {
  const GroupElem lhs = word_to_elem(g, "M_y1+1 delta M_y1+1^-1");
  const GroupElem rhs = word_to_elem(g, "M_y1 delta M_y1^-1 delta");
  const GroupElem comm = word_to_elem(g, "M_y1 delta M_y1^-1 delta M_y1 delta^-1 M_y1^-1 delta^-1");
  return g.equals(lhs, rhs) && g.is_identity(comm);
}

Json verify_relation(bool tamper) {
  const GroupSpec b = GroupSpec::baumslag_tf();
  GroupSpec g = restricted_baumslag_spec();
  std::string relation = "1 + x1 - x2";
  if (tamper) {
    relation = "1 + x1 + x2";
    const VarNames v = default_var_names(3);
    g = GroupSpec::gkp(QuotientRing::single_poly(parse(relation, v), 1), v);
    g.add_alias("M_y1", "M_x1");
    g.add_alias("M_y1+1", "M_x2");
    g.add_alias("M_y2", "M_x3");
  }
  const bool in_b = relation_holds(b), in_g = relation_holds(g);
  return check("restricted-baumslag-relation", in_b && in_g,
               Json{{"relation", relation}, {"holds_in_baumslag", in_b}, {"holds_in_quotient", in_g}});
}

int cmd_verify(const VerifyArgs& a) {
  static const std::vector<std::string> names{"nine-product", "flat-search", "baumslag-patterns",
                                              "restricted-baumslag-relation"};
  if (!a.only.empty() && std::find(names.begin(), names.end(), a.only) == names.end())
    throw UsageError("--only expects one of nine-product, flat-search, baumslag-patterns, restricted-baumslag-relation");
  Json checks = Json::array();
  auto want = [&](const std::string& n) { return a.only.empty() || a.only == n; };
  if (want("nine-product")) checks.push_back(verify_nine());
  if (want("flat-search")) checks.push_back(verify_flat_search());
  if (want("baumslag-patterns")) checks.push_back(verify_patterns());
  if (want("restricted-baumslag-relation")) checks.push_back(verify_relation(a.tamper_relation));
  bool all = true;
  for (const auto& c : checks) {
    all = all && c["passed"].get<bool>();
    std::cerr << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "\n";
  }
  Json j;
  j["command"] = "verify";
  j["checks"] = checks;
  j["all_passed"] = all;
  emit(j, a.out);
  return all ? kExitOk : kExitInput;
}

// ---------------------------------------------------------------------------

struct BlocksArgs {
  std::string input;
  std::size_t max_word_length = 6;
  std::int64_t degree_bound = 4;
  std::string out;
};

int cmd_blocks(const BlocksArgs& a) {
  const BlocksInput in = parse_blocks_input(read_json_file(a.input));
  ExtractOptions eo;
  eo.max_word_length = a.max_word_length;
  RelationOptions ro;
  ro.degree_bound = a.degree_bound;
  const BlocksReport r = analyze_blocks(in, eo, ro);
  Json j;
  j["command"] = "blocks";
  j["variables"] = in.vars;
  j["report"] = to_json(r, in.vars);
  emit(j, a.out);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact experiments on random walks on solvable matrix groups"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker cap (fallback: BLAB_THREADS, then 1)");

  SppArgs spp;
  auto* s = app.add_subcommand("spp", "Decide or bound the spaced polynomial property");
  s->add_option("--poly", spp.poly, "Polynomial, e.g. \"1 + x1 + x2\"")->required();
  s->add_option("--vars", spp.vars, "Comma-separated variable names (default: inferred)");
  s->add_option("--N", spp.N, "Power N for the multivariate flat search")->capture_default_str();
  s->add_option("--box", spp.box, "Search box {0..m}^k");
  s->add_option("--budget", spp.budget, "Candidate budget when --box is absent")->capture_default_str();
  s->add_option("--out", spp.out, "JSON output path (default stdout)");

  CubeArgs cube;
  auto* c = app.add_subcommand("cube", "Cube independence of conjugates over a sublattice");
  c->add_option("--group", cube.group, "Group config JSON")->required();
  c->add_option("--N", cube.N, "Sublattice N in every coordinate");
  c->add_option("--lattice", cube.lattice, "Divisibility pattern, e.g. 3,3,0");
  c->add_option("--k", cube.k, "Number of conjugates")->capture_default_str();
  c->add_option("--seed", cube.seed, "Master seed (required unless --demo)");
  c->add_option("--demo", cube.demo, "Built-in demonstration: torsion");
  c->add_option("--out", cube.out, "JSON output path (default stdout)");

  WalkArgs walk;
  auto* w = app.add_subcommand("walk", "Fresh-Delta counts and entropy lower bounds");
  w->add_option("--group", walk.group, "Group config JSON")->required();
  w->add_option("--n", walk.n, "Step counts, comma-separated")->required()->delimiter(',');
  w->add_option("--trials", walk.trials, "Trials per step count")->capture_default_str();
  w->add_option("--seed", walk.seed, "Master seed (required)");
  w->add_option("--threads", walk.threads, "Worker cap");
  w->add_option("--csv", walk.csv, "Per-trial CSV output path");
  w->add_option("--summary-csv", walk.summary_csv, "Per-n summary CSV output path");
  w->add_option("--out", walk.out, "JSON output path (default stdout)");
  w->add_flag("--no-entropy", walk.no_entropy, "Skip the endpoint entropy estimate");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Re-run the finite computations");
  v->add_option("--only", verify.only, "One check by name");
  v->add_flag("--tamper-relation", verify.tamper_relation, "Negative control: use 1 + x1 + x2");
  v->add_option("--out", verify.out, "JSON output path (default stdout)");

  BlocksArgs blocks;
  auto* b = app.add_subcommand("blocks", "Basic blocks of an upper-triangular generating set");
  b->add_option("--input", blocks.input, "Generator JSON file")->required();
  b->add_option("--max-word-length", blocks.max_word_length, "Witness search depth")->capture_default_str();
  b->add_option("--degree-bound", blocks.degree_bound, "Relation search degree")->capture_default_str();
  b->add_option("--out", blocks.out, "JSON output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (walk.threads == 0) walk.threads = threads;
    if (*s) return cmd_spp(spp);
    if (*c) return cmd_cube(cube);
    if (*w) return cmd_walk(walk);
    if (*v) return cmd_verify(verify);
    if (*b) return cmd_blocks(blocks);
  } catch (const BudgetError& e) {
    std::cerr << "blab: budget exceeded: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const std::exception& e) {
    std::cerr << "blab: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
