// Acceptance suite: one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance --only N   run criterion N (1..9)
//
// Exit status is 0 iff every criterion that ran passed.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "blab/blocks.hpp"
#include "blab/cube.hpp"
#include "blab/errors.hpp"
#include "blab/json_io.hpp"
#include "blab/quotient.hpp"
#include "blab/spp.hpp"
#include "blab/walks.hpp"
#include "support.hpp"

using namespace blab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string config_path(const std::string& name) { return std::string(BLAB_SOURCE_DIR) + "/configs/" + name; }

// Collects the sub-checks of one criterion; the criterion passes iff all do.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failed_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool passed() const { return pass_; }
  std::string summary() const {
    std::string s;
    for (const auto& n : notes_) s += (s.empty() ? "" : "; ") + n;
    for (const auto& f : failed_) s += (s.empty() ? "" : "; ") + std::string("failed: ") + f;
    return s;
  }

 private:
  bool pass_ = true;
  std::vector<std::string> notes_, failed_;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Every nonzero flat u on the box, by plain enumeration in base 3, with an exact
// divisibility test of u(x^N). The first hit in enumeration order, if any.
std::optional<LaurentPoly> plain_flat_search(const LaurentPoly& p, std::int64_t N, const SupportBox& box) {
  std::vector<ExpVec> cells;
  ExpVec cur = box.lo;
  const std::size_t k = cur.size();
  while (true) {
    cells.push_back(cur);
    std::size_t v = 0;
    while (v < k) {
      if (++cur[v] <= box.hi[v]) break;
      cur[v] = box.lo[v];
      ++v;
    }
    if (v == k) break;
  }
  std::vector<int> digit(cells.size(), 0);
  while (true) {
    std::size_t i = 0;
    while (i < digit.size() && digit[i] == 2) digit[i++] = 0;
    if (i == digit.size()) return std::nullopt;
    ++digit[i];
    LaurentPoly u(k);
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (digit[c]) u.add_term(cells[c], digit[c] == 1 ? 1 : -1);
    if (divides(p, substitute_power(u, N))) return u;
  }
}

SupportBox box_of(std::int64_t hi_x, std::int64_t hi_y = -1) {
  if (hi_y < 0) return SupportBox{{0}, {hi_x}};
  return SupportBox{{0, 0}, {hi_x, hi_y}};
}

// ---------------------------------------------------------------------------

Verdict criterion1() {
  Verdict v;
  const auto t0 = Clock::now();
  const NineProduct np = verify_nine_product();
  const double dt = seconds_since(t0);
  const LaurentPoly& f = np.poly;
  auto coeff = [&](std::int64_t a, std::int64_t b) {
    auto it = f.terms().find(ExpVec{a, b});
    return it == f.terms().end() ? mpz_class(0) : it->second;
  };
  v.require(f.size() == 10, "10 terms");
  v.require(coeff(3, 3) == -21, "coefficient of x^3y^3 is -21");
  for (auto [a, b] : std::vector<std::pair<int, int>>{{3, 0}, {0, 3}, {6, 0}, {0, 6}, {6, 3}, {3, 6}})
    v.require(coeff(a, b) == 3, "coefficient 3 at x^" + std::to_string(a) + "y^" + std::to_string(b));
  for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 0}, {9, 0}, {0, 9}})
    v.require(coeff(a, b) == 1, "coefficient 1 at x^" + std::to_string(a) + "y^" + std::to_string(b));
  for (const auto& [e, c] : f.terms()) v.require(e[0] % 3 == 0 && e[1] % 3 == 0, "exponents divisible by 3");
  v.require(np.matches && np.grouping_agrees, "matches the stated polynomial");
  v.require(dt < 1.0, "runtime < 1 s");
  v.note(serialize(f, {"x", "y"}));
  v.note(fmt("%.3f s", dt));
  return v;
}

Verdict criterion2() {
  Verdict v;
  const VarNames xy{"x", "y"};
  const LaurentPoly p = parse("1 + x + y", xy);
  const SupportBox box = cube_box(2, 2);
  const auto t0 = Clock::now();
  const auto fast = spp_search_counterexample(p, 3, box);
  const auto plain = plain_flat_search(p, 3, box);
  const double dt = seconds_since(t0);
  v.require(!fast, "no counterexample at N = 3 (search)");
  v.require(!plain, "no counterexample at N = 3 (plain enumeration of all 19682 patterns)");
  v.require(dt < 10.0, "runtime < 10 s");
  const auto t1 = Clock::now();
  const auto control = spp_search_counterexample(p, 1, box);
  const double dc = seconds_since(t1);
  v.require(control && (*control == p || *control == -p), "N = 1 finds u = 1 + x + y");
  v.note(fmt("%.3f s for both N = 3 searches", dt));
  v.note("control " + (control ? serialize(*control, xy) : std::string("none")) + fmt(" in %.4f s", dc));
  return v;
}

// Number of distinct elements among all 2^n cube products, using exact keys when the
// ring has canonical forms and pairwise exact comparison otherwise.
std::size_t distinct_products(const GroupSpec& spec, const std::vector<GroupElem>& gamma) {
  const std::size_t n = gamma.size(), total = std::size_t{1} << n;
  std::vector<GroupElem> all;
  for (std::size_t mask = 0; mask < total; ++mask) {
    EpsilonVector eps(n);
    for (std::size_t i = 0; i < n; ++i) eps[i] = (mask >> i) & 1;
    all.push_back(cube_product(spec, gamma, eps));
  }
  if (spec.has_exact_keys()) {
    std::unordered_set<std::string> keys;
    for (const auto& g : all) keys.insert(spec.exact_key(g));
    return keys.size();
  }
  std::vector<GroupElem> reps;
  for (const auto& g : all) {
    bool seen = false;
    for (const auto& r : reps)
      if (spec.equals(r, g)) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(g);
  }
  return reps.size();
}

Verdict criterion3() {
  Verdict v;
  {
    const auto t0 = Clock::now();
    const GroupSpec g3 = restricted_baumslag_spec();
    const auto h = sample_sublattice_elements(g3, 3, 10, 7);
    std::set<std::vector<std::int64_t>> points;
    std::vector<GroupElem> gamma;
    for (const auto& s : h) {
      auto pt = project(g3, g3.default_projection(), s.elem);
      for (auto c : pt) v.require(c % 3 == 0, "conjugators over (3Z)^3");
      points.insert(pt);
      gamma.push_back(g3.conjugate(s.elem, g3.generator("delta")));
    }
    v.require(points.size() == 10, "10 distinct points");
    const CubeReport r = check_cube_independent(gamma, g3);
    const std::size_t distinct = distinct_products(g3, gamma);
    const double dt = seconds_since(t0);
    v.require(r.independent && distinct == 1024, "G_3(1 + x1 - x2): 1024 distinct products");
    v.require(dt < 60.0, "G_3 instance < 60 s");
    v.note("G_3 " + std::to_string(distinct) + "/1024" + fmt(" in %.3f s", dt));
  }
  {
    const auto t0 = Clock::now();
    const GroupConfig cfg = load_group_config(config_path("baumslag-tf.json"));
    const GroupSpec& b = cfg.spec;
    ExperimentSection section = cfg.cube;
    section.lattice = {3, 3, 0};
    const DeltaPair pair = build_delta_pair(b, section);
    const auto h = sample_sublattice_elements(b, pair.projection, section.lattice, 8, 7);
    std::vector<GroupElem> hs, rho;
    const GroupElem bar = b.multiply(b.inverse(pair.delta1), pair.delta2);
    for (const auto& s : h) {
      hs.push_back(s.elem);
      rho.push_back(b.conjugate(s.elem, bar));
    }
    const CubeReport r = check_cube_along_image(pair, hs, b);
    const std::size_t distinct = distinct_products(b, rho);
    const double dt = seconds_since(t0);
    v.require(r.independent && distinct == 256, "B_2(Z) along phi on 3Z x 3Z x Z: 256 distinct products");
    v.require(dt < 60.0, "B_2 instance < 60 s");
    v.note("B_2 " + std::to_string(distinct) + "/256" + fmt(" in %.3f s", dt));
  }
  {
    const GroupSpec t = GroupSpec::lamplighter(1, 2);
    const GroupElem d = word_to_elem(t, "delta M_x1 delta M_x1^-1");
    const std::vector<GroupElem> gamma{d, d};
    const CubeReport r = check_cube_independent(gamma, t);
    const bool verified = !r.independent && r.witness &&
                          t.equals(cube_product(t, gamma, r.witness->first), cube_product(t, gamma, r.witness->second)) &&
                          r.witness->first != r.witness->second;
    v.require(verified, "torsion control returns a verified witness");
    v.note(std::string("torsion control witness ") + (verified ? "verified" : "missing"));
  }
  return v;
}

struct RateRow {
  std::int64_t n;
  double rate;
};

std::vector<RateRow> rates(const std::string& config, const std::vector<std::int64_t>& grid) {
  const GroupConfig cfg = load_group_config(config_path(config));
  WalkExperiment e = build_walk_experiment(cfg.spec, cfg.walk);
  e.endpoint_entropy = false;
  std::vector<RateRow> out;
  for (auto n : grid) out.push_back({n, run_walk_experiment(cfg.spec, e, n, 200, 1).lower_bound_rate});
  return out;
}

std::string rate_list(const std::vector<RateRow>& r) {
  std::string s;
  for (const auto& row : r) s += (s.empty() ? "" : ",") + fmt("%.6f", row.rate);
  return s;
}

Verdict criterion4() {
  Verdict v;
  const auto t0 = Clock::now();
  const std::vector<std::int64_t> grid{500, 1000, 2000, 4000};
  for (const char* name : {"baumslag-tf.json", "g3-restricted.json"}) {
    const auto r = rates(name, grid);
    bool positive = true;
    for (const auto& row : r) positive = positive && row.rate > 0;
    const double ratio = r[3].rate / r[1].rate;
    v.require(positive, std::string(name) + " rate positive at every n");
    v.require(ratio >= 0.8, std::string(name) + fmt(" stability rate(4000)/rate(1000) = %.3f >= 0.8", ratio));
    v.note(std::string(name) + " rates " + rate_list(r) + fmt(" ratio4000/1000=%.3f", ratio));
  }
  const auto z = rates("lamp-z2-z2.json", grid);
  const double decay = z[3].rate / z[0].rate;
  v.require(decay <= 0.7, fmt("lamp-z2-z2 decay rate(4000)/rate(500) = %.3f <= 0.7", decay));
  v.note("lamp-z2-z2.json rates " + rate_list(z) + fmt(" ratio4000/500=%.3f", decay));
  const double dt = seconds_since(t0);
  v.require(dt < 600.0, "runtime < 10 min");
  v.note(fmt("%.1f s", dt));
  return v;
}

Verdict criterion5() {
  Verdict v;
  const auto t0 = Clock::now();
  struct Setup {
    const char* config;
    std::int64_t n;
  };
  std::size_t checked = 0, nontrivial = 0;
  std::int64_t max_k = 0, total_k = 0;
  for (const Setup s : {Setup{"g3-restricted.json", 3000}, Setup{"lamp-z2-z2.json", 600}}) {
    const GroupConfig cfg = load_group_config(config_path(s.config));
    const WalkExperiment e = build_walk_experiment(cfg.spec, cfg.walk);
    std::size_t taken = 0;
    for (std::int64_t trial = 0; taken < 25; ++trial) {
      const Trajectory t = sample_trajectory(cfg.spec, e.measure, s.n, trial_seed(5, s.n, trial), false);
      if (fresh_delta_count(t, e.pair, e.lattice, cfg.spec) > 12) continue;
      const SwapCheck c = swap_endpoint_check(cfg.spec, t, e.pair, e.lattice, 12);
      v.require(c.distinct_endpoints == (std::size_t{1} << c.k),
                std::string(s.config) + " trial " + std::to_string(trial) + ": " + std::to_string(c.distinct_endpoints) +
                    " endpoints for k = " + std::to_string(c.k));
      ++taken;
      ++checked;
      nontrivial += c.k > 0;
      max_k = std::max(max_k, c.k);
      total_k += c.k;
    }
  }
  v.require(checked == 50, "50 trajectories");
  v.note(std::to_string(checked) + " trajectories, " + std::to_string(nontrivial) + " with k > 0, max k " +
         std::to_string(max_k) + ", total swaps 2^k summed over k = " + std::to_string(total_k));
  v.note(fmt("%.1f s", seconds_since(t0)));
  return v;
}

Verdict criterion6() {
  Verdict v;
  const VarNames x{"x"}, xy{"x", "y"}, x12{"x1", "x2"};
  // Each verdict, then the plain search oracle on a small box.
  {
    const LaurentPoly p = parse("x^2 + x + 1", x);
    const SppVerdict d = spp_decide(p, 1);
    v.require(d.status == SppStatus::NoSPP, "x^2+x+1 no_spp");
    for (std::int64_t N : {1, 2, 3}) v.require(plain_flat_search(p, N, box_of(3)).has_value(), "x^2+x+1 oracle finds a flat multiple at N=" + std::to_string(N));
  }
  {
    const LaurentPoly p = parse("x1*x2 - 1", x12);
    const SppVerdict d = spp_decide(p, 2);
    v.require(d.status == SppStatus::NoSPP, "x1x2-1 no_spp");
    for (std::int64_t N : {1, 2, 3}) v.require(plain_flat_search(p, N, box_of(1, 1)).has_value(), "x1x2-1 oracle finds a flat multiple at N=" + std::to_string(N));
  }
  {
    const LaurentPoly p = parse("x^2 - x - 1", x);
    const SppVerdict d = spp_decide(p, 1);
    v.require(d.status == SppStatus::HasSPP && d.N == 2, "x^2-x-1 has_spp(N=2)");
    v.require(plain_flat_search(p, 1, box_of(8)).has_value(), "x^2-x-1 oracle: N=1 fails");
    v.require(!plain_flat_search(p, 2, box_of(8)), "x^2-x-1 oracle: N=2 clean up to degree 8");
  }
  {
    const LaurentPoly p = parse("x - 2", x);
    const SppVerdict d = spp_decide(p, 1);
    v.require(d.status == SppStatus::HasSPP && d.N == 1, "x-2 has_spp(N=1)");
    v.require(!plain_flat_search(p, 1, box_of(8)), "x-2 oracle clean up to degree 8");
  }
  {
    const LaurentPoly p = parse("2 + x + y", xy);
    const SppVerdict d = spp_decide(p, 1);
    v.require(d.status == SppStatus::HasSPP && d.N == 1, "2+x+y has_spp(N=1)");
    v.require(!plain_flat_search(p, 1, box_of(2, 2)), "2+x+y oracle clean on {0,1,2}^2");
  }
  {
    const LaurentPoly p = parse("1 + x1 - x2", x12);
    CertifyOptions o;
    o.box = cube_box(2, 2);
    const SppVerdict d = spp_decide(p, 3, o);
    v.require(d.status == SppStatus::Unknown && !d.counterexample, "1+x1-x2 no counterexample in {0,1,2}^2 at N=3");
    v.require(!plain_flat_search(p, 3, box_of(2, 2)), "1+x1-x2 oracle clean on {0,1,2}^2 at N=3");
  }
  v.note("6 verdicts, each cross-checked by plain enumeration");
  return v;
}

mpz_class eval_at(const LaurentPoly& f, const std::vector<mpz_class>& pt) {
  mpz_class total = 0;
  for (const auto& [e, c] : f.terms()) {
    mpz_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      mpz_class pw;
      mpz_pow_ui(pw.get_mpz_t(), pt[i].get_mpz_t(), static_cast<unsigned long>(e[i]));
      t *= pw;
    }
    total += t;
  }
  return total;
}

Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(57);
  std::size_t nonzero = 0, agree = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto pattern = random_baumslag_pattern(1000 + i);
    for (const auto& t : pattern)
      v.require(t.a <= 2 && t.b <= 2 && t.c <= 3 && t.d <= 3, "pattern bounds");
    nonzero += verify_baumslag_flat_nonzero(pattern);
    // The expansion evaluated at a random point equals the pattern evaluated directly.
    const std::vector<mpz_class> pt{mpz_class(static_cast<long>(rng() % 97) + 2), mpz_class(static_cast<long>(rng() % 97) + 2)};
    mpz_class direct = 0;
    for (const auto& t : pattern) {
      mpz_class a, b, c, d;
      const mpz_class y1p = pt[0] + 1, y2p = pt[1] + 1;
      mpz_pow_ui(a.get_mpz_t(), pt[0].get_mpz_t(), 3 * t.a);
      mpz_pow_ui(b.get_mpz_t(), y1p.get_mpz_t(), 3 * t.b);
      mpz_pow_ui(c.get_mpz_t(), pt[1].get_mpz_t(), t.c);
      mpz_pow_ui(d.get_mpz_t(), y2p.get_mpz_t(), t.d);
      direct += t.sign * a * b * c * d;
    }
    agree += eval_at(baumslag_flat_expansion(pattern), pt) == direct;
  }
  v.require(nonzero == 200, "all 200 expansions nonzero");
  v.require(agree == 200, "expansions agree with direct evaluation");
  v.note(std::to_string(nonzero) + "/200 nonzero");
  return v;
}

Word random_word(std::mt19937_64& rng, const GroupSpec& spec, int max_len) {
  const auto& gens = spec.generators();
  const int len = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  Word w;
  for (int i = 0; i < len; ++i) w.push_back({gens[rng() % gens.size()].name, (rng() % 2) ? 1 : -1});
  return w;
}

Verdict criterion8() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);

  // Ring axioms on 1000 random triples.
  {
    const LaurentPoly zero(3), one = LaurentPoly::constant(3, 1);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const LaurentPoly a = testutil::random_poly(rng, 3, 5, -2, 2, 9), b = testutil::random_poly(rng, 3, 5, -2, 2, 9),
                        c = testutil::random_poly(rng, 3, 5, -2, 2, 9);
      ok = ok && (a + b) + c == a + (b + c) && a + b == b + a && (a * b) * c == a * (b * c) && a * b == b * a &&
           a * (b + c) == a * b + a * c && a + zero == a && a * one == a && (a - a).is_zero();
    }
    v.require(ok, "ring axioms");
  }
  // Group axioms, 1000 samples per family, and pi / phi / phi' are homomorphisms.
  {
    const std::vector<GroupSpec> families{GroupSpec::lamplighter(2, 2), GroupSpec::lamplighter(3, 0),
                                          restricted_baumslag_spec(), GroupSpec::baumslag_tf()};
    bool axioms = true, hom = true;
    for (const GroupSpec& spec : families) {
      std::vector<HomKind> kinds{HomKind::Pi};
      if (spec.family() == GroupFamily::BaumslagTF) kinds = {HomKind::Pi, HomKind::Phi, HomKind::PhiPrime};
      for (int i = 0; i < 1000; ++i) {
        const GroupElem a = word_to_elem(spec, random_word(rng, spec, 5)), b = word_to_elem(spec, random_word(rng, spec, 5)),
                        c = word_to_elem(spec, random_word(rng, spec, 5));
        axioms = axioms && spec.equals(spec.multiply(spec.multiply(a, b), c), spec.multiply(a, spec.multiply(b, c))) &&
                 spec.is_identity(spec.multiply(a, spec.inverse(a))) && spec.equals(spec.multiply(spec.identity(), a), a);
        for (HomKind k : kinds) {
          const Homomorphism h = spec.homomorphism(k);
          const auto pa = project(spec, h, a), pb = project(spec, h, b), pab = project(spec, h, spec.multiply(a, b)),
                     pinv = project(spec, h, spec.inverse(a));
          for (std::size_t j = 0; j < pa.size(); ++j) hom = hom && pab[j] == pa[j] + pb[j] && pinv[j] == -pa[j];
        }
      }
    }
    v.require(axioms, "group axioms");
    v.require(hom, "projection homomorphisms");
  }
  // divides against the rational-solve oracle: every univariate pair with
  // exponents in [-2, 2], coefficients in {+-1, +-2} and total support <= 4,
  // then 3000 random bivariate pairs.
  {
    std::size_t pairs = 0, mismatches = 0, divisible = 0;
    const std::vector<int> coeffs{1, -1, 2, -2};
    std::vector<LaurentPoly> by_support[6];
    for (unsigned mask = 0; mask < 32; ++mask) {
      std::vector<int> exps;
      for (int e = 0; e < 5; ++e)
        if (mask >> e & 1) exps.push_back(e - 2);
      std::size_t combos = 1;
      for (std::size_t i = 0; i < exps.size(); ++i) combos *= 4;
      for (std::size_t code = 0; code < combos; ++code) {
        LaurentPoly f(1);
        std::size_t c = code;
        for (int e : exps) {
          f.add_term({e}, coeffs[c % 4]);
          c /= 4;
        }
        by_support[exps.size()].push_back(f);
      }
    }
    for (std::size_t sp = 1; sp <= 4; ++sp)
      for (std::size_t sf = 0; sp + sf <= 4; ++sf)
        for (const auto& p : by_support[sp])
          for (const auto& f : by_support[sf]) {
            const bool expected = testutil::brute_force_divides(p, f);
            ++pairs;
            divisible += expected;
            mismatches += divides(p, f) != expected;
          }
    for (int i = 0; i < 3000; ++i) {
      const LaurentPoly p = testutil::nonzero_random_poly(rng, 2, 4, -2, 2, 3);
      const LaurentPoly f = i % 2 ? p * testutil::random_poly(rng, 2, 2, -1, 1, 2) : testutil::random_poly(rng, 2, 4, -2, 2, 3);
      const bool expected = testutil::brute_force_divides(p, f);
      ++pairs;
      divisible += expected;
      mismatches += divides(p, f) != expected;
    }
    v.require(mismatches == 0, "divides agrees with the oracle");
    v.note(std::to_string(pairs) + " divisibility pairs (" + std::to_string(divisible) + " divisible)");
  }
  // Fingerprints: 500 equal pairs agree, at least 499 of 500 unequal pairs differ.
  {
    const VarNames xyz{"x", "y", "z"};
    const QuotientRing rings[] = {QuotientRing::single_poly(parse("1 + x - y", xyz), 1),
                                  QuotientRing::single_poly(parse("2*x + 3*y + 1", xyz)),
                                  QuotientRing::single_poly(parse("x^3*y - 2*y - x + 5*z", xyz))};
    bool sound = true;
    int worst = 500;
    for (const QuotientRing& r : rings) {
      int differ = 0, unequal = 0;
      while (unequal < 500) {
        const FingerprintContext ctx = r.fingerprint_context(rng());
        const RingElem a{testutil::random_poly(rng, 3, 5, -2, 2, 6), {}};
        const RingElem same{a.num + r.relation() * testutil::nonzero_random_poly(rng, 3, 3, -2, 2, 4), {}};
        sound = sound && ctx.fingerprint(a) == ctx.fingerprint(same);
        const RingElem other{a.num + testutil::nonzero_random_poly(rng, 3, 3, -2, 2, 4), {}};
        if (r.eq_mod(a, other)) continue;
        ++unequal;
        differ += !(ctx.fingerprint(a) == ctx.fingerprint(other));
      }
      worst = std::min(worst, differ);
    }
    v.require(sound, "fingerprint soundness");
    v.require(worst >= 499, "fingerprint discrimination >= 499/500");
    v.note("fingerprint discrimination worst " + std::to_string(worst) + "/500");
  }
  const double dt = seconds_since(t0);
  v.require(dt < 300.0, "runtime < 5 min");
  v.note(fmt("%.1f s", dt));
  return v;
}

Verdict criterion9() {
  Verdict v;
  const BlocksInput in = parse_blocks_input(read_json_file(config_path("blocks-restricted-baumslag.json")));
  const BlocksReport r = analyze_blocks(in);
  v.require(r.valid.size() == 1, "one valid block");
  if (r.valid.size() == 1) {
    const BlockAnalysis& a = r.valid[0];
    v.require(a.block.lattice_rank == 3, "lattice rank 3");
    const LaurentPoly expected = parse("1 + x1 - x2", default_var_names(a.ratio_generators.size()));
    v.require(a.relation && *a.relation == expected, "relation 1 + x1 - x2");
    v.require(!a.generalized_cyclotomic, "not generalized cyclotomic");
    v.require(!detect_generalized_cyclotomic(expected), "detector agrees on the relation");
    v.note("block (" + std::to_string(a.block.i + 1) + "," + std::to_string(a.block.j + 1) + "), rank " +
           std::to_string(a.block.lattice_rank) + ", relation " +
           (a.relation ? serialize(*a.relation, default_var_names(a.ratio_generators.size())) : std::string("none")));
  }
  return v;
}

const char* kTitles[] = {"",
                         "nine-product identity",
                         "flat search for 1+x+y at N=3 on {0,1,2}^2",
                         "cube independence instances",
                         "entropy contrast experiment",
                         "swapped trajectories hit distinct endpoints",
                         "SPP decider truth table",
                         "Baumslag flat patterns are nonzero",
                         "algebra property suites",
                         "blocks pipeline on restricted Baumslag"};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
      if (only < 1 || only > 9) {
        std::cerr << "--only expects 1..9\n";
        return 1;
      }
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 1;
    }
  }
  const std::vector<std::function<Verdict()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  bool all = true;
  for (int c = 1; c <= 9; ++c) {
    if (only && c != only) continue;
    Verdict v;
    try {
      v = criteria[c - 1]();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    all = all && v.passed();
    std::cout << (v.passed() ? "PASS" : "FAIL") << " criterion " << c << ": " << kTitles[c] << " (" << v.summary()
              << ")" << std::endl;
  }
  return all ? 0 : 1;
}
