#include "blab/walks.hpp"

#include <algorithm>
#include <boost/container/small_vector.hpp>
#include <boost/container_hash/hash.hpp>
#include <cmath>
#include <map>
#include <ostream>
#include <random>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "blab/errors.hpp"
#include "blab/evaluation.hpp"

namespace blab {

namespace {

using Rng = std::mt19937_64;
using AtomIndices = boost::container::small_vector<std::size_t, 4>;

struct VecHash {
  std::size_t operator()(const std::vector<std::int64_t>& v) const { return boost::hash_range(v.begin(), v.end()); }
};
using ProjectionSet = std::unordered_set<std::vector<std::int64_t>, VecHash>;

constexpr std::size_t kMaxTuples = 1u << 20;
constexpr std::uint64_t kSwapSeed = 0x7377617063686bULL;

// Discrete law with rational weights, sampled exactly by rejection on 64-bit words.
class Discrete {
 public:
  explicit Discrete(const std::vector<mpq_class>& probs) {
    mpz_class l = 1;
    for (const auto& p : probs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), p.get_den_mpz_t());
    if (l >= mpz_class(1) << 62) throw BudgetError("measure denominators are too large to sample exactly");
    std::uint64_t acc = 0;
    for (const auto& p : probs) {
      mpz_class w = p.get_num() * (l / p.get_den());
      acc += w.get_ui();
      cum_.push_back(acc);
    }
    total_ = acc;
    limit_ = total_ * (UINT64_MAX / total_);
  }
  std::size_t draw(Rng& rng) const {
    std::uint64_t r;
    do r = rng();
    while (r >= limit_);
    r %= total_;
    return static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), r) - cum_.begin());
  }

 private:
  std::vector<std::uint64_t> cum_;
  std::uint64_t total_ = 1;
  std::uint64_t limit_ = 1;
};

std::vector<mpq_class> atom_probs(const Measure& mu) {
  std::vector<mpq_class> p;
  for (const auto& a : mu.atoms) p.push_back(a.prob);
  return p;
}

std::vector<mpq_class> weight_probs(const AffineCombination& c) {
  std::vector<mpq_class> p;
  for (const auto& w : c.weights) p.push_back(w.second);
  return p;
}

// Integer matrix of a projection, recovered from the images of unit exponent vectors.
struct Projector {
  std::vector<std::vector<std::int64_t>> rows;
  Projector(const GroupSpec& spec, const Homomorphism& h) {
    const std::size_t r = spec.rank();
    std::vector<std::vector<std::int64_t>> cols;
    for (std::size_t i = 0; i < r; ++i) {
      GroupElem e{spec.ring().zero(), ExpVec(r, 0)};
      e.exps[i] = 1;
      cols.push_back(project(spec, h, e));
    }
    const std::size_t t = cols.empty() ? 0 : cols[0].size();
    rows.assign(t, std::vector<std::int64_t>(r, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < t; ++j) rows[j][i] = cols[i][j];
  }
  void apply(const ExpVec& e, std::vector<std::int64_t>& out) const {
    out.assign(rows.size(), 0);
    for (std::size_t j = 0; j < rows.size(); ++j)
      for (std::size_t i = 0; i < e.size(); ++i) out[j] += rows[j][i] * e[i];
  }
};

class Simulator {
 public:
  Simulator(const GroupSpec& spec, const AffineCombination& mu)
      : spec_(&spec), mu_(&mu), atoms_(atom_probs(mu.base)), weights_(weight_probs(mu)) {
    validate(mu);
    for (const auto& a : mu.base.atoms)
      if (a.elem.exps.size() != spec.rank()) throw ContextError("measure atom does not belong to this group");
  }

  const GroupSpec& spec() const { return *spec_; }
  const AffineCombination& measure() const { return *mu_; }
  std::size_t atom_count() const { return mu_->base.atoms.size(); }

  // One step: weight index and the base atoms taken.
  std::size_t draw(Rng& rng, AtomIndices& atoms) const {
    const std::size_t w = weights_.draw(rng);
    atoms.clear();
    for (std::int64_t j = 0; j < mu_->weights[w].first; ++j) atoms.push_back(atoms_.draw(rng));
    return w;
  }

  // tuple index of a step in base atom_count().
  std::size_t tuple_index(const AtomIndices& atoms) const {
    std::size_t idx = 0;
    for (std::size_t a : atoms) idx = idx * atom_count() + a;
    return idx;
  }

  GroupElem product(const AtomIndices& atoms) const {
    GroupElem g = spec_->identity();
    for (std::size_t a : atoms) g = spec_->multiply(g, mu_->base.atoms[a].elem);
    return g;
  }

  // For every weight index, a table over atom tuples: 0, or 1/2 when the product
  // is delta1/delta2. Also accumulates the exact step probabilities of both.
  std::vector<std::vector<std::uint8_t>> delta_tables(const GroupElem& d1, const GroupElem& d2, mpq_class& p1,
                                                      mpq_class& p2) const {
    std::vector<std::vector<std::uint8_t>> tables;
    p1 = 0;
    p2 = 0;
    for (const auto& [j, wj] : mu_->weights) {
      std::size_t count = 1;
      for (std::int64_t i = 0; i < j; ++i) {
        count *= atom_count();
        if (count > kMaxTuples) throw BudgetError("too many atom tuples for an exact step table");
      }
      std::vector<std::uint8_t> table(count, 0);
      AtomIndices atoms(static_cast<std::size_t>(j), 0);
      for (std::size_t idx = 0; idx < count; ++idx) {
        std::size_t c = idx;
        for (std::size_t i = atoms.size(); i-- > 0; c /= atom_count()) atoms[i] = c % atom_count();
        const GroupElem g = product(atoms);
        mpq_class pr = wj;
        for (std::size_t a : atoms) pr *= mu_->base.atoms[a].prob;
        if (spec_->equals(g, d1)) {
          table[idx] = 1;
          p1 += pr;
        } else if (spec_->equals(g, d2)) {
          table[idx] = 2;
          p2 += pr;
        }
      }
      tables.push_back(std::move(table));
    }
    return tables;
  }

 private:
  const GroupSpec* spec_;
  const AffineCombination* mu_;
  Discrete atoms_;
  Discrete weights_;
};

// Torsion lamps: position plus a table of nonzero lamps.
struct LampAtom {
  std::vector<std::pair<ExpVec, std::int64_t>> lamps;
};

struct TrialConfig {
  const std::vector<std::vector<std::uint8_t>>* delta = nullptr;
  const Projector* lattice_proj = nullptr;
  std::vector<std::int64_t> lattice;
  const Projector* range_proj = nullptr;
  bool need_key = false;
  const AffineEvaluator* evaluator = nullptr;
  const std::vector<Affine>* atom_images = nullptr;
  const std::vector<LampAtom>* lamp_atoms = nullptr;
  std::int64_t lamp_modulus = 0;
};

struct TrialOut {
  std::int64_t k = 0, deltas = 0, fresh = 0, range = 0;
  std::string key;
};

std::string lamp_key(const ExpVec& pos, const std::unordered_map<ExpVec, std::int64_t, VecHash>& lamps) {
  std::vector<std::pair<ExpVec, std::int64_t>> v(lamps.begin(), lamps.end());
  std::sort(v.begin(), v.end());
  std::string out;
  auto put = [&](std::int64_t x) { out.append(reinterpret_cast<const char*>(&x), sizeof x); };
  for (auto e : pos) put(e);
  for (const auto& [e, c] : v) {
    for (auto x : e) put(x);
    put(c);
  }
  return out;
}

TrialOut run_trial(const Simulator& sim, const TrialConfig& cfg, std::int64_t n, std::uint64_t seed) {
  Rng rng(seed);
  const auto& atoms = sim.measure().base.atoms;
  TrialOut out;
  ExpVec exps(sim.spec().rank(), 0);
  ProjectionSet seen, range;
  std::vector<std::int64_t> proj;
  AtomIndices drawn;
  Affine state;
  const bool affine = cfg.need_key && cfg.evaluator;
  const bool lamps_mode = cfg.need_key && !affine;
  if (affine) state = cfg.evaluator->identity();
  std::unordered_map<ExpVec, std::int64_t, VecHash> lamps;
  if (lamps_mode && !cfg.lamp_atoms) throw Error("internal: lamp tables missing");

  for (std::int64_t i = 0; i < n; ++i) {
    bool fresh = false;
    if (cfg.delta) {
      cfg.lattice_proj->apply(exps, proj);
      if (in_sublattice(proj, cfg.lattice)) {
        fresh = seen.insert(proj).second;
        out.fresh += fresh;
      }
    }
    const std::size_t w = sim.draw(rng, drawn);
    for (std::size_t a : drawn) {
      if (affine) cfg.evaluator->compose_into(state, (*cfg.atom_images)[a]);
      if (lamps_mode) {
        for (const auto& [e, c] : (*cfg.lamp_atoms)[a].lamps) {
          ExpVec at = exp_add(exps, e);
          auto it = lamps.try_emplace(std::move(at), 0).first;
          it->second += c;
          if (cfg.lamp_modulus) it->second = ((it->second % cfg.lamp_modulus) + cfg.lamp_modulus) % cfg.lamp_modulus;
          if (it->second == 0) lamps.erase(it);
        }
      }
      const ExpVec& step = atoms[a].elem.exps;
      for (std::size_t c = 0; c < exps.size(); ++c) exps[c] += step[c];
    }
    if (cfg.delta) {
      const std::uint8_t flag = (*cfg.delta)[w][sim.tuple_index(drawn)];
      if (flag) {
        ++out.deltas;
        if (fresh) ++out.k;
      }
    }
    if (cfg.range_proj) {
      cfg.range_proj->apply(exps, proj);
      range.insert(proj);
    }
  }
  out.range = static_cast<std::int64_t>(range.size());
  if (affine) out.key = cfg.evaluator->key(exps, state);
  if (lamps_mode) out.key = lamp_key(exps, lamps);
  return out;
}

// Precomputed per-atom data for endpoint keys.
struct KeyData {
  std::optional<AffineEvaluator> evaluator;
  std::vector<Affine> images;
  std::vector<LampAtom> lamps;
  std::int64_t modulus = 0;

  KeyData(const GroupSpec& spec, const Measure& mu, std::uint64_t seed) {
    if (spec.ring().supports_fingerprint()) {
      evaluator.emplace(spec, seed);
      for (const auto& a : mu.atoms) images.push_back(evaluator->image(a.elem));
      return;
    }
    if (spec.ring().kind() != RingKind::FreeLaurent || !spec.lamp_modulus().fits_slong_p())
      throw DomainError("endpoint keys need fingerprints or a torsion lamplighter");
    modulus = spec.lamp_modulus().get_si();
    for (const auto& a : mu.atoms) {
      LampAtom la;
      for (const auto& [e, c] : a.elem.upper.num.terms()) la.lamps.push_back({e, mpz_class(c % modulus).get_si()});
      lamps.push_back(std::move(la));
    }
  }
  void fill(TrialConfig& cfg) const {
    cfg.need_key = true;
    if (evaluator) {
      cfg.evaluator = &*evaluator;
      cfg.atom_images = &images;
    } else {
      cfg.lamp_atoms = &lamps;
      cfg.lamp_modulus = modulus;
    }
  }
};

std::vector<TrialOut> run_trials(const Simulator& sim, const TrialConfig& cfg, std::int64_t n, std::int64_t trials,
                                 std::uint64_t master, unsigned threads) {
  if (n < 1) throw DomainError("walk length must be positive");
  if (trials < 1) throw DomainError("trial count must be positive");
  std::vector<TrialOut> out(static_cast<std::size_t>(trials));
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  auto work = [&](unsigned id) {
    for (std::int64_t t = id; t < trials; t += workers) out[t] = run_trial(sim, cfg, n, trial_seed(master, n, t));
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < workers; ++id) pool.emplace_back(work, id);
    for (auto& th : pool) th.join();
  }
  return out;
}

EntropyEstimate entropy_of_keys(const std::vector<TrialOut>& outs) {
  std::unordered_map<std::string, std::int64_t> freq;
  for (const auto& o : outs) ++freq[o.key];
  std::vector<std::int64_t> counts;
  for (const auto& [k, c] : freq) counts.push_back(c);
  return entropy_from_counts(counts);
}

}  // namespace

void validate(const Measure& mu) {
  if (mu.atoms.empty()) throw DomainError("measure has no atoms");
  mpq_class sum = 0;
  for (const auto& a : mu.atoms) {
    if (a.prob <= 0) throw DomainError("measure weights must be positive");
    sum += a.prob;
  }
  if (sum != 1) throw DomainError("measure weights must sum to 1");
}

void validate(const AffineCombination& w) {
  validate(w.base);
  if (w.weights.empty()) throw DomainError("combination has no weights");
  mpq_class sum = 0;
  for (const auto& [j, p] : w.weights) {
    if (j < 0) throw DomainError("convolution powers must be nonnegative");
    if (p <= 0) throw DomainError("combination weights must be positive");
    sum += p;
  }
  if (sum != 1) throw DomainError("combination weights must sum to 1");
}

Measure uniform_measure(const GroupSpec& spec, const std::vector<std::string>& words) {
  if (words.empty()) throw DomainError("measure has no atoms");
  Measure mu;
  const mpq_class p(1, static_cast<unsigned long>(words.size()));
  for (const auto& w : words) {
    Word word = parse_word(w);
    GroupElem e = word_to_elem(spec, word);
    mu.atoms.push_back({std::move(word), std::move(e), p});
  }
  return mu;
}

Measure uniform_generator_measure(const GroupSpec& spec) {
  std::vector<std::string> words;
  for (const auto& g : spec.symmetric_generators()) words.push_back(g.name);
  return uniform_measure(spec, words);
}

Measure point_mass(const GroupSpec& spec, std::string_view word) { return uniform_measure(spec, {std::string(word)}); }

AffineCombination as_combination(const Measure& mu) { return AffineCombination{mu, {{1, mpq_class(1)}}}; }

std::uint64_t trial_seed(std::uint64_t master, std::int64_t n, std::int64_t trial) {
  const std::uint64_t counter = (static_cast<std::uint64_t>(n) << 32) ^ static_cast<std::uint64_t>(trial);
  return splitmix64(splitmix64(master) ^ splitmix64(counter + 0x632BE59BD9B4E019ULL));
}

Trajectory sample_trajectory(const GroupSpec& spec, const AffineCombination& mu, std::int64_t n, std::uint64_t seed,
                             bool keep_states) {
  if (n < 1) throw DomainError("walk length must be positive");
  Simulator sim(spec, mu);
  Rng rng(seed);
  Trajectory t;
  GroupElem x = spec.identity();
  AtomIndices drawn;
  for (std::int64_t i = 0; i < n; ++i) {
    sim.draw(rng, drawn);
    t.increments.push_back(sim.product(drawn));
    if (keep_states) {
      x = spec.multiply(x, t.increments.back());
      t.states.push_back(x);
    }
  }
  return t;
}

Trajectory sample_trajectory(const GroupSpec& spec, const Measure& mu, std::int64_t n, std::uint64_t seed,
                             bool keep_states) {
  return sample_trajectory(spec, as_combination(mu), n, seed, keep_states);
}

std::vector<std::int64_t> fresh_delta_positions(const Trajectory& t, const DeltaPair& pair,
                                                const std::vector<std::int64_t>& lattice, const GroupSpec& spec) {
  const Projector proj(spec, pair.projection);
  ExpVec exps(spec.rank(), 0);
  ProjectionSet seen;
  std::vector<std::int64_t> p, out;
  for (std::size_t i = 0; i < t.increments.size(); ++i) {
    proj.apply(exps, p);
    const bool fresh = in_sublattice(p, lattice) && seen.insert(p).second;
    const GroupElem& y = t.increments[i];
    if (fresh && (spec.equals(y, pair.delta1) || spec.equals(y, pair.delta2))) out.push_back(static_cast<std::int64_t>(i));
    exps = exp_add(exps, y.exps);
  }
  return out;
}

std::int64_t fresh_delta_count(const Trajectory& t, const DeltaPair& pair, const std::vector<std::int64_t>& lattice,
                               const GroupSpec& spec) {
  return static_cast<std::int64_t>(fresh_delta_positions(t, pair, lattice, spec).size());
}

double two_point_entropy(const mpq_class& p1, const mpq_class& p2) {
  if (p1 < 0 || p2 < 0 || p1 + p2 == 0) throw DomainError("two-point law needs nonnegative weights with positive sum");
  const double q = mpq_class(p1 / (p1 + p2)).get_d();
  auto term = [](double x) { return x > 0 ? -x * std::log(x) : 0.0; };
  return term(q) + term(1.0 - q);
}

mpq_class step_probability(const GroupSpec& spec, const AffineCombination& mu, const GroupElem& g) {
  Simulator sim(spec, mu);
  mpq_class p1, p2;
  // delta2 = delta1 makes the second slot unreachable.
  sim.delta_tables(g, g, p1, p2);
  return p1;
}

EntropyEstimate entropy_from_counts(const std::vector<std::int64_t>& counts) {
  std::vector<std::int64_t> c;
  for (auto x : counts)
    if (x > 0) c.push_back(x);
  std::sort(c.begin(), c.end());
  EntropyEstimate e;
  for (auto x : c) e.trials += x;
  if (e.trials == 0) return e;
  const double T = static_cast<double>(e.trials);
  for (auto x : c) {
    const double p = static_cast<double>(x) / T;
    e.plugin -= p * std::log(p);
  }
  e.distinct = c.size();
  e.miller_madow = e.plugin + (static_cast<double>(e.distinct) - 1.0) / (2.0 * T);
  return e;
}

WalkStats run_walk_experiment(const GroupSpec& spec, const WalkExperiment& exp, std::int64_t n, std::int64_t trials,
                              std::uint64_t master_seed) {
  Simulator sim(spec, exp.measure);
  mpq_class p1, p2;
  const auto tables = sim.delta_tables(exp.pair.delta1, exp.pair.delta2, p1, p2);
  const Projector proj(spec, exp.pair.projection);
  if (exp.lattice.size() != proj.rows.size()) throw ContextError("lattice dimension does not match the projection");

  TrialConfig cfg;
  cfg.delta = &tables;
  cfg.lattice_proj = &proj;
  cfg.lattice = exp.lattice;
  cfg.range_proj = &proj;
  std::optional<KeyData> keys;
  if (exp.endpoint_entropy) {
    keys.emplace(spec, exp.measure.base, splitmix64(master_seed ^ 0x656E64706F696E74ULL));
    keys->fill(cfg);
  }
  const auto outs = run_trials(sim, cfg, n, trials, master_seed, exp.threads);

  WalkStats s;
  s.n = n;
  s.trials = trials;
  s.seed = master_seed;
  std::int64_t ksum = 0, rsum = 0;
  for (const auto& o : outs) {
    s.fresh_delta_counts.push_back(o.k);
    s.delta_increments.push_back(o.deltas);
    s.fresh_visits.push_back(o.fresh);
    s.range_distinct.push_back(o.range);
    ksum += o.k;
    rsum += o.range;
  }
  const double nt = static_cast<double>(n) * static_cast<double>(trials);
  s.mean_rate = static_cast<double>(ksum) / nt;
  s.h_nu = p1 + p2 > 0 ? two_point_entropy(p1, p2) : 0.0;
  s.lower_bound_rate = delta_restriction_lower_bound(s);
  s.range_fraction = static_cast<double>(rsum) / nt;
  s.delta_mass = mpq_class(p1 + p2).get_d();
  if (exp.endpoint_entropy) s.endpoint_entropy = entropy_of_keys(outs);
  return s;
}

double delta_restriction_lower_bound(const WalkStats& stats) { return stats.mean_rate * stats.h_nu; }

EntropyEstimate endpoint_entropy_estimate(const GroupSpec& spec, const AffineCombination& mu, std::int64_t n,
                                          std::int64_t trials, std::uint64_t seed, unsigned threads) {
  Simulator sim(spec, mu);
  KeyData keys(spec, mu.base, splitmix64(seed ^ 0x656E64706F696E74ULL));
  TrialConfig cfg;
  keys.fill(cfg);
  return entropy_of_keys(run_trials(sim, cfg, n, trials, seed, threads));
}

double range_stats(const GroupSpec& spec, const AffineCombination& mu, const Homomorphism& projection, std::int64_t n,
                   std::int64_t trials, std::uint64_t seed, unsigned threads) {
  Simulator sim(spec, mu);
  const Projector proj(spec, projection);
  TrialConfig cfg;
  cfg.range_proj = &proj;
  std::int64_t sum = 0;
  for (const auto& o : run_trials(sim, cfg, n, trials, seed, threads)) sum += o.range;
  return static_cast<double>(sum) / (static_cast<double>(n) * static_cast<double>(trials));
}

SemigroupPair build_delta_pair_via_semigroup(const Measure& mu, const GroupSpec& spec, std::size_t max_len) {
  validate(mu);
  struct Cand {
    Word word;
    GroupElem elem;
    std::size_t len;
  };
  std::vector<Cand> cands;
  std::vector<Cand> layer;
  for (const auto& a : mu.atoms) layer.push_back({a.word, a.elem, 1});
  for (std::size_t len = 1; len <= max_len && !layer.empty(); ++len) {
    cands.insert(cands.end(), layer.begin(), layer.end());
    if (len == max_len) break;
    std::vector<Cand> next;
    for (const auto& c : layer) {
      for (const auto& a : mu.atoms) {
        if (next.size() >= 4096) throw BudgetError("semigroup search budget exhausted");
        Word w = c.word;
        w.insert(w.end(), a.word.begin(), a.word.end());
        next.push_back({std::move(w), spec.multiply(c.elem, a.elem), len + 1});
      }
    }
    layer = std::move(next);
  }
  for (std::size_t i = 0; i < cands.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const GroupElem ab = spec.multiply(cands[i].elem, cands[j].elem);
      const GroupElem ba = spec.multiply(cands[j].elem, cands[i].elem);
      if (spec.equals(ab, ba)) continue;
      SemigroupPair out;
      out.s = cands[i].word;
      out.s_prime = cands[j].word;
      out.pair = make_delta_pair(spec, ab, ba, spec.default_projection());
      const std::int64_t power = static_cast<std::int64_t>(cands[i].len + cands[j].len);
      out.combination = AffineCombination{mu, {{1, mpq_class(1, 2)}, {power, mpq_class(1, 2)}}};
      return out;
    }
  }
  throw BudgetError("every pair of short semigroup elements commutes");
}

SwapCheck swap_endpoint_check(const GroupSpec& spec, const Trajectory& t, const DeltaPair& pair,
                              const std::vector<std::int64_t>& lattice, std::int64_t cap) {
  const std::vector<std::int64_t> pos = fresh_delta_positions(t, pair, lattice, spec);
  SwapCheck out;
  out.k = static_cast<std::int64_t>(pos.size());
  if (out.k > cap) throw BudgetError("too many marked positions for the swap check");
  const std::size_t k = pos.size();
  const std::size_t n = t.increments.size();

  // Conjugators h_r = X_{p_r} delta1 along the all-delta1 path. When delta1^-1 delta2
  // is unipotent its conjugate by h depends only on the exponents of h, so the
  // diagonal element with those exponents stands in for h_r and the upper entries
  // (large in long walks) are never formed.
  std::vector<GroupElem> h;
  std::vector<GroupElem> segments;  // exact products between marked steps, when needed
  const bool exact_endpoints = !spec.ring().supports_fingerprint();
  const bool diagonal_conjugators = spec.is_unipotent(spec.multiply(spec.inverse(pair.delta1), pair.delta2));
  {
    GroupElem cur = spec.identity(), seg = spec.identity();
    ExpVec cur_exps(spec.rank(), 0);
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (r < k && static_cast<std::size_t>(pos[r]) == i) {
        if (diagonal_conjugators) {
          cur_exps = exp_add(cur_exps, pair.delta1.exps);
          h.push_back(GroupElem{spec.ring().zero(), cur_exps});
        } else {
          h.push_back(spec.multiply(cur, pair.delta1));
          cur = h.back();
        }
        if (exact_endpoints) segments.push_back(seg);
        seg = spec.identity();
        ++r;
        continue;
      }
      if (r < k) {
        if (diagonal_conjugators) {
          cur_exps = exp_add(cur_exps, t.increments[i].exps);
        } else {
          cur = spec.multiply(cur, t.increments[i]);
        }
      }
      if (exact_endpoints) seg = spec.multiply(seg, t.increments[i]);
    }
    if (exact_endpoints) segments.push_back(seg);
  }
  out.cube_independent = check_cube_along_image(pair, h, spec).independent;

  const std::size_t total = std::size_t{1} << k;
  if (exact_endpoints) {
    std::unordered_set<std::string> keys;
    for (std::size_t mask = 0; mask < total; ++mask) {
      GroupElem g = segments[0];
      for (std::size_t r = 0; r < k; ++r) {
        g = spec.multiply(g, (mask >> r) & 1 ? pair.delta2 : pair.delta1);
        g = spec.multiply(g, segments[r + 1]);
      }
      keys.insert(spec.exact_key(g));
    }
    out.distinct_endpoints = keys.size();
    return out;
  }

  AffineEvaluator ev(spec, kSwapSeed);
  std::vector<Affine> seg_images;
  Affine seg = ev.identity();
  for (std::size_t i = 0, r = 0; i < n; ++i) {
    if (r < k && static_cast<std::size_t>(pos[r]) == i) {
      seg_images.push_back(seg);
      seg = ev.identity();
      ++r;
      continue;
    }
    ev.compose_into(seg, ev.image(t.increments[i]));
  }
  seg_images.push_back(seg);
  const Affine d1 = ev.image(pair.delta1), d2 = ev.image(pair.delta2);
  ExpVec end_exps(spec.rank(), 0);
  for (const auto& y : t.increments) end_exps = exp_add(end_exps, y.exps);
  // Endpoints share their exponents; bucket by fingerprint, confirm collisions exactly.
  std::unordered_map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t mask = 0; mask < total; ++mask) {
    Affine a = seg_images[0];
    for (std::size_t r = 0; r < k; ++r) {
      ev.compose_into(a, (mask >> r) & 1 ? d2 : d1);
      ev.compose_into(a, seg_images[r + 1]);
    }
    buckets[ev.key(end_exps, a)].push_back(mask);
  }
  auto exact_endpoint = [&](std::size_t mask) {
    GroupElem g = spec.identity();
    for (std::size_t i = 0, r = 0; i < n; ++i) {
      if (r < k && static_cast<std::size_t>(pos[r]) == i) {
        g = spec.multiply(g, (mask >> r) & 1 ? pair.delta2 : pair.delta1);
        ++r;
      } else {
        g = spec.multiply(g, t.increments[i]);
      }
    }
    return g;
  };
  for (const auto& [key, masks] : buckets) {
    if (masks.size() == 1) {
      ++out.distinct_endpoints;
      continue;
    }
    std::vector<GroupElem> reps;
    for (std::size_t m : masks) {
      GroupElem g = exact_endpoint(m);
      if (std::none_of(reps.begin(), reps.end(), [&](const GroupElem& r) { return spec.equals(r, g); }))
        reps.push_back(std::move(g));
    }
    out.distinct_endpoints += reps.size();
  }
  return out;
}

void write_walk_csv(std::ostream& out, const std::vector<WalkStats>& stats, bool header) {
  if (header) out << "seed,n,trial,k_n,delta_increments,fresh_visits,range_distinct\n";
  for (const auto& s : stats)
    for (std::int64_t t = 0; t < s.trials; ++t)
      out << trial_seed(s.seed, s.n, t) << ',' << s.n << ',' << t << ',' << s.fresh_delta_counts[t] << ','
          << s.delta_increments[t] << ',' << s.fresh_visits[t] << ',' << s.range_distinct[t] << '\n';
}

}  // namespace blab
