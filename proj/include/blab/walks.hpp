#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blab/cube.hpp"
#include "blab/groups.hpp"

namespace blab {

struct Atom {
  Word word;
  GroupElem elem;
  mpq_class prob;
};

// Finitely supported probability measure on a group, with exact weights.
struct Measure {
  std::vector<Atom> atoms;
};

// Throws DomainError unless every weight is positive and they sum to exactly 1.
void validate(const Measure& mu);
Measure uniform_measure(const GroupSpec& spec, const std::vector<std::string>& words);
// Uniform on the generators and their inverses.
Measure uniform_generator_measure(const GroupSpec& spec);
Measure point_mass(const GroupSpec& spec, std::string_view word);

// sum_j w_j mu^{*j}: a step picks j with probability w_j, then takes j base steps.
struct AffineCombination {
  Measure base;
  std::vector<std::pair<std::int64_t, mpq_class>> weights;
};
void validate(const AffineCombination& w);
AffineCombination as_combination(const Measure& mu);

// Per-trial seed from the master seed, the step count and the trial index:
// splitmix64 applied in counter mode, so trials are independent of scheduling.
std::uint64_t trial_seed(std::uint64_t master, std::int64_t n, std::int64_t trial);

struct Trajectory {
  std::vector<GroupElem> increments;  // Y_1 .. Y_n
  std::vector<GroupElem> states;      // X_1 .. X_n, empty unless requested
};

// Exact increments, and exact states when keep_states is set. Storing states costs
// memory quadratic in n for groups with growing upper entries.
Trajectory sample_trajectory(const GroupSpec& spec, const AffineCombination& mu, std::int64_t n, std::uint64_t seed,
                             bool keep_states = true);
Trajectory sample_trajectory(const GroupSpec& spec, const Measure& mu, std::int64_t n, std::uint64_t seed,
                             bool keep_states = true);

// #{i < n : X_i lies in the sublattice, its projection is new among the earlier
// sublattice visits X_0 .. X_{i-1}, and Y_{i+1} is delta1 or delta2}, X_0 = identity.
std::int64_t fresh_delta_count(const Trajectory& t, const DeltaPair& pair, const std::vector<std::int64_t>& lattice,
                               const GroupSpec& spec);
// Trajectory indices i (0-based, i < n) counted by fresh_delta_count.
std::vector<std::int64_t> fresh_delta_positions(const Trajectory& t, const DeltaPair& pair,
                                                const std::vector<std::int64_t>& lattice, const GroupSpec& spec);

// Shannon entropy (natural log) of the two-point law nu(delta_i) proportional to
// mu(delta_i).
double two_point_entropy(const mpq_class& p1, const mpq_class& p2);
// Exact probability that one step of mu equals g.
mpq_class step_probability(const GroupSpec& spec, const AffineCombination& mu, const GroupElem& g);

struct EntropyEstimate {
  double plugin = 0.0;
  double miller_madow = 0.0;
  std::size_t distinct = 0;
  std::int64_t trials = 0;
  friend bool operator==(const EntropyEstimate&, const EntropyEstimate&) = default;
};
// Plug-in entropy of an empirical distribution given by counts, and the
// Miller-Madow value plugin + (K - 1) / (2T).
EntropyEstimate entropy_from_counts(const std::vector<std::int64_t>& counts);

struct WalkStats {
  std::int64_t n = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> fresh_delta_counts;  // k_n per trial
  std::vector<std::int64_t> delta_increments;    // #{i : Y_i in Delta} per trial
  std::vector<std::int64_t> fresh_visits;        // fresh sublattice visits among X_0..X_{n-1}
  std::vector<std::int64_t> range_distinct;      // #distinct projections of X_1..X_n
  double mean_rate = 0.0;
  double h_nu = 0.0;
  double lower_bound_rate = 0.0;
  std::optional<EntropyEstimate> endpoint_entropy;
  double range_fraction = 0.0;
  double delta_mass = 0.0;  // mu(Delta)

  friend bool operator==(const WalkStats&, const WalkStats&) = default;
};

struct WalkExperiment {
  AffineCombination measure;
  DeltaPair pair;
  std::vector<std::int64_t> lattice;  // divisibility pattern on pair.projection
  bool endpoint_entropy = true;
  unsigned threads = 1;
};

// Runs `trials` walks of n steps. Large upper entries are never formed: states are
// tracked by exponents plus affine fingerprint images, or by an explicit lamp
// table when the lamps are torsion.
WalkStats run_walk_experiment(const GroupSpec& spec, const WalkExperiment& exp, std::int64_t n, std::int64_t trials,
                              std::uint64_t master_seed);

// mean_rate * h_nu.
double delta_restriction_lower_bound(const WalkStats& stats);

EntropyEstimate endpoint_entropy_estimate(const GroupSpec& spec, const AffineCombination& mu, std::int64_t n,
                                          std::int64_t trials, std::uint64_t seed, unsigned threads = 1);
// Mean over trials of #distinct{project(X_i) : 1 <= i <= n} / n.
double range_stats(const GroupSpec& spec, const AffineCombination& mu, const Homomorphism& projection, std::int64_t n,
                   std::int64_t trials, std::uint64_t seed, unsigned threads = 1);

struct SemigroupPair {
  AffineCombination combination;
  DeltaPair pair;
  Word s, s_prime;
};
// Non-commuting s, s' among products of at most max_len atoms (earlier atoms
// first); delta1 = s s', delta2 = s' s, and the combination is
// 1/2 mu + 1/2 mu^{*(|s| + |s'|)}. Throws BudgetError when every candidate pair commutes.
SemigroupPair build_delta_pair_via_semigroup(const Measure& mu, const GroupSpec& spec, std::size_t max_len = 2);

struct SwapCheck {
  std::int64_t k = 0;
  std::size_t distinct_endpoints = 0;
  bool cube_independent = false;  // along-image family at the marked positions
};
// Replaces the increments at the fresh Delta positions by every choice in
// {delta1, delta2} and counts distinct endpoints. Throws BudgetError for k > cap.
SwapCheck swap_endpoint_check(const GroupSpec& spec, const Trajectory& t, const DeltaPair& pair,
                              const std::vector<std::int64_t>& lattice, std::int64_t cap = 12);

// CSV rows "seed,n,trial,k_n,delta_increments,fresh_visits,range_distinct".
void write_walk_csv(std::ostream& out, const std::vector<WalkStats>& stats, bool header = true);

}  // namespace blab
