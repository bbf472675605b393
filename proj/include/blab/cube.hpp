#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "blab/groups.hpp"

namespace blab {

// Two elements with equal projection, delta1 != delta2.
struct DeltaPair {
  GroupElem delta1;
  GroupElem delta2;
  Homomorphism projection;
};

// Validates the pair invariants and throws DomainError when they fail.
DeltaPair make_delta_pair(const GroupSpec& spec, GroupElem delta1, GroupElem delta2, const Homomorphism& projection);

enum class CubeMethod { BruteForce, FlatCombination, LinearRank };
std::string to_string(CubeMethod m);

using EpsilonVector = std::vector<int>;

struct CubeReport {
  bool independent = false;
  std::size_t n = 0;
  // Two distinct epsilon vectors with equal products, present iff !independent.
  std::optional<std::pair<EpsilonVector, EpsilonVector>> witness;
  CubeMethod method = CubeMethod::BruteForce;
  // LinearRank only: false when the rank test could not decide.
  bool decided = true;
};

struct CubeOptions {
  std::size_t cap = 20;
  std::uint64_t seed = 0x6375626573ULL;
};

// gamma_1^e1 ... gamma_n^en for an epsilon vector.
GroupElem cube_product(const GroupSpec& spec, const std::vector<GroupElem>& gamma, const EpsilonVector& eps);

// Enumerates all 2^n products and reports whether they are pairwise distinct.
// Products are bucketed by hashes of their affine images (exact forms for torsion
// lamps). Equal elements always share a bucket and every bucket collision is
// rechecked with exact arithmetic, so both verdicts are exact.
CubeReport check_cube_independent(const std::vector<GroupElem>& gamma, const GroupSpec& spec,
                                  const CubeOptions& options = {});

// Cube independence of rho_i = h_i (delta1^-1 delta2) h_i^-1; the h_i must have
// pairwise distinct projections.
CubeReport check_cube_along_image(const DeltaPair& pair, const std::vector<GroupElem>& h, const GroupSpec& spec,
                                  const CubeOptions& options = {});

// For commuting unipotent elements: independent iff no nonzero {-1,0,1}
// combination of the upper entries vanishes in the ring. 3^n patterns, n <= cap.
CubeReport flat_combination_check(const std::vector<RingElem>& uppers, const QuotientRing& ring,
                                  std::size_t cap = 12);
// Same check on group elements; throws DomainError on a non-unipotent input.
CubeReport flat_combination_check(const std::vector<GroupElem>& gamma, const GroupSpec& spec, std::size_t cap = 12);

// Sufficient criterion for large commuting unipotent families: if the canonical
// numerators over a common denominator are linearly independent over Q, no
// nonzero integer combination vanishes. Reports decided = false otherwise.
// Requires a ring with canonical forms and integer coefficients.
CubeReport linear_rank_check(const std::vector<RingElem>& uppers, const QuotientRing& ring);

struct SampledElement {
  Word word;
  GroupElem elem;
};

// Random words whose projections lie in the sublattice {v : lattice[i] | v[i]}
// (entries 0 or 1 leave a coordinate free) and are pairwise distinct.
// Throws BudgetError when `count` such words are not found within the budget.
std::vector<SampledElement> sample_sublattice_elements(const GroupSpec& spec, const Homomorphism& projection,
                                                       const std::vector<std::int64_t>& lattice, std::size_t count,
                                                       std::uint64_t seed, std::size_t max_attempts = 1'000'000);
// The same with lattice (N, ..., N) on pi.
std::vector<SampledElement> sample_sublattice_elements(const GroupSpec& spec, std::int64_t N, std::size_t count,
                                                       std::uint64_t seed);

bool in_sublattice(const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& lattice);

// Conjugates h delta h^-1 for h = M_1^{a_1} ... M_k^{a_k} with every a_i in
// {0, N, ..., N(n-1)}: n^k commuting elements of word length at most 2kN(n-1)+1.
std::vector<SampledElement> ball_conjugates(const GroupSpec& spec, std::int64_t n, std::int64_t N);

}  // namespace blab
