#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blab/laurent.hpp"

namespace blab {

// p = sign * x^monomial_factor * Phi_n(x^direction), direction primitive.
struct GenCycDecomposition {
  ExpVec monomial_factor;
  ExpVec direction;
  std::int64_t cyclotomic_index = 1;
  int sign = 1;
};

LaurentPoly reconstruct(const GenCycDecomposition& d);

// n-th cyclotomic polynomial in one variable.
LaurentPoly cyclotomic_polynomial(std::int64_t n);
// Indices n with phi(n) = degree, searched up to 3*deg*loglog(deg+16) + 30.
std::vector<std::int64_t> cyclotomic_indices_of_degree(std::int64_t degree);

std::optional<GenCycDecomposition> detect_generalized_cyclotomic(const LaurentPoly& p);

// True when no flat Laurent polynomial is divisible by p: p has content > 1 or its
// lex-leading or lex-trailing coefficient is not +-1.
bool leading_obstruction(const LaurentPoly& p);

enum class SppStatus { HasSPP, NoSPP, Unknown };
enum class CertificateKind { None, LeadingObstruction, RootModulus, ExhaustiveBound, Cyclotomic };

std::string to_string(SppStatus s);
std::string to_string(CertificateKind c);

struct SppVerdict {
  SppStatus status = SppStatus::Unknown;
  std::optional<std::int64_t> N;
  CertificateKind certificate = CertificateKind::None;
  // RootModulus: certified lower bound and floating estimate of
  // rho = max(max |lambda|, 1 / min |lambda|) over the complex roots.
  double rho_lower = 0.0;
  double rho_estimate = 0.0;
  // A flat u with p | u(x^M) for every M in witness_N (for NoSPP: every M >= 1,
  // checked exactly for the listed ones).
  std::optional<LaurentPoly> counterexample;
  std::vector<std::int64_t> witness_N;
  std::optional<GenCycDecomposition> decomposition;
  // Unknown: number of flat candidates searched.
  std::uint64_t bound = 0;
  std::string note;
};

// Complete decision for a polynomial in one variable (nvars() == 1).
SppVerdict univariate_spp_decide(const LaurentPoly& p);

// Exponent box lo[i] <= e[i] <= hi[i].
struct SupportBox {
  ExpVec lo;
  ExpVec hi;
  std::uint64_t cells() const;
};
SupportBox cube_box(std::size_t nvars, std::int64_t max_exponent);

constexpr std::uint64_t kDefaultSearchCap = 3486784401ULL;  // 3^20

// First flat u with support in the box (all 3^cells - 1 candidates in
// lexicographic order of sign vectors, cells in descending lex order of
// exponents, signs ordered 0 < +1 < -1) with p | u(x^N); nullopt when none.
std::optional<LaurentPoly> spp_search_counterexample(const LaurentPoly& p, std::int64_t N, const SupportBox& box,
                                                     std::uint64_t cap = kDefaultSearchCap);

struct NineProduct {
  LaurentPoly poly;             // in x, y
  bool matches = false;         // equals the stated ten-term polynomial
  bool grouping_agrees = false; // direct nine-fold product equals the grouped form
};
// prod_{i,j=0..2} (1 + z^i x + z^j y) over Z[z]/(z^2 + z + 1).
NineProduct verify_nine_product();
// 1 + 3x^3 + 3y^3 + 3x^6 + 3y^6 + 3x^6y^3 + 3x^3y^6 + x^9 + y^9 - 21x^3y^3.
LaurentPoly nine_product_expected();

struct BaumslagTerm {
  std::int64_t a = 0, b = 0, c = 0, d = 0;
  int sign = 1;
};
// sum sign * Y1^{3a} (Y1+1)^{3b} Y2^c (Y2+1)^d in Z[Y1, Y2].
LaurentPoly baumslag_flat_expansion(const std::vector<BaumslagTerm>& pattern);
// Expands and tests f != 0. Throws DomainError for an empty pattern, a negative
// exponent, a sign other than +-1, or two terms sharing (a, b, c).
bool verify_baumslag_flat_nonzero(const std::vector<BaumslagTerm>& pattern);
// A valid pattern drawn from mt19937_64(seed): 1 to 12 terms with a, b <= 2 and
// c, d <= 3, distinct (a, b, c), random signs.
std::vector<BaumslagTerm> random_baumslag_pattern(std::uint64_t seed);

struct CertifyOptions {
  std::uint64_t budget = 19683;  // 3^9
  std::optional<SupportBox> box;  // default: largest {0..m}^k within budget
};

// Multivariate semi-decision: generalized cyclotomic gives NoSPP, the leading
// obstruction gives HasSPP(1), otherwise the flat search at N decides nothing
// beyond the box: Unknown, with any counterexample found for this N attached.
SppVerdict spp_certify_pair(const LaurentPoly& p, std::int64_t N, const CertifyOptions& options = {});

// Front end: polynomials involving at most one variable go to the univariate
// decision, the rest to spp_certify_pair.
SppVerdict spp_decide(const LaurentPoly& p, std::int64_t N, const CertifyOptions& options = {});

}  // namespace blab
