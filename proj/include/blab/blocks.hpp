#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blab/groups.hpp"
#include "blab/laurent.hpp"

namespace blab {

// Upper-triangular n x n matrix over Z[x^±]. Diagonal entries must be ± monomials.
class UTMatrix {
 public:
  UTMatrix() = default;
  UTMatrix(std::size_t n, std::size_t nvars);
  static UTMatrix identity(std::size_t n, std::size_t nvars);
  // Rows of entries; throws DomainError if a strictly lower entry is nonzero or a
  // diagonal entry is not a signed monomial.
  static UTMatrix from_rows(const std::vector<std::vector<LaurentPoly>>& rows);

  std::size_t size() const { return n_; }
  std::size_t nvars() const { return nvars_; }
  const LaurentPoly& at(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, LaurentPoly v);

  bool is_unipotent() const;
  std::string key() const;

  friend UTMatrix operator*(const UTMatrix& a, const UTMatrix& b);
  UTMatrix inverse() const;
  friend bool operator==(const UTMatrix& a, const UTMatrix& b) { return a.n_ == b.n_ && a.e_ == b.e_; }

 private:
  std::size_t n_ = 0;
  std::size_t nvars_ = 0;
  std::vector<LaurentPoly> e_;
};

struct NamedMatrix {
  std::string name;
  UTMatrix matrix;
};

struct BlockSpec {
  std::size_t i = 0, j = 0;  // 0-based, i < j
  bool valid = false;
  // Word (generator names with ^-1) of a unipotent witness when valid.
  std::optional<std::string> witness;
  // Exponent vector of g_ii / g_jj, one per generator, and the sign of the ratio.
  std::vector<ExpVec> diagonal_ratio_exponents;
  std::vector<int> diagonal_ratio_signs;
  std::size_t lattice_rank = 0;
  std::vector<ExpVec> lattice_basis;
};

struct ExtractOptions {
  std::size_t max_word_length = 6;
  std::size_t max_elements = 200000;
};

// (i, j) <=_U (i', j') iff i <= i' and j >= j'. A block is valid when a unipotent
// product of at most max_word_length generators and inverses has a nonzero (i, j)
// entry and zeros at every other (i', j') <=_U (i, j).
std::vector<BlockSpec> extract_blocks(const std::vector<NamedMatrix>& generators, const ExtractOptions& options = {});

struct LatticeRank {
  std::size_t rank = 0;
  std::vector<ExpVec> basis;  // Hermite normal form rows
};
LatticeRank exponent_lattice_rank(const std::vector<ExpVec>& vectors);

struct RelationOptions {
  std::int64_t degree_bound = 4;
  std::int64_t height_bound = 100;
};
// Smallest total degree D <= degree_bound admitting a nonzero integer polynomial
// p(X_1..X_m) with exponents >= 0, degree <= D and p(values) = 0. Returns the
// primitive generator of the first kernel direction, signed so that the
// lex-largest monomial has a positive coefficient; none when the coefficients
// would exceed height_bound.
std::optional<LaurentPoly> bounded_relation_search(const std::vector<LaurentPoly>& values,
                                                   const RelationOptions& options = {});

// The modified block of a valid block is G_k(I); I is the ideal generated by the
// relation when one is given, otherwise the zero ideal (I itself is not computed).
GroupSpec modified_block_to_gk(const BlockSpec& block, std::size_t k, const std::optional<LaurentPoly>& relation);

// Formal variables mapped to values in another ring.
struct Specialization {
  VarNames target_vars;
  std::vector<LaurentPoly> values;  // one per formal variable
};

struct BlocksInput {
  VarNames vars;
  std::vector<NamedMatrix> generators;
  std::optional<Specialization> specialization;
};

struct BlockAnalysis {
  BlockSpec block;
  // Distinct nonzero diagonal ratios, and their values after specialization.
  std::vector<ExpVec> ratio_generators;
  std::vector<LaurentPoly> values;
  VarNames value_vars;
  std::optional<LaurentPoly> relation;  // in X1..Xm, m = ratio_generators.size()
  bool generalized_cyclotomic = false;
  std::string ring;  // "free_laurent" or "single_poly"
};

struct BlocksReport {
  std::vector<BlockSpec> blocks;
  std::vector<BlockAnalysis> valid;
};

BlocksReport analyze_blocks(const BlocksInput& input, const ExtractOptions& extract = {},
                            const RelationOptions& relation = {});

}  // namespace blab
