#pragma once

// Shared helpers for the unit test binaries.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "blab/laurent.hpp"

namespace blab::testutil {

inline LaurentPoly random_poly(std::mt19937_64& rng, std::size_t nvars, int max_terms, int lo, int hi,
                               int coeff_bound, const mpz_class& modulus = 0) {
  std::uniform_int_distribution<int> nterms(0, max_terms);
  std::uniform_int_distribution<int> expo(lo, hi);
  std::uniform_int_distribution<int> coef(-coeff_bound, coeff_bound);
  LaurentPoly p(nvars, modulus);
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    ExpVec e(nvars);
    for (auto& v : e) v = expo(rng);
    p.add_term(e, coef(rng));
  }
  return p;
}

inline LaurentPoly nonzero_random_poly(std::mt19937_64& rng, std::size_t nvars, int max_terms, int lo, int hi,
                                       int coeff_bound, const mpz_class& modulus = 0) {
  while (true) {
    LaurentPoly p = random_poly(rng, nvars, max_terms, lo, hi, coeff_bound, modulus);
    if (!p.is_zero()) return p;
  }
}

// Solves f = p * q for q over the rationals by Gaussian elimination on the box of
// exponents a quotient must occupy, then checks the solution is integral.
// Independent of the pseudo-division code path.
inline bool brute_force_divides(const LaurentPoly& p, const LaurentPoly& f) {
  if (f.is_zero()) return true;
  const std::size_t k = p.nvars();
  ExpVec lo(k), hi(k);
  for (std::size_t v = 0; v < k; ++v) {
    lo[v] = min_degree_in(f, v) - min_degree_in(p, v);
    hi[v] = max_degree_in(f, v) - max_degree_in(p, v);
    if (hi[v] < lo[v]) return false;
  }
  std::vector<ExpVec> cells;
  ExpVec cur = lo;
  while (true) {
    cells.push_back(cur);
    std::size_t v = 0;
    while (v < k) {
      if (++cur[v] <= hi[v]) break;
      cur[v] = lo[v];
      ++v;
    }
    if (v == k) break;
  }
  // Rows indexed by exponents of products.
  std::map<ExpVec, std::size_t> row_of;
  for (const auto& c : cells)
    for (const auto& [e, a] : p.terms()) row_of.try_emplace(exp_add(c, e), row_of.size());
  for (const auto& [e, a] : f.terms())
    if (!row_of.count(e)) return false;
  const std::size_t rows = row_of.size(), cols = cells.size();
  std::vector<std::vector<mpq_class>> m(rows, std::vector<mpq_class>(cols + 1, 0));
  for (std::size_t j = 0; j < cols; ++j)
    for (const auto& [e, a] : p.terms()) m[row_of.at(exp_add(cells[j], e))][j] += a;
  for (const auto& [e, a] : f.terms()) m[row_of.at(e)][cols] = a;
  std::vector<std::optional<std::size_t>> pivot_row_of_col(cols);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const mpq_class factor = m[i][c] / m[r][c];
      for (std::size_t j = c; j <= cols; ++j) m[i][j] -= factor * m[r][j];
    }
    pivot_row_of_col[c] = r;
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (m[i][cols] != 0) return false;
  for (std::size_t c = 0; c < cols; ++c) {
    if (!pivot_row_of_col[c]) continue;
    const std::size_t i = *pivot_row_of_col[c];
    mpq_class val = m[i][cols] / m[i][c];
    val.canonicalize();
    if (val.get_den() != 1) return false;
  }
  return true;
}

}  // namespace blab::testutil
