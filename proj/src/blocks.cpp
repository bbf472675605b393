#include "blab/blocks.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "blab/errors.hpp"
#include "blab/quotient.hpp"
#include "blab/spp.hpp"

namespace blab {

namespace {

bool signed_monomial(const LaurentPoly& f) {
  return f.size() == 1 && (f.terms().begin()->second == 1 || f.terms().begin()->second == -1);
}

// (i', j') lies strictly below (i, j) in the order <=_U.
bool strictly_below(std::size_t ip, std::size_t jp, std::size_t i, std::size_t j) {
  return ip <= i && jp >= j && (ip != i || jp != j);
}

bool witnesses(const UTMatrix& u, std::size_t i, std::size_t j) {
  if (u.at(i, j).is_zero()) return false;
  for (std::size_t ip = 0; ip <= i; ++ip)
    for (std::size_t jp = j; jp < u.size(); ++jp)
      if (ip < jp && strictly_below(ip, jp, i, j) && !u.at(ip, jp).is_zero()) return false;
  return true;
}

}  // namespace

UTMatrix::UTMatrix(std::size_t n, std::size_t nvars) : n_(n), nvars_(nvars), e_(n * n, LaurentPoly(nvars)) {}

UTMatrix UTMatrix::identity(std::size_t n, std::size_t nvars) {
  UTMatrix m(n, nvars);
  for (std::size_t i = 0; i < n; ++i) m.e_[i * n + i] = LaurentPoly::constant(nvars, 1);
  return m;
}

UTMatrix UTMatrix::from_rows(const std::vector<std::vector<LaurentPoly>>& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw DomainError("matrix must be nonempty");
  const std::size_t k = rows[0][0].nvars();
  UTMatrix m(n, k);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw DomainError("matrix must be square");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j].nvars() != k) throw ContextError("matrix entries use different variable sets");
      if (j < i && !rows[i][j].is_zero()) throw DomainError("matrix is not upper triangular");
      if (j == i && !signed_monomial(rows[i][j])) throw DomainError("diagonal entries must be signed monomials");
      m.e_[i * n + j] = rows[i][j];
    }
  }
  return m;
}

void UTMatrix::set(std::size_t i, std::size_t j, LaurentPoly v) { e_[i * n_ + j] = std::move(v); }

bool UTMatrix::is_unipotent() const {
  for (std::size_t i = 0; i < n_; ++i)
    if (at(i, i) != LaurentPoly::constant(nvars_, 1)) return false;
  return true;
}

std::string UTMatrix::key() const {
  std::string s;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i; j < n_; ++j) {
      s += to_string(at(i, j));
      s += '|';
    }
  return s;
}

UTMatrix operator*(const UTMatrix& a, const UTMatrix& b) {
  if (a.n_ != b.n_ || a.nvars_ != b.nvars_) throw ContextError("matrix shapes differ");
  UTMatrix c(a.n_, a.nvars_);
  for (std::size_t i = 0; i < a.n_; ++i)
    for (std::size_t j = i; j < a.n_; ++j) {
      LaurentPoly s(a.nvars_);
      for (std::size_t k = i; k <= j; ++k)
        if (!a.at(i, k).is_zero() && !b.at(k, j).is_zero()) s += a.at(i, k) * b.at(k, j);
      c.set(i, j, std::move(s));
    }
  return c;
}

UTMatrix UTMatrix::inverse() const {
  UTMatrix r(n_, nvars_);
  std::vector<LaurentPoly> dinv(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto& [e, c] = *at(i, i).terms().begin();
    dinv[i] = LaurentPoly::monomial(exp_neg(e), c);
    r.set(i, i, dinv[i]);
  }
  for (std::size_t d = 1; d < n_; ++d)
    for (std::size_t i = 0; i + d < n_; ++i) {
      const std::size_t j = i + d;
      LaurentPoly s(nvars_);
      for (std::size_t k = i + 1; k <= j; ++k)
        if (!at(i, k).is_zero()) s += at(i, k) * r.at(k, j);
      r.set(i, j, -(dinv[i] * s));
    }
  return r;
}

std::vector<BlockSpec> extract_blocks(const std::vector<NamedMatrix>& generators, const ExtractOptions& options) {
  if (generators.empty()) throw DomainError("no generators");
  const std::size_t n = generators[0].matrix.size();
  const std::size_t k = generators[0].matrix.nvars();
  for (const auto& g : generators)
    if (g.matrix.size() != n || g.matrix.nvars() != k) throw ContextError("generators differ in size or variables");

  std::vector<BlockSpec> blocks;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      BlockSpec b;
      b.i = i;
      b.j = j;
      for (const auto& g : generators) {
        const auto& [ei, ci] = *g.matrix.at(i, i).terms().begin();
        const auto& [ej, cj] = *g.matrix.at(j, j).terms().begin();
        b.diagonal_ratio_exponents.push_back(exp_sub(ei, ej));
        b.diagonal_ratio_signs.push_back(ci * cj > 0 ? 1 : -1);
      }
      LatticeRank lr = exponent_lattice_rank(b.diagonal_ratio_exponents);
      b.lattice_rank = lr.rank;
      b.lattice_basis = std::move(lr.basis);
      blocks.push_back(std::move(b));
    }

  std::vector<NamedMatrix> letters;
  for (const auto& g : generators) letters.push_back(g);
  for (const auto& g : generators) letters.push_back({g.name + "^-1", g.matrix.inverse()});

  std::size_t open = blocks.size();
  auto inspect = [&](const UTMatrix& m, const std::string& word) {
    if (!m.is_unipotent()) return;
    for (auto& b : blocks) {
      if (b.valid || !witnesses(m, b.i, b.j)) continue;
      b.valid = true;
      b.witness = word;
      --open;
    }
  };

  struct Node {
    UTMatrix m;
    std::string word;
  };
  std::unordered_set<std::string> seen{UTMatrix::identity(n, k).key()};
  std::vector<Node> frontier{{UTMatrix::identity(n, k), ""}};
  for (std::size_t len = 1; len <= options.max_word_length && open > 0 && !frontier.empty(); ++len) {
    std::vector<Node> next;
    for (const auto& node : frontier) {
      for (const auto& l : letters) {
        UTMatrix m = node.m * l.matrix;
        if (!seen.insert(m.key()).second) continue;
        std::string w = node.word.empty() ? l.name : node.word + " " + l.name;
        inspect(m, w);
        if (open == 0) return blocks;
        if (seen.size() >= options.max_elements) return blocks;
        next.push_back({std::move(m), std::move(w)});
      }
    }
    frontier = std::move(next);
  }
  return blocks;
}

LatticeRank exponent_lattice_rank(const std::vector<ExpVec>& vectors) {
  LatticeRank out;
  if (vectors.empty()) return out;
  const std::size_t cols = vectors[0].size();
  std::vector<std::vector<mpz_class>> a;
  for (const auto& v : vectors) {
    if (v.size() != cols) throw ContextError("exponent vectors differ in length");
    a.emplace_back(v.begin(), v.end());
  }
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < a.size(); ++c) {
    // Euclid on column c among rows >= row.
    while (true) {
      std::size_t best = a.size();
      for (std::size_t r = row; r < a.size(); ++r)
        if (a[r][c] != 0 && (best == a.size() || abs(a[r][c]) < abs(a[best][c]))) best = r;
      if (best == a.size()) break;
      std::swap(a[row], a[best]);
      bool done = true;
      for (std::size_t r = row + 1; r < a.size(); ++r) {
        if (a[r][c] == 0) continue;
        const mpz_class q = a[r][c] / a[row][c];
        for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= q * a[row][cc];
        if (a[r][c] != 0) done = false;
      }
      if (done) break;
    }
    if (row >= a.size() || a[row][c] == 0) continue;
    if (a[row][c] < 0)
      for (auto& x : a[row]) x = -x;
    for (std::size_t r = 0; r < row; ++r) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), a[r][c].get_mpz_t(), a[row][c].get_mpz_t());
      for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] -= q * a[row][cc];
    }
    ++row;
  }
  out.rank = row;
  for (std::size_t r = 0; r < row; ++r) {
    ExpVec v;
    for (const auto& x : a[r]) {
      if (!x.fits_slong_p()) throw DomainError("lattice basis entry overflows");
      v.push_back(x.get_si());
    }
    out.basis.push_back(std::move(v));
  }
  return out;
}

std::optional<LaurentPoly> bounded_relation_search(const std::vector<LaurentPoly>& values,
                                                   const RelationOptions& options) {
  const std::size_t m = values.size();
  if (m == 0) return std::nullopt;
  const std::size_t vn = values[0].nvars();
  for (const auto& v : values)
    if (v.nvars() != vn) throw ContextError("values use different variable sets");

  for (std::int64_t D = 1; D <= options.degree_bound; ++D) {
    // Monomials of total degree <= D, ascending lexicographic order.
    std::vector<ExpVec> monos;
    ExpVec e(m, 0);
    auto rec = [&](auto&& self, std::size_t pos, std::int64_t left) -> void {
      if (pos == m) {
        monos.push_back(e);
        return;
      }
      for (std::int64_t x = 0; x <= left; ++x) {
        e[pos] = x;
        self(self, pos + 1, left - x);
      }
      e[pos] = 0;
    };
    rec(rec, 0, D);
    std::sort(monos.begin(), monos.end());

    std::vector<LaurentPoly> images;
    std::map<ExpVec, std::size_t> rows;
    for (const auto& mono : monos) {
      LaurentPoly img = LaurentPoly::constant(vn, 1);
      for (std::size_t i = 0; i < m; ++i)
        if (mono[i]) img = img * pow(values[i], static_cast<unsigned>(mono[i]));
      for (const auto& [te, c] : img.terms()) rows.try_emplace(te, rows.size());
      images.push_back(std::move(img));
    }
    const std::size_t R = rows.size(), C = monos.size();
    std::vector<std::vector<mpq_class>> a(R, std::vector<mpq_class>(C, 0));
    for (std::size_t c = 0; c < C; ++c)
      for (const auto& [te, coef] : images[c].terms()) a[rows[te]][c] = coef;

    // Reduced row echelon form.
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
      std::size_t p = r;
      while (p < R && a[p][c] == 0) ++p;
      if (p == R) continue;
      std::swap(a[r], a[p]);
      const mpq_class inv = 1 / a[r][c];
      for (auto& x : a[r]) x *= inv;
      for (std::size_t q = 0; q < R; ++q) {
        if (q == r || a[q][c] == 0) continue;
        const mpq_class f = a[q][c];
        for (std::size_t cc = 0; cc < C; ++cc) a[q][cc] -= f * a[r][cc];
      }
      pivot_col.push_back(c);
      ++r;
    }
    if (pivot_col.size() == C) continue;
    std::size_t free = 0;
    for (std::size_t pi = 0; free < C; ++free) {
      if (pi < pivot_col.size() && pivot_col[pi] == free) {
        ++pi;
        continue;
      }
      break;
    }
    std::vector<mpq_class> v(C, 0);
    v[free] = 1;
    for (std::size_t pi = 0; pi < pivot_col.size(); ++pi) v[pivot_col[pi]] = -a[pi][free];
    mpz_class den = 1, g = 0;
    for (const auto& x : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> iv;
    for (const auto& x : v) {
      iv.push_back(mpz_class(x * den));
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), iv.back().get_mpz_t());
    }
    for (auto& x : iv) x /= g;
    // Sign: the lex-largest monomial with a nonzero coefficient is positive.
    for (std::size_t c = C; c-- > 0;)
      if (iv[c] != 0) {
        if (iv[c] < 0)
          for (auto& x : iv) x = -x;
        break;
      }
    LaurentPoly rel(m);
    for (std::size_t c = 0; c < C; ++c) {
      if (abs(iv[c]) > options.height_bound) return std::nullopt;
      if (iv[c] != 0) rel.add_term(monos[c], iv[c]);
    }
    return rel;
  }
  return std::nullopt;
}

GroupSpec modified_block_to_gk(const BlockSpec& block, std::size_t k, const std::optional<LaurentPoly>& relation) {
  if (!block.valid) throw DomainError("block is not valid");
  if (k == 0) throw DomainError("modified block needs at least one diagonal ratio");
  const VarNames names = default_var_names(k);
  if (relation) {
    if (relation->nvars() != k) throw ContextError("relation has the wrong number of variables");
    return GroupSpec::gkp(QuotientRing::single_poly(*relation), names);
  }
  return GroupSpec::gkp(QuotientRing::free_laurent(k), names);
}

BlocksReport analyze_blocks(const BlocksInput& input, const ExtractOptions& extract, const RelationOptions& relation) {
  BlocksReport report;
  report.blocks = extract_blocks(input.generators, extract);
  const std::size_t k = input.vars.size();
  if (input.specialization && input.specialization->values.size() != k)
    throw ContextError("specialization must give one value per variable");

  auto value_of = [&](const ExpVec& e) {
    if (!input.specialization) return LaurentPoly::monomial(e);
    const auto& sp = *input.specialization;
    LaurentPoly v = LaurentPoly::constant(sp.target_vars.size(), 1);
    for (std::size_t i = 0; i < k; ++i) {
      if (e[i] == 0) continue;
      LaurentPoly base = sp.values[i];
      if (e[i] < 0) {
        if (!signed_monomial(base)) throw DomainError("negative power of a non-monomial specialization value");
        const auto& [be, bc] = *base.terms().begin();
        base = LaurentPoly::monomial(exp_neg(be), bc);
      }
      v = v * pow(base, static_cast<unsigned>(e[i] < 0 ? -e[i] : e[i]));
    }
    return v;
  };

  for (const auto& b : report.blocks) {
    if (!b.valid) continue;
    BlockAnalysis a;
    a.block = b;
    for (const auto& e : b.diagonal_ratio_exponents)
      if (!exp_is_zero(e) && std::find(a.ratio_generators.begin(), a.ratio_generators.end(), e) == a.ratio_generators.end())
        a.ratio_generators.push_back(e);
    a.value_vars = input.specialization ? input.specialization->target_vars : input.vars;
    for (const auto& e : a.ratio_generators) a.values.push_back(value_of(e));
    a.relation = bounded_relation_search(a.values, relation);
    a.generalized_cyclotomic = a.relation && detect_generalized_cyclotomic(*a.relation).has_value();
    a.ring = a.relation ? "single_poly" : "free_laurent";
    report.valid.push_back(std::move(a));
  }
  return report;
}

}  // namespace blab
