#include "blab/cube.hpp"

#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "blab/errors.hpp"
#include "blab/evaluation.hpp"

namespace blab {

namespace {

struct Hash128 {
  std::size_t operator()(const std::array<std::uint64_t, 2>& k) const { return static_cast<std::size_t>(k[0] ^ (k[1] * 31)); }
};

EpsilonVector mask_to_eps(std::uint64_t mask, std::size_t n) {
  EpsilonVector e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = static_cast<int>((mask >> i) & 1U);
  return e;
}

CubeReport independent_report(std::size_t n, CubeMethod method) {
  CubeReport r;
  r.independent = true;
  r.n = n;
  r.method = method;
  return r;
}

CubeReport witness_report(std::size_t n, CubeMethod method, EpsilonVector a, EpsilonVector b) {
  CubeReport r;
  r.independent = false;
  r.n = n;
  r.method = method;
  r.witness = std::make_pair(std::move(a), std::move(b));
  return r;
}

// Enumerates products depth-first over (eps_1, ..., eps_n), where bit i of the mask
// is eps_{i+1} and each level extends the prefix product by one factor. The second
// subtree of every node is visited in mirrored order, so leaves appear in
// reflected Gray-code order.
template <typename State, typename Extend, typename Leaf>
bool cube_dfs(std::size_t n, std::size_t depth, std::uint64_t mask, const State& prefix, const Extend& extend,
              const Leaf& leaf, bool mirrored = false) {
  if (depth == n) return leaf(mask, prefix);
  const std::uint64_t bit = std::uint64_t{1} << depth;
  if (!mirrored) {
    if (cube_dfs(n, depth + 1, mask, prefix, extend, leaf, false)) return true;
    return cube_dfs(n, depth + 1, mask | bit, extend(prefix, depth), extend, leaf, true);
  }
  if (cube_dfs(n, depth + 1, mask | bit, extend(prefix, depth), extend, leaf, false)) return true;
  return cube_dfs(n, depth + 1, mask, prefix, extend, leaf, true);
}

// Rank over F_p of the coefficient matrix of the given polynomials.
std::size_t modular_rank(const std::vector<LaurentPoly>& polys) {
  const PrimeField F((std::uint64_t{1} << 61) - 1);
  std::map<ExpVec, std::size_t> column;
  for (const auto& f : polys)
    for (const auto& [e, c] : f.terms()) column.emplace(e, column.size());
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto& f : polys) {
    std::vector<std::uint64_t> row(column.size(), 0);
    for (const auto& [e, c] : f.terms()) row[column[e]] = F.reduce(c);
    rows.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < column.size() && rank < rows.size(); ++col) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][col] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    const std::uint64_t inv = F.inv(rows[rank][col]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      const std::uint64_t f = F.mul(rows[r][col], inv);
      for (std::size_t c = col; c < column.size(); ++c) rows[r][c] = F.sub(rows[r][c], F.mul(f, rows[rank][c]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::string to_string(CubeMethod m) {
  switch (m) {
    case CubeMethod::BruteForce: return "brute_force";
    case CubeMethod::FlatCombination: return "flat_combination";
    case CubeMethod::LinearRank: return "linear_rank";
  }
  return "brute_force";
}

DeltaPair make_delta_pair(const GroupSpec& spec, GroupElem delta1, GroupElem delta2, const Homomorphism& projection) {
  if (spec.equals(delta1, delta2)) throw DomainError("delta pair elements must be distinct");
  if (project(spec, projection, delta1) != project(spec, projection, delta2))
    throw DomainError("delta pair elements must have equal projections");
  return DeltaPair{std::move(delta1), std::move(delta2), projection};
}

GroupElem cube_product(const GroupSpec& spec, const std::vector<GroupElem>& gamma, const EpsilonVector& eps) {
  if (eps.size() != gamma.size()) throw ContextError("epsilon vector length mismatch");
  GroupElem acc = spec.identity();
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (eps[i]) acc = spec.multiply(acc, gamma[i]);
  return acc;
}

CubeReport check_cube_independent(const std::vector<GroupElem>& gamma, const GroupSpec& spec,
                                  const CubeOptions& options) {
  const std::size_t n = gamma.size();
  if (n > options.cap || n > 40) throw BudgetError("cube size " + std::to_string(n) + " exceeds the cap");
  std::optional<CubeReport> found;

  if (spec.ring().supports_fingerprint()) {
    AffineEvaluator ev(spec, options.seed);
    struct Node {
      ExpVec exps;
      Affine a;
    };
    std::vector<Affine> images;
    for (const auto& g : gamma) images.push_back(ev.image(g));
    std::unordered_map<std::array<std::uint64_t, 2>, std::vector<std::uint64_t>, Hash128> seen;
    seen.reserve(std::size_t{1} << n);
    auto extend = [&](const Node& p, std::size_t i) {
      return Node{exp_add(p.exps, gamma[i].exps), ev.compose(p.a, images[i])};
    };
    auto leaf = [&](std::uint64_t mask, const Node& node) {
      auto& bucket = seen[ev.hash(node.exps, node.a)];
      for (std::uint64_t other : bucket) {
        EpsilonVector ea = mask_to_eps(other, n), eb = mask_to_eps(mask, n);
        if (spec.equals(cube_product(spec, gamma, ea), cube_product(spec, gamma, eb))) {
          found = witness_report(n, CubeMethod::BruteForce, std::move(ea), std::move(eb));
          return true;
        }
      }
      bucket.push_back(mask);
      return false;
    };
    cube_dfs(n, 0, 0, Node{ExpVec(spec.rank(), 0), ev.identity()}, extend, leaf);
  } else {
    ElementKeyer keyer(spec, options.seed);
    std::unordered_map<std::string, std::uint64_t> seen;
    auto extend = [&](const GroupElem& p, std::size_t i) { return spec.multiply(p, gamma[i]); };
    auto leaf = [&](std::uint64_t mask, const GroupElem& g) {
      auto [it, inserted] = seen.emplace(keyer.key(g), mask);
      if (inserted) return false;
      found = witness_report(n, CubeMethod::BruteForce, mask_to_eps(it->second, n), mask_to_eps(mask, n));
      return true;
    };
    cube_dfs(n, 0, 0, spec.identity(), extend, leaf);
  }
  return found ? *found : independent_report(n, CubeMethod::BruteForce);
}

CubeReport check_cube_along_image(const DeltaPair& pair, const std::vector<GroupElem>& h, const GroupSpec& spec,
                                  const CubeOptions& options) {
  std::set<std::vector<std::int64_t>> projections;
  for (const auto& g : h)
    if (!projections.insert(project(spec, pair.projection, g)).second)
      throw DomainError("conjugating elements must have distinct projections");
  const GroupElem bar = spec.multiply(spec.inverse(pair.delta1), pair.delta2);
  std::vector<GroupElem> rho;
  for (const auto& g : h) rho.push_back(spec.conjugate(g, bar));
  return check_cube_independent(rho, spec, options);
}

CubeReport flat_combination_check(const std::vector<RingElem>& uppers, const QuotientRing& ring, std::size_t cap) {
  const std::size_t n = uppers.size();
  if (n > cap) throw BudgetError("flat combination check capped at n = " + std::to_string(cap));
  // Sign patterns with first nonzero entry +1; c and -c give the same verdict.
  std::vector<int> signs(n, 0);
  std::optional<CubeReport> found;
  auto exact_zero = [&] {
    RingElem acc = ring.zero();
    for (std::size_t i = 0; i < n; ++i) {
      if (signs[i] > 0) acc = ring.add(acc, uppers[i]);
      if (signs[i] < 0) acc = ring.sub(acc, uppers[i]);
    }
    return ring.is_zero(acc);
  };
  auto record = [&] {
    EpsilonVector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = signs[i] > 0;
      b[i] = signs[i] < 0;
    }
    found = witness_report(n, CubeMethod::FlatCombination, std::move(a), std::move(b));
  };

  if (ring.supports_fingerprint()) {
    FingerprintContext ctx(ring, 0xF1A7ULL);
    const std::size_t C = FingerprintContext::kCoordinates;
    std::vector<std::vector<FiniteField::Elem>> vals(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < C; ++c) vals[i].push_back(ctx.evaluate(uppers[i], c));
    std::vector<FiniteField::Elem> zero;
    for (std::size_t c = 0; c < C; ++c) zero.push_back(ctx.points()[c].field.zero());
    // Depth-first over positions; `nonzero` tracks whether a sign was placed yet.
    auto dfs = [&](auto&& self, std::size_t i, const std::vector<FiniteField::Elem>& sum, bool nonzero) -> bool {
      if (i == n) {
        if (!nonzero) return false;
        for (std::size_t c = 0; c < C; ++c)
          if (!ctx.points()[c].field.is_zero(sum[c])) return false;
        if (!exact_zero()) return false;
        record();
        return true;
      }
      signs[i] = 0;
      if (self(self, i + 1, sum, nonzero)) return true;
      for (int s : {1, -1}) {
        if (s < 0 && !nonzero) break;
        std::vector<FiniteField::Elem> next = sum;
        for (std::size_t c = 0; c < C; ++c) {
          const FiniteField& f = ctx.points()[c].field;
          next[c] = s > 0 ? f.add(sum[c], vals[i][c]) : f.sub(sum[c], vals[i][c]);
        }
        signs[i] = s;
        if (self(self, i + 1, next, true)) return true;
      }
      signs[i] = 0;
      return false;
    };
    dfs(dfs, 0, zero, false);
  } else {
    auto dfs = [&](auto&& self, std::size_t i, const RingElem& sum, bool nonzero) -> bool {
      if (i == n) {
        if (!nonzero || !ring.is_zero(sum)) return false;
        record();
        return true;
      }
      signs[i] = 0;
      if (self(self, i + 1, sum, nonzero)) return true;
      for (int s : {1, -1}) {
        if (s < 0 && !nonzero) break;
        signs[i] = s;
        if (self(self, i + 1, s > 0 ? ring.add(sum, uppers[i]) : ring.sub(sum, uppers[i]), true)) return true;
      }
      signs[i] = 0;
      return false;
    };
    dfs(dfs, 0, ring.zero(), false);
  }
  return found ? *found : independent_report(n, CubeMethod::FlatCombination);
}

CubeReport flat_combination_check(const std::vector<GroupElem>& gamma, const GroupSpec& spec, std::size_t cap) {
  std::vector<RingElem> uppers;
  for (const auto& g : gamma) {
    if (!spec.is_unipotent(g)) throw DomainError("flat combination check needs unipotent elements");
    uppers.push_back(g.upper);
  }
  return flat_combination_check(uppers, spec.ring(), cap);
}

CubeReport linear_rank_check(const std::vector<RingElem>& uppers, const QuotientRing& ring) {
  if (!ring.has_canonical_form() || !ring.supports_fingerprint())
    throw DomainError("linear rank check needs canonical forms over the integers");
  const std::size_t n = uppers.size();
  std::vector<RingElem> canon;
  std::vector<std::int64_t> top(ring.den_factors().size(), 0);
  for (const auto& u : uppers) {
    canon.push_back(ring.canonicalize(u));
    for (std::size_t i = 0; i < canon.back().den.size(); ++i) top[i] = std::max(top[i], canon.back().den[i]);
  }
  LaurentPoly common = LaurentPoly::constant(ring.nvars(), 1);
  for (std::size_t i = 0; i < top.size(); ++i) common = common * pow(ring.den_factors()[i], static_cast<unsigned>(top[i]));
  const RingElem multiplier = ring.from_poly(common);
  std::vector<LaurentPoly> numerators;
  for (const auto& c : canon) {
    RingElem m = ring.mul(c, multiplier);
    for (std::int64_t e : m.den)
      if (e != 0) throw Error("internal: common denominator did not clear");
    numerators.push_back(m.num);
  }
  CubeReport r = independent_report(n, CubeMethod::LinearRank);
  if (modular_rank(numerators) < n) {
    r.independent = false;
    r.decided = false;
  }
  return r;
}

bool in_sublattice(const std::vector<std::int64_t>& v, const std::vector<std::int64_t>& lattice) {
  if (v.size() != lattice.size()) throw ContextError("lattice dimension mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t m = lattice[i] < 0 ? -lattice[i] : lattice[i];
    if (m > 1 && v[i] % m != 0) return false;
  }
  return true;
}

std::vector<SampledElement> sample_sublattice_elements(const GroupSpec& spec, const Homomorphism& projection,
                                                       const std::vector<std::int64_t>& lattice, std::size_t count,
                                                       std::uint64_t seed, std::size_t max_attempts) {
  if (lattice.size() != projection.target_rank) throw ContextError("lattice dimension mismatch");
  const auto gens = spec.generators();
  std::mt19937_64 rng(splitmix64(seed));
  std::set<std::vector<std::int64_t>> seen;
  std::vector<SampledElement> out;
  std::size_t max_len = 4;
  for (std::size_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    if (attempt > 0 && attempt % 2000 == 0) ++max_len;
    const std::size_t len = rng() % (max_len + 1);
    Word w;
    ExpVec exps(spec.rank(), 0);
    for (std::size_t i = 0; i < len; ++i) {
      const auto& g = gens[rng() % gens.size()];
      const std::int64_t p = (rng() & 1) ? 1 : -1;
      w.push_back({g.name, p});
      exps = exp_add(exps, exp_scale(g.elem.exps, p));
    }
    auto proj = project(spec, projection, GroupElem{spec.ring().zero(), exps});
    if (!in_sublattice(proj, lattice) || seen.count(proj)) continue;
    seen.insert(proj);
    GroupElem e = word_to_elem(spec, w);
    out.push_back({std::move(w), std::move(e)});
  }
  if (out.size() < count)
    throw BudgetError("found only " + std::to_string(out.size()) + " of " + std::to_string(count) +
                      " sublattice elements within the attempt budget");
  return out;
}

std::vector<SampledElement> sample_sublattice_elements(const GroupSpec& spec, std::int64_t N, std::size_t count,
                                                       std::uint64_t seed) {
  const Homomorphism pi = spec.default_projection();
  return sample_sublattice_elements(spec, pi, std::vector<std::int64_t>(pi.target_rank, N), count, seed);
}

std::vector<SampledElement> ball_conjugates(const GroupSpec& spec, std::int64_t n, std::int64_t N) {
  if (n < 1 || N < 1) throw DomainError("ball size and spacing must be positive");
  const auto& gens = spec.generators();
  const std::size_t k = gens.size() - 1;
  std::vector<std::int64_t> digits(k, 0);
  std::vector<SampledElement> out;
  while (true) {
    Word h;
    for (std::size_t i = 0; i < k; ++i)
      if (digits[i] != 0) h.push_back({gens[i + 1].name, digits[i] * N});
    Word w = h;
    w.push_back({"delta", 1});
    for (const auto& l : inverse_word(h)) w.push_back(l);
    GroupElem e = word_to_elem(spec, w);
    out.push_back({std::move(w), std::move(e)});
    std::size_t i = 0;
    while (i < k && ++digits[i] == n) digits[i++] = 0;
    if (i == k) break;
  }
  return out;
}

}  // namespace blab
