#include "blab/spp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>

#include "blab/errors.hpp"
#include "blab/quotient.hpp"

namespace blab {

namespace {

using Dense = std::vector<mpz_class>;  // low degree first

std::int64_t totient(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    r -= r / p;
  }
  if (n > 1) r -= r / n;
  return r;
}

std::int64_t cyclotomic_search_bound(std::int64_t degree) {
  const double d = static_cast<double>(std::max<std::int64_t>(degree, 1));
  return static_cast<std::int64_t>(3.0 * d * std::log(std::log(d + 16.0))) + 30;
}

Dense to_dense(const LaurentPoly& f) {
  // f must be a polynomial in one variable with nonnegative exponents.
  Dense d;
  for (const auto& [e, c] : f.terms()) {
    const auto k = static_cast<std::size_t>(e[0]);
    if (d.size() <= k) d.resize(k + 1, 0);
    d[k] = c;
  }
  return d;
}

// One Graeffe step: roots lambda -> lambda^2.
Dense graeffe(const Dense& g) {
  const std::size_t d = g.size() - 1;
  Dense even((d / 2) + 1, 0), odd(((d + 1) / 2) + 1, 0);
  for (std::size_t i = 0; i <= d; ++i) (i % 2 ? odd[i / 2] : even[i / 2]) = g[i];
  auto square = [](const Dense& a) {
    Dense r(a.size() * 2 - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < a.size(); ++j) r[i + j] += a[i] * a[j];
    return r;
  };
  Dense e2 = square(even), o2 = square(odd);
  Dense r(d + 1, 0);
  for (std::size_t i = 0; i < e2.size() && i <= d; ++i) r[i] += e2[i];
  for (std::size_t i = 0; i < o2.size() && i + 1 <= d; ++i) r[i + 1] -= o2[i];
  if (d % 2)
    for (auto& c : r) c = -c;
  return r;
}

double log_abs(const mpz_class& v) {
  long exp = 0;
  const double m = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(exp) * std::log(2.0);
}

double log_binomial(std::size_t n, std::size_t k) {
  return std::lgamma(static_cast<double>(n) + 1) - std::lgamma(static_cast<double>(k) + 1) -
         std::lgamma(static_cast<double>(n - k) + 1);
}

// Certified lower bound for log max|lambda| over roots of g (degree >= 1, g(0) != 0):
// after k Graeffe steps, |e_j| <= C(d, j) R^{j 2^k} for the root-power polynomial.
double log_max_root_lower(const Dense& g0, int rounds) {
  Dense g = g0;
  double best = -INFINITY;
  const std::size_t d = g.size() - 1;
  for (int k = 0; k <= rounds; ++k) {
    if (k > 0) g = graeffe(g);
    const double lead = log_abs(g[d]);
    const double scale = std::ldexp(1.0, k);
    for (std::size_t j = 1; j <= d; ++j) {
      if (g[d - j] == 0) continue;
      const double v = (log_abs(g[d - j]) - lead - log_binomial(d, j)) / (static_cast<double>(j) * scale);
      best = std::max(best, v);
    }
  }
  // Absorb floating error in the logarithms.
  return best - 1e-9;
}

// Floating estimate of log max|lambda| from the same iteration (no binomial loss).
double log_max_root_estimate(const Dense& g0, int rounds) {
  Dense g = g0;
  for (int k = 0; k < rounds; ++k) g = graeffe(g);
  const std::size_t d = g.size() - 1;
  double best = -INFINITY;
  const double lead = log_abs(g[d]);
  for (std::size_t j = 1; j <= d; ++j)
    if (g[d - j] != 0) best = std::max(best, (log_abs(g[d - j]) - lead) / (static_cast<double>(j) * std::ldexp(1.0, rounds)));
  return best;
}

LaurentPoly univariate(const std::vector<std::pair<std::int64_t, mpz_class>>& terms) {
  LaurentPoly f(1);
  for (const auto& [e, c] : terms) f.add_term({e}, c);
  return f;
}

std::uint64_t pow3_checked(std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < m; ++i) {
    if (r > UINT64_MAX / 3) return UINT64_MAX;
    r *= 3;
  }
  return r;
}

struct KeyHash {
  std::size_t operator()(const std::array<std::uint64_t, 2>& k) const { return static_cast<std::size_t>(k[0] ^ (k[1] << 1)); }
};

std::array<std::uint64_t, 2> hash_values(const std::vector<FiniteField::Elem>& v) {
  std::uint64_t h1 = 0x9E3779B97F4A7C15ULL, h2 = 0xBF58476D1CE4E5B9ULL;
  for (const auto& e : v)
    for (std::uint64_t w : e) {
      h1 = splitmix64(h1 ^ w);
      h2 = splitmix64(h2 + w + (h1 >> 3));
    }
  return {h1, h2};
}

int digit_sign(int digit) { return digit == 0 ? 0 : (digit == 1 ? 1 : -1); }

// Reduction modulo z^2 + z + 1 in Z[x, y, z] (z is variable 2).
LaurentPoly reduce_zeta(const LaurentPoly& f) {
  static const LaurentPoly m = parse("x3^2 + x3 + 1", default_var_names(3));
  if (max_degree_in(f, 2) < 2) return f;
  return pseudo_divide(f, m, 2).remainder;
}

}  // namespace

std::string to_string(SppStatus s) {
  switch (s) {
    case SppStatus::HasSPP: return "has_spp";
    case SppStatus::NoSPP: return "no_spp";
    case SppStatus::Unknown: return "unknown";
  }
  return "unknown";
}

std::string to_string(CertificateKind c) {
  switch (c) {
    case CertificateKind::None: return "none";
    case CertificateKind::LeadingObstruction: return "leading_obstruction";
    case CertificateKind::RootModulus: return "root_modulus";
    case CertificateKind::ExhaustiveBound: return "exhaustive_bound";
    case CertificateKind::Cyclotomic: return "cyclotomic";
  }
  return "none";
}

LaurentPoly cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw DomainError("cyclotomic index must be positive");
  static std::map<std::int64_t, LaurentPoly> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;
  LaurentPoly f = univariate({{n, 1}, {0, -1}});
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d) continue;
    auto q = exact_quotient(f, cyclotomic_polynomial(d));
    if (!q) throw Error("internal: cyclotomic recursion failed");
    f = *q;
  }
  cache.emplace(n, f);
  return f;
}

std::vector<std::int64_t> cyclotomic_indices_of_degree(std::int64_t degree) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1, bound = cyclotomic_search_bound(degree); n <= bound; ++n)
    if (totient(n) == degree) out.push_back(n);
  return out;
}

LaurentPoly reconstruct(const GenCycDecomposition& d) {
  const std::size_t k = d.direction.size();
  std::vector<LaurentPoly> image{LaurentPoly::monomial(d.direction)};
  LaurentPoly phi = compose(cyclotomic_polynomial(d.cyclotomic_index), image);
  return shift(scale(phi, d.sign), d.monomial_factor.empty() ? ExpVec(k, 0) : d.monomial_factor);
}

std::optional<GenCycDecomposition> detect_generalized_cyclotomic(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("detect_generalized_cyclotomic needs a nonzero polynomial");
  if (p.modulus() != 0 || p.size() < 2) return std::nullopt;
  const std::size_t k = p.nvars();
  const ExpVec base = p.trailing_term().first;
  ExpVec v;
  std::vector<std::pair<std::int64_t, mpz_class>> terms;
  for (const auto& [e, c] : p.terms()) {
    const ExpVec diff = exp_sub(e, base);
    if (v.empty() && !exp_is_zero(diff)) {
      std::int64_t g = 0;
      for (std::int64_t x : diff) g = std::gcd(g, x < 0 ? -x : x);
      v = diff;
      for (auto& x : v) x /= g;
    }
  }
  for (const auto& [e, c] : p.terms()) {
    const ExpVec diff = exp_sub(e, base);
    // diff = j * v with j >= 0 (base is lex-smallest and v lex-positive).
    std::int64_t j = 0;
    bool set = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (v[i] == 0) {
        if (diff[i] != 0) return std::nullopt;
        continue;
      }
      if (diff[i] % v[i] != 0) return std::nullopt;
      const std::int64_t ji = diff[i] / v[i];
      if (set && ji != j) return std::nullopt;
      j = ji;
      set = true;
    }
    terms.push_back({j, c});
  }
  const LaurentPoly f = univariate(terms);
  const std::int64_t deg = max_degree_in(f, 0);
  for (std::int64_t n : cyclotomic_indices_of_degree(deg)) {
    const LaurentPoly phi = cyclotomic_polynomial(n);
    for (int sign : {1, -1}) {
      if (f == scale(phi, sign)) return GenCycDecomposition{base, v, n, sign};
    }
  }
  return std::nullopt;
}

bool leading_obstruction(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("leading_obstruction needs a nonzero polynomial");
  if (content_and_primitive(p).content != 1) return true;
  auto unit = [](const mpz_class& c) { return c == 1 || c == -1; };
  return !unit(p.leading_term().second) || !unit(p.trailing_term().second);
}

SppVerdict univariate_spp_decide(const LaurentPoly& p) {
  if (p.is_zero()) throw DomainError("univariate_spp_decide needs a nonzero polynomial");
  if (p.nvars() != 1) throw ContextError("univariate_spp_decide needs a polynomial in one variable");
  if (p.modulus() != 0) throw DomainError("the spaced polynomial property is decided over the integers");
  SppVerdict v;
  const ExpVec mono = strip_monomial(p).first;
  LaurentPoly q = strip_monomial(p).second;
  if (q.is_unit_monomial()) {
    v.status = SppStatus::NoSPP;
    v.certificate = CertificateKind::Cyclotomic;
    v.counterexample = LaurentPoly::constant(1, 1);
    v.witness_N = {1, 2, 3, 5};
    v.note = "p is a unit and divides every polynomial";
    return v;
  }
  if (leading_obstruction(q)) {
    v.status = SppStatus::HasSPP;
    v.N = 1;
    v.certificate = CertificateKind::LeadingObstruction;
    v.note = "content or an extreme coefficient is not +-1, so no flat polynomial is a multiple";
    return v;
  }
  // Remove cyclotomic factors; what is left has a root off the unit circle
  // unless it is a unit (Kronecker).
  std::vector<std::pair<std::int64_t, int>> factors;
  for (std::int64_t n = 1, bound = cyclotomic_search_bound(max_degree_in(q, 0)); n <= bound; ++n) {
    if (totient(n) > max_degree_in(q, 0)) continue;
    int mult = 0;
    while (max_degree_in(q, 0) >= totient(n)) {
      auto r = exact_quotient(q, cyclotomic_polynomial(n));
      if (!r) break;
      q = *r;
      ++mult;
    }
    if (mult) factors.push_back({n, mult});
  }
  if (q.is_unit_monomial()) {
    // prod_{i<E} (t^{L 2^i} - 1) is flat and contains every Phi_n^E for n | L.
    std::int64_t L = 1;
    int E = 0;
    for (const auto& [n, m] : factors) {
      L = std::lcm(L, n);
      E = std::max(E, m);
    }
    LaurentPoly u = LaurentPoly::constant(1, 1);
    for (int i = 0; i < E; ++i) u = u * univariate({{L << i, 1}, {0, -1}});
    v.status = SppStatus::NoSPP;
    v.certificate = CertificateKind::Cyclotomic;
    v.counterexample = u;
    for (std::int64_t M : {1, 2, 3, 5}) {
      if (!divides(p, substitute_power(u, M))) throw Error("internal: cyclotomic counterexample failed to verify");
      v.witness_N.push_back(M);
    }
    if (factors.size() == 1 && factors[0].second == 1) {
      v.decomposition = GenCycDecomposition{mono, {1}, factors[0].first, p.leading_term().second > 0 ? 1 : -1};
      if (reconstruct(*v.decomposition) != p) v.decomposition.reset();
    }
    v.note = "all roots lie on the unit circle";
    return v;
  }
  // q(0) != 0 and its extreme coefficients are +-1; bound both max|lambda| and 1/min|lambda|.
  const LaurentPoly qs = strip_monomial(q).second;
  const Dense g = to_dense(qs);
  Dense rev(g.rbegin(), g.rend());
  constexpr int kRounds = 10;
  const double lo = std::max(log_max_root_lower(g, kRounds), log_max_root_lower(rev, kRounds));
  const double est = std::max(log_max_root_estimate(g, 14), log_max_root_estimate(rev, 14));
  v.rho_lower = std::exp(lo);
  v.rho_estimate = std::exp(est);
  if (!(lo > 0)) {
    v.status = SppStatus::Unknown;
    v.note = "root moduli could not be separated from 1 at the configured precision";
    return v;
  }
  std::int64_t N = 1;
  while (static_cast<double>(N) * lo <= std::log(2.0)) ++N;
  v.status = SppStatus::HasSPP;
  v.N = N;
  v.certificate = CertificateKind::RootModulus;
  v.note = "a root has modulus rho with rho^N > 2";
  return v;
}

std::uint64_t SupportBox::cells() const {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (hi[i] < lo[i]) return 0;
    n *= static_cast<std::uint64_t>(hi[i] - lo[i] + 1);
  }
  return n;
}

SupportBox cube_box(std::size_t nvars, std::int64_t max_exponent) {
  return SupportBox{ExpVec(nvars, 0), ExpVec(nvars, max_exponent)};
}

std::optional<LaurentPoly> spp_search_counterexample(const LaurentPoly& p, std::int64_t N, const SupportBox& box,
                                                     std::uint64_t cap) {
  if (p.is_zero()) throw DomainError("search needs a nonzero polynomial");
  if (p.modulus() != 0) throw DomainError("search works over the integers");
  if (N < 1) throw DomainError("N must be positive");
  const std::size_t k = p.nvars();
  if (box.lo.size() != k || box.hi.size() != k) throw ContextError("support box dimension mismatch");
  if (box.cells() == 0) throw DomainError("empty support box");
  if (box.cells() > 40) throw BudgetError("support box too large");
  const std::size_t m = box.cells();
  const std::uint64_t total = pow3_checked(m);
  if (total == UINT64_MAX || total - 1 > cap) throw BudgetError("search space exceeds the cap");

  std::vector<ExpVec> cells;
  ExpVec e = box.lo;
  while (true) {
    cells.push_back(e);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (e[i] < box.hi[i]) {
        ++e[i];
        for (std::size_t j = i + 1; j < k; ++j) e[j] = box.lo[j];
        break;
      }
      if (i == 0) {
        i = k + 1;
        break;
      }
    }
    if (i == k + 1 || k == 0) break;
  }
  std::sort(cells.begin(), cells.end(), std::greater<ExpVec>());

  auto build = [&](const std::vector<int>& digits) {
    LaurentPoly u(k);
    for (std::size_t i = 0; i < m; ++i)
      if (digits[i]) u.add_term(cells[i], digit_sign(digits[i]));
    return u;
  };
  auto is_counterexample = [&](const LaurentPoly& u) { return divides(p, substitute_power(u, N)); };

  if (content_and_primitive(p).content != 1) return std::nullopt;
  const LaurentPoly stripped = strip_monomial(p).second;
  if (stripped.is_constant()) {
    std::vector<int> digits(m, 0);
    digits[m - 1] = 1;
    return build(digits);
  }

  const QuotientRing ring = QuotientRing::single_poly(stripped);
  const FingerprintContext ctx(ring, 0x5350505345415243ULL);
  const std::size_t C = FingerprintContext::kCoordinates;
  std::vector<std::vector<FiniteField::Elem>> value(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t c = 0; c < C; ++c) value[i].push_back(ctx.unit_value(exp_scale(cells[i], N), c));
  auto field = [&](std::size_t c) -> const FiniteField& { return ctx.points()[c].field; };

  // Meet in the middle: the first na cells are the most significant digits.
  const std::size_t nb = m / 2, na = m - nb;
  std::unordered_map<std::array<std::uint64_t, 2>, std::vector<std::uint32_t>, KeyHash> table;
  std::vector<std::vector<int>> b_digits;
  std::vector<int> digits(m, 0);
  std::vector<FiniteField::Elem> zero;
  for (std::size_t c = 0; c < C; ++c) zero.push_back(field(c).zero());

  auto enumerate = [&](auto&& self, std::size_t pos, std::size_t end, const std::vector<FiniteField::Elem>& sum,
                       auto&& visit) -> bool {
    if (pos == end) return visit(sum);
    for (int d = 0; d < 3; ++d) {
      digits[pos] = d;
      std::vector<FiniteField::Elem> next = sum;
      if (d != 0)
        for (std::size_t c = 0; c < C; ++c)
          next[c] = d == 1 ? field(c).add(sum[c], value[pos][c]) : field(c).sub(sum[c], value[pos][c]);
      if (self(self, pos + 1, end, next, visit)) return true;
    }
    digits[pos] = 0;
    return false;
  };

  enumerate(enumerate, na, m, zero, [&](const std::vector<FiniteField::Elem>& sum) {
    table[hash_values(sum)].push_back(static_cast<std::uint32_t>(b_digits.size()));
    b_digits.emplace_back(digits.begin() + static_cast<std::ptrdiff_t>(na), digits.end());
    return false;
  });

  std::optional<LaurentPoly> found;
  enumerate(enumerate, 0, na, zero, [&](const std::vector<FiniteField::Elem>& sum) {
    std::vector<FiniteField::Elem> target;
    for (std::size_t c = 0; c < C; ++c) target.push_back(field(c).neg(sum[c]));
    auto it = table.find(hash_values(target));
    if (it == table.end()) return false;
    const bool a_zero = std::all_of(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(na), [](int d) { return d == 0; });
    for (std::uint32_t idx : it->second) {
      std::vector<int> full(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(na));
      full.insert(full.end(), b_digits[idx].begin(), b_digits[idx].end());
      if (a_zero && std::all_of(full.begin(), full.end(), [](int d) { return d == 0; })) continue;
      LaurentPoly u = build(full);
      if (is_counterexample(u)) {
        found = std::move(u);
        return true;
      }
    }
    return false;
  });
  return found;
}

LaurentPoly nine_product_expected() {
  return parse("1 + 3*x^3 + 3*y^3 + 3*x^6 + 3*y^6 + 3*x^6*y^3 + 3*x^3*y^6 + x^9 + y^9 - 21*x^3*y^3", {"x", "y"});
}

NineProduct verify_nine_product() {
  const VarNames v{"x", "y", "z"};
  // Powers of zeta: 1, z, z^2 = -1 - z.
  const LaurentPoly zeta[3] = {parse("1", v), parse("z", v), parse("-1 - z", v)};
  const LaurentPoly x = parse("x", v), y = parse("y", v), one = parse("1", v);

  LaurentPoly direct = one;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) direct = reduce_zeta(direct * (one + zeta[i] * x + zeta[j] * y));

  // (a + b)(a + zb)(a + z^2 b) = a^3 + b^3 with a = 1 + z^i x, b = y.
  LaurentPoly grouped = one;
  bool identity_holds = true;
  for (int i = 0; i < 3; ++i) {
    const LaurentPoly a = one + zeta[i] * x;
    LaurentPoly lhs = one;
    for (int j = 0; j < 3; ++j) lhs = reduce_zeta(lhs * (a + zeta[j] * y));
    const LaurentPoly rhs = reduce_zeta(pow(a, 3) + pow(y, 3));
    identity_holds = identity_holds && lhs == rhs;
    grouped = reduce_zeta(grouped * rhs);
  }

  NineProduct out;
  out.grouping_agrees = identity_holds && grouped == direct;
  bool zeta_free = max_degree_in(direct, 2) <= 0;
  LaurentPoly xy(2);
  for (const auto& [e, c] : direct.terms()) xy.add_term({e[0], e[1]}, c);
  out.poly = xy;
  out.matches = zeta_free && xy == nine_product_expected();
  return out;
}

LaurentPoly baumslag_flat_expansion(const std::vector<BaumslagTerm>& pattern) {
  const VarNames v{"y1", "y2"};
  const LaurentPoly y1 = parse("y1", v), y1p = parse("1 + y1", v), y2 = parse("y2", v), y2p = parse("1 + y2", v);
  std::map<std::pair<int, std::int64_t>, LaurentPoly> cache;
  auto power = [&](int which, const LaurentPoly& base, std::int64_t e) -> const LaurentPoly& {
    auto key = std::make_pair(which, e);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, pow(base, static_cast<unsigned>(e))).first;
    return it->second;
  };
  LaurentPoly f(2);
  for (const auto& t : pattern) {
    LaurentPoly term = power(0, y1, 3 * t.a) * power(1, y1p, 3 * t.b) * power(2, y2, t.c) * power(3, y2p, t.d);
    f += scale(term, t.sign);
  }
  return f;
}

bool verify_baumslag_flat_nonzero(const std::vector<BaumslagTerm>& pattern) {
  if (pattern.empty()) throw DomainError("pattern must be nonempty");
  std::map<std::array<std::int64_t, 3>, std::int64_t> d_of;
  for (const auto& t : pattern) {
    if (t.a < 0 || t.b < 0 || t.c < 0 || t.d < 0) throw DomainError("pattern exponents must be nonnegative");
    if (t.sign != 1 && t.sign != -1) throw DomainError("pattern signs must be +-1");
    if (!d_of.emplace(std::array<std::int64_t, 3>{t.a, t.b, t.c}, t.d).second)
      throw DomainError("pattern has two terms with the same (a, b, c)");
  }
  return !baumslag_flat_expansion(pattern).is_zero();
}

SppVerdict spp_certify_pair(const LaurentPoly& p, std::int64_t N, const CertifyOptions& options) {
  if (p.is_zero()) throw DomainError("spp needs a nonzero polynomial");
  SppVerdict v;
  if (auto d = detect_generalized_cyclotomic(p)) {
    v.status = SppStatus::NoSPP;
    v.certificate = CertificateKind::Cyclotomic;
    v.decomposition = d;
    // x^{n v} - 1 is flat and divisible by Phi_n(x^v), for every power N.
    LaurentPoly u = LaurentPoly::monomial(exp_scale(d->direction, d->cyclotomic_index)) - LaurentPoly::constant(p.nvars(), 1);
    for (std::int64_t M : {1, 2, 3, 5}) {
      if (!divides(p, substitute_power(u, M))) throw Error("internal: generalized cyclotomic witness failed");
      v.witness_N.push_back(M);
    }
    v.counterexample = u;
    v.note = "generalized cyclotomic";
    return v;
  }
  if (leading_obstruction(p)) {
    v.status = SppStatus::HasSPP;
    v.N = 1;
    v.certificate = CertificateKind::LeadingObstruction;
    v.note = "content or an extreme coefficient is not +-1, so no flat polynomial is a multiple";
    return v;
  }
  SupportBox box;
  if (options.box) {
    box = *options.box;
  } else {
    std::int64_t mmax = 0;
    while (pow3_checked(cube_box(p.nvars(), mmax + 1).cells()) - 1 <= options.budget) ++mmax;
    box = cube_box(p.nvars(), mmax);
  }
  const std::uint64_t searched = pow3_checked(box.cells()) - 1;
  auto u = spp_search_counterexample(p, N, box, options.budget);
  v.status = SppStatus::Unknown;
  v.N = N;
  v.bound = searched;
  if (u) {
    v.counterexample = u;
    v.witness_N = {N};
    v.note = "p divides u(x^N) for this N; other N are not ruled out";
  } else {
    v.certificate = CertificateKind::ExhaustiveBound;
    v.note = "no flat multiple with support in the box at this N; consistent with the spaced polynomial property";
  }
  return v;
}

SppVerdict spp_decide(const LaurentPoly& p, std::int64_t N, const CertifyOptions& options) {
  if (p.is_zero()) throw DomainError("spp needs a nonzero polynomial");
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < p.nvars(); ++i)
    if (max_degree_in(p, i) != 0 || min_degree_in(p, i) != 0) used.push_back(i);
  if (used.size() > 1) return spp_certify_pair(p, N, options);
  const std::size_t var = used.empty() ? 0 : used[0];
  LaurentPoly q(1);
  for (const auto& [e, c] : p.terms()) q.add_term({p.nvars() ? e[var] : 0}, c);
  SppVerdict v = univariate_spp_decide(q);
  // Map univariate data back into the original variables.
  auto lift = [&](const LaurentPoly& f) {
    LaurentPoly out(p.nvars());
    for (const auto& [e, c] : f.terms()) {
      ExpVec x(p.nvars(), 0);
      if (p.nvars()) x[var] = e[0];
      out.add_term(x, c);
    }
    return out;
  };
  if (v.counterexample) v.counterexample = lift(*v.counterexample);
  if (v.decomposition) {
    ExpVec mono(p.nvars(), 0), dir(p.nvars(), 0);
    mono[var] = v.decomposition->monomial_factor[0];
    dir[var] = v.decomposition->direction[0];
    v.decomposition->monomial_factor = mono;
    v.decomposition->direction = dir;
  }
  return v;
}

std::vector<BaumslagTerm> random_baumslag_pattern(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<std::array<std::int64_t, 3>, BaumslagTerm> chosen;
  const int n = 1 + static_cast<int>(rng() % 12);
  for (int i = 0; i < n; ++i) {
    BaumslagTerm t{static_cast<std::int64_t>(rng() % 3), static_cast<std::int64_t>(rng() % 3),
                   static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 4), rng() % 2 ? 1 : -1};
    chosen[{t.a, t.b, t.c}] = t;
  }
  std::vector<BaumslagTerm> pattern;
  for (const auto& [k, t] : chosen) pattern.push_back(t);
  return pattern;
}

}  // namespace blab
