#include "blab/finite_field.hpp"

#include <algorithm>
#include <array>
#include <mutex>

#include "blab/errors.hpp"

namespace blab {

PrimeField::PrimeField(std::uint64_t q) : q_(q) {
  if (q < 2) throw DomainError("field characteristic must be a prime >= 2");
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % q_;
  a %= q_;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % q_ == 0) throw DomainError("inverse of zero in F_q");
  return pow(a, q_ - 2);
}

std::uint64_t PrimeField::reduce(const mpz_class& v) const {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), q_);
  return r.get_ui();
}

std::uint64_t PrimeField::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(q_);
  if (r < 0) r += static_cast<std::int64_t>(q_);
  return static_cast<std::uint64_t>(r);
}

namespace fqpoly {

void trim(FqPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FqPoly& a) { return static_cast<int>(a.size()) - 1; }

FqPoly add(const PrimeField& f, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.add(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

FqPoly sub(const PrimeField& f, const FqPoly& a, const FqPoly& b) {
  FqPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = f.sub(i < a.size() ? a[i] : 0, i < b.size() ? b[i] : 0);
  trim(r);
  return r;
}

FqPoly mul(const PrimeField& f, const FqPoly& a, const FqPoly& b) {
  if (a.empty() || b.empty()) return {};
  FqPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

static void divmod(const PrimeField& f, const FqPoly& a, const FqPoly& m, FqPoly* quot, FqPoly* rem) {
  if (m.empty()) throw DomainError("polynomial division by zero over F_q");
  FqPoly r = a;
  trim(r);
  const int dm = degree(m);
  const std::uint64_t inv_lc = f.inv(m.back());
  FqPoly q;
  if (degree(r) >= dm) q.assign(r.size() - m.size() + 1, 0);
  while (degree(r) >= dm) {
    const int shift = degree(r) - dm;
    const std::uint64_t c = f.mul(r.back(), inv_lc);
    q[shift] = c;
    for (int i = 0; i <= dm; ++i) r[shift + i] = f.sub(r[shift + i], f.mul(c, m[i]));
    trim(r);
  }
  trim(q);
  if (quot) *quot = std::move(q);
  if (rem) *rem = std::move(r);
}

FqPoly mod(const PrimeField& f, const FqPoly& a, const FqPoly& m) {
  FqPoly r;
  divmod(f, a, m, nullptr, &r);
  return r;
}

FqPoly div(const PrimeField& f, const FqPoly& a, const FqPoly& m) {
  FqPoly q;
  divmod(f, a, m, &q, nullptr);
  return q;
}

FqPoly make_monic(const PrimeField& f, const FqPoly& a) {
  if (a.empty()) return a;
  const std::uint64_t inv_lc = f.inv(a.back());
  FqPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(a[i], inv_lc);
  return r;
}

FqPoly gcd(const PrimeField& f, FqPoly a, FqPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    FqPoly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(f, a);
}

FqPoly powmod(const PrimeField& f, const FqPoly& base, const mpz_class& e, const FqPoly& m) {
  FqPoly result = mod(f, FqPoly{1}, m);
  FqPoly b = mod(f, base, m);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(f, mul(f, result, result), m);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(f, mul(f, result, b), m);
  }
  return result;
}

std::uint64_t eval(const PrimeField& f, const FqPoly& a, std::uint64_t x) {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

}  // namespace fqpoly

namespace {

FqPoly random_poly(const PrimeField& f, int below_degree, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, f.q() - 1);
  FqPoly a(static_cast<std::size_t>(below_degree));
  for (auto& c : a) c = dist(rng);
  fqpoly::trim(a);
  return a;
}

// Splits a product of distinct irreducibles of common degree d down to one of them.
FqPoly equal_degree_factor(const PrimeField& f, FqPoly g, int d, std::mt19937_64& rng) {
  mpz_class q = f.q();
  mpz_class qd;
  mpz_pow_ui(qd.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(d));
  const mpz_class exponent = (qd - 1) / 2;
  while (fqpoly::degree(g) > d) {
    FqPoly a = random_poly(f, fqpoly::degree(g), rng);
    if (fqpoly::degree(a) < 1) continue;
    FqPoly b = fqpoly::sub(f, fqpoly::powmod(f, a, exponent, g), FqPoly{1});
    FqPoly c = fqpoly::gcd(f, g, b);
    const int dc = fqpoly::degree(c);
    if (dc <= 0 || dc >= fqpoly::degree(g)) continue;
    FqPoly other = fqpoly::make_monic(f, fqpoly::div(f, g, c));
    g = dc <= fqpoly::degree(other) ? c : other;
  }
  return fqpoly::make_monic(f, g);
}

}  // namespace

std::optional<FqPoly> min_degree_irreducible_factor(const PrimeField& field, const FqPoly& input,
                                                    int max_degree, std::mt19937_64& rng) {
  if (field.q() == 2) throw DomainError("root extraction requires an odd characteristic");
  FqPoly f = input;
  fqpoly::trim(f);
  std::size_t zeros = 0;
  while (zeros < f.size() && f[zeros] == 0) ++zeros;
  f.erase(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(zeros));
  if (fqpoly::degree(f) < 1) return std::nullopt;
  f = fqpoly::make_monic(field, f);
  const mpz_class q = field.q();
  const FqPoly t{0, 1};
  FqPoly h = t;
  const int n = fqpoly::degree(f);
  for (int d = 1; d <= std::min(max_degree, n); ++d) {
    if (2 * d > n) return n <= max_degree ? std::optional<FqPoly>(f) : std::nullopt;
    h = fqpoly::powmod(field, h, q, f);
    FqPoly g = fqpoly::gcd(field, f, fqpoly::sub(field, h, t));
    if (fqpoly::degree(g) > 0) return equal_degree_factor(field, g, d, rng);
  }
  return std::nullopt;
}

FiniteField::FiniteField(std::uint64_t q) : base_(q), degree_(1), modulus_{0, 1} {}

FiniteField::FiniteField(std::uint64_t q, FqPoly modulus) : base_(q), modulus_(std::move(modulus)) {
  fqpoly::trim(modulus_);
  if (fqpoly::degree(modulus_) < 1 || modulus_.back() != 1)
    throw DomainError("extension modulus must be monic of positive degree");
  degree_ = static_cast<std::size_t>(fqpoly::degree(modulus_));
}

FiniteField::Elem FiniteField::embed(std::uint64_t c) const {
  Elem e(degree_, 0);
  e[0] = c % base_.q();
  return e;
}

FiniteField::Elem FiniteField::generator() const {
  if (degree_ == 1) return embed(base_.neg(modulus_[0]));
  Elem e(degree_, 0);
  e[1] = 1;
  return e;
}

bool FiniteField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

FiniteField::Elem FiniteField::add(const Elem& a, const Elem& b) const {
  Elem r(degree_);
  for (std::size_t i = 0; i < degree_; ++i) r[i] = base_.add(a[i], b[i]);
  return r;
}

void FiniteField::add_into(Elem& acc, const Elem& b) const {
  for (std::size_t i = 0; i < degree_; ++i) acc[i] = base_.add(acc[i], b[i]);
}

FiniteField::Elem FiniteField::sub(const Elem& a, const Elem& b) const {
  Elem r(degree_);
  for (std::size_t i = 0; i < degree_; ++i) r[i] = base_.sub(a[i], b[i]);
  return r;
}

FiniteField::Elem FiniteField::neg(const Elem& a) const {
  Elem r(degree_);
  for (std::size_t i = 0; i < degree_; ++i) r[i] = base_.neg(a[i]);
  return r;
}

FiniteField::Elem FiniteField::mul(const Elem& a, const Elem& b) const {
  if (degree_ == 1) return Elem{base_.mul(a[0], b[0])};
  std::vector<std::uint64_t> prod(2 * degree_ - 1, 0);
  for (std::size_t i = 0; i < degree_; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < degree_; ++j) prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
  }
  for (std::size_t k = prod.size(); k-- > degree_;) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    const std::size_t shift = k - degree_;
    for (std::size_t i = 0; i < degree_; ++i) prod[shift + i] = base_.sub(prod[shift + i], base_.mul(c, modulus_[i]));
    prod[k] = 0;
  }
  return Elem(prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(degree_));
}

FiniteField::Elem FiniteField::inv(const Elem& a) const {
  if (is_zero(a)) throw DomainError("inverse of zero in finite field");
  if (degree_ == 1) return Elem{base_.inv(a[0])};
  mpz_class q = base_.q();
  mpz_class order;
  mpz_pow_ui(order.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(degree_));
  const mpz_class e = order - 2;
  Elem result = one();
  Elem b = a;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mul(result, result);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mul(result, b);
  }
  return result;
}

FiniteField::Elem FiniteField::pow(const Elem& a, std::int64_t e) const {
  Elem b = e < 0 ? inv(a) : a;
  std::uint64_t k = e < 0 ? static_cast<std::uint64_t>(-(e + 1)) + 1 : static_cast<std::uint64_t>(e);
  Elem r = one();
  while (k) {
    if (k & 1) r = mul(r, b);
    b = mul(b, b);
    k >>= 1;
  }
  return r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  PrimeField f(n);
  for (std::uint64_t a : bases) {
    std::uint64_t x = f.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = f.mul(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t fingerprint_prime(std::uint64_t seed) {
  static std::vector<std::uint64_t> primes;
  static std::once_flag once;
  std::call_once(once, [] {
    std::uint64_t candidate = (std::uint64_t{1} << 61) - 1;
    while (primes.size() < 16) {
      if (is_prime_u64(candidate)) primes.push_back(candidate);
      candidate -= 2;
    }
  });
  return primes[splitmix64(seed) % primes.size()];
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace blab
