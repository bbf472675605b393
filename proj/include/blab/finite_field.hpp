#pragma once

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace blab {

// Modular arithmetic for a prime below 2^63.
class PrimeField {
 public:
  PrimeField() = default;
  explicit PrimeField(std::uint64_t q);

  std::uint64_t q() const { return q_; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + (q_ - b); }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : q_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const;  // throws DomainError on zero
  std::uint64_t reduce(const mpz_class& v) const;
  std::uint64_t reduce(std::int64_t v) const;

 private:
  std::uint64_t q_ = 2;
};

// Dense polynomials over F_q, coefficients stored low degree first and trimmed.
using FqPoly = std::vector<std::uint64_t>;

namespace fqpoly {
void trim(FqPoly& a);
int degree(const FqPoly& a);  // -1 for the zero polynomial
FqPoly add(const PrimeField& f, const FqPoly& a, const FqPoly& b);
FqPoly sub(const PrimeField& f, const FqPoly& a, const FqPoly& b);
FqPoly mul(const PrimeField& f, const FqPoly& a, const FqPoly& b);
FqPoly mod(const PrimeField& f, const FqPoly& a, const FqPoly& m);
FqPoly div(const PrimeField& f, const FqPoly& a, const FqPoly& m);
FqPoly make_monic(const PrimeField& f, const FqPoly& a);
FqPoly gcd(const PrimeField& f, FqPoly a, FqPoly b);
FqPoly powmod(const PrimeField& f, const FqPoly& base, const mpz_class& e, const FqPoly& m);
std::uint64_t eval(const PrimeField& f, const FqPoly& a, std::uint64_t x);
}  // namespace fqpoly

// Smallest-degree monic irreducible factor of `f` other than t itself, found by
// distinct-degree factorization followed by Cantor-Zassenhaus splitting.
// Returns nullopt when f has no such factor of degree <= max_degree.
std::optional<FqPoly> min_degree_irreducible_factor(const PrimeField& field, const FqPoly& f,
                                                    int max_degree, std::mt19937_64& rng);

// The field F_q[t]/(m) for monic irreducible m (degree 1 gives F_q itself).
class FiniteField {
 public:
  using Elem = boost::container::small_vector<std::uint64_t, 4>;

  FiniteField() = default;
  explicit FiniteField(std::uint64_t q);
  FiniteField(std::uint64_t q, FqPoly modulus);

  const PrimeField& base() const { return base_; }
  std::uint64_t characteristic() const { return base_.q(); }
  std::size_t degree() const { return degree_; }
  const FqPoly& modulus() const { return modulus_; }

  Elem zero() const { return Elem(degree_, 0); }
  Elem one() const { return embed(1); }
  Elem embed(std::uint64_t c) const;
  Elem from_integer(const mpz_class& c) const { return embed(base_.reduce(c)); }
  // The class of t, a root of the modulus in this field.
  Elem generator() const;

  bool is_zero(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;  // throws DomainError on zero
  Elem pow(const Elem& a, std::int64_t e) const;
  void add_into(Elem& acc, const Elem& b) const;

 private:
  PrimeField base_;
  std::size_t degree_ = 1;
  FqPoly modulus_;
};

bool is_prime_u64(std::uint64_t n);

// Fixed list of large primes just below 2^61, indexed by seed.
std::uint64_t fingerprint_prime(std::uint64_t seed);

// splitmix64 finalizer; used for every seed expansion in the library.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace blab
