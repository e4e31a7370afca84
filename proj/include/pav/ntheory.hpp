#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "pav/errors.hpp"

namespace pav {

using BigInt = mpz_class;

// Deterministic Miller-Rabin below 2^64, Baillie-PSW above.
bool is_probable_prime(const BigInt& n);

struct Factorization {
  BigInt value;
  std::vector<std::pair<BigInt, unsigned>> factors;  // strictly increasing primes

  // Re-multiplies and primality-tests every listed prime.
  bool verify() const;
  unsigned omega() const { return static_cast<unsigned>(factors.size()); }
  // W(value) = 2^omega, the number of squarefree divisors.
  BigInt squarefree_divisor_count() const;
  std::string to_string() const;
};

BigInt euler_phi(const Factorization& f);

// mu of the represented integer: 0 if any exponent > 1, else (-1)^omega.
int moebius(const Factorization& d);

// Visits all 2^omega squarefree divisors with their mu sign, mask-ascending
// (divisor 1 first).  fn(const BigInt& divisor, int mu).
template <class Fn>
void for_each_squarefree_divisor(const Factorization& f, Fn&& fn) {
  const unsigned k = f.omega();
  if (k >= 63) throw OrderTooLarge("squarefree divisor enumeration: omega too large");
  for (uint64_t mask = 0; mask < (uint64_t{1} << k); ++mask) {
    BigInt d = 1;
    for (unsigned i = 0; i < k; ++i)
      if (mask >> i & 1) d *= f.factors[i].first;
    fn(d, (std::popcount(mask) & 1) ? -1 : 1);
  }
}

std::vector<std::pair<BigInt, int>> squarefree_divisors(const Factorization& f);

struct FactorBudget {
  uint64_t trial_limit = 1'000'000;
  uint64_t rho_mulmods = 1'000'000'000;  // total modular multiplications
};

// Verified store of pre-computed factorizations, keyed by value.
// File format: one entry per line, `VALUE = P1^E1 * P2^E2 * ...`, `^1`
// optional, `#` starts a comment.  Loading re-verifies every entry.
class FactorCache {
 public:
  FactorCache() = default;
  static FactorCache load(const std::string& path);

  const Factorization* lookup(const BigInt& value) const;
  void insert(Factorization f);
  void save(const std::string& path) const;
  std::size_t size() const { return entries_.size(); }
  const std::map<BigInt, Factorization>& entries() const { return entries_; }

 private:
  std::map<BigInt, Factorization> entries_;
};

// Cache lookup, then trial division, then Pollard-rho/Brent with
// deterministic seeding.  Throws FactoringTimeout once the budget is spent.
Factorization factor(const BigInt& m, const FactorCache* cache = nullptr,
                     const FactorBudget& budget = {});

// Values Phi_d(q) for the divisors d of n in increasing order; their
// product is q^n - 1.
std::vector<BigInt> cyclotomic_split(const BigInt& q, unsigned n);

}  // namespace pav
