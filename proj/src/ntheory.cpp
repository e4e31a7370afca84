#include "pav/ntheory.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace pav {

namespace {

// Strong probable-prime test to base a, n odd > 2, n - 1 = d * 2^s.
bool miller_rabin_round(const BigInt& n, const BigInt& d, unsigned s, const BigInt& a) {
  BigInt x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n - 1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n - 1) return true;
  }
  return false;
}

// Strong Lucas probable-prime test with Selfridge parameters.
bool strong_lucas(const BigInt& n) {
  // find D in 5, -7, 9, -11, ... with Jacobi(D, n) == -1
  long d_abs = 5;
  int sign = 1;
  BigInt D;
  while (true) {
    D = sign * d_abs;
    int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
    if (j == -1) break;
    if (j == 0 && BigInt(abs(D)) != n) return false;  // proper factor found
    d_abs += 2;
    sign = -sign;
    if (d_abs > 1000) {
      // n is a perfect square (guarded by caller) or something is off
      return false;
    }
  }
  const BigInt P = 1;
  const BigInt Q = (1 - D) / 4;

  // n + 1 = d * 2^s
  BigInt d = n + 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }

  // compute U_d, V_d mod n by binary ladder
  BigInt U = 1, V = P, Qk = Q % n;
  const std::size_t bits = mpz_sizeinbase(d.get_mpz_t(), 2);
  auto mod = [&](BigInt v) {
    v %= n;
    if (v < 0) v += n;
    return v;
  };
  for (std::size_t i = bits - 1; i-- > 0;) {
    // double: U_{2k} = U V, V_{2k} = V^2 - 2 Q^k
    U = mod(U * V);
    V = mod(V * V - 2 * Qk);
    Qk = mod(Qk * Qk);
    if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
      // add one: U_{k+1} = (P U + V)/2, V_{k+1} = (D U + P V)/2
      BigInt U2 = P * U + V;
      BigInt V2 = D * U + P * V;
      if (mpz_odd_p(U2.get_mpz_t())) U2 += n;
      if (mpz_odd_p(V2.get_mpz_t())) V2 += n;
      U = mod(U2 / 2);
      V = mod(V2 / 2);
      Qk = mod(Qk * Q);
    }
  }
  if (U == 0 || V == 0) return true;
  for (unsigned r = 1; r < s; ++r) {
    V = mod(V * V - 2 * Qk);
    if (V == 0) return true;
    Qk = mod(Qk * Qk);
  }
  return false;
}

constexpr uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                     23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  for (uint64_t p : kSmallPrimes) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  BigInt d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  if (mpz_fits_ulong_p(n.get_mpz_t()) || mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    // deterministic for n < 2^64 with the first twelve prime bases
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
      if (!miller_rabin_round(n, d, s, BigInt(a))) return false;
    }
    return true;
  }
  // Baillie-PSW: base-2 strong test + strong Lucas; square guard first
  if (mpz_perfect_square_p(n.get_mpz_t())) return false;
  if (!miller_rabin_round(n, d, s, BigInt(2))) return false;
  return strong_lucas(n);
}

bool Factorization::verify() const {
  if (value < 1) return false;
  BigInt prod = 1;
  const BigInt* prev = nullptr;
  for (const auto& [p, e] : factors) {
    if (e == 0) return false;
    if (prev && !(*prev < p)) return false;
    prev = &p;
    if (!is_probable_prime(p)) return false;
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    prod *= pe;
  }
  return prod == value;
}

BigInt Factorization::squarefree_divisor_count() const {
  BigInt w = 1;
  mpz_mul_2exp(w.get_mpz_t(), w.get_mpz_t(), omega());
  return w;
}

std::string Factorization::to_string() const {
  std::ostringstream os;
  os << value << " = ";
  if (factors.empty()) {
    os << 1;
    return os.str();
  }
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) os << " * ";
    first = false;
    os << p;
    if (e > 1) os << '^' << e;
  }
  return os.str();
}

BigInt euler_phi(const Factorization& f) {
  BigInt r = 1;
  for (const auto& [p, e] : f.factors) {
    BigInt pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e - 1);
    r *= pe * (p - 1);
  }
  return r;
}

int moebius(const Factorization& d) {
  for (const auto& [p, e] : d.factors)
    if (e > 1) return 0;
  return (d.omega() & 1) ? -1 : 1;
}

std::vector<std::pair<BigInt, int>> squarefree_divisors(const Factorization& f) {
  std::vector<std::pair<BigInt, int>> out;
  for_each_squarefree_divisor(f, [&](const BigInt& d, int mu) { out.emplace_back(d, mu); });
  return out;
}

namespace {

// Brent-cycle Pollard rho; returns a nontrivial factor or 0 on budget end.
// mulmods is decremented as work is spent.
BigInt pollard_brent(const BigInt& n, unsigned seed, uint64_t& mulmods) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  const BigInt c = 1 + BigInt(seed) * seed;
  BigInt y = 2 + seed, x, ys, q = 1, g = 1;
  uint64_t r = 1;
  const uint64_t block = 128;
  while (g == 1) {
    x = y;
    if (mulmods < 2 * r) return 0;
    mulmods -= 2 * r;
    for (uint64_t i = 0; i < r; ++i) y = (y * y + c) % n;
    for (uint64_t k = 0; k < r && g == 1; k += block) {
      ys = y;
      const uint64_t lim = std::min(block, r - k);
      for (uint64_t i = 0; i < lim; ++i) {
        y = (y * y + c) % n;
        q = q * abs(x - y) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      if (mulmods < 3 * lim) return 0;
      mulmods -= 3 * lim;
    }
    r *= 2;
  }
  if (g == n) {
    do {
      ys = (ys * ys + c) % n;
      BigInt diff = abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      if (mulmods < 2) return 0;
      mulmods -= 2;
    } while (g == 1);
  }
  if (g == n) return 0;  // retry with another seed
  return g;
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& acc, uint64_t& mulmods) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++acc[n];
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      BigInt root;
      if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k)) {
        std::map<BigInt, unsigned> sub;
        factor_into(root, sub, mulmods);
        for (const auto& [p, e] : sub) acc[p] += e * k;
        return;
      }
    }
  }
  for (unsigned seed = 1;; ++seed) {
    if (mulmods == 0)
      throw FactoringTimeout("factoring budget exhausted at " + n.get_str() +
                             "; supply a cache entry");
    BigInt g = pollard_brent(n, seed, mulmods);
    if (g == 0) {
      if (mulmods == 0)
        throw FactoringTimeout("factoring budget exhausted at " + n.get_str() +
                               "; supply a cache entry");
      continue;
    }
    factor_into(g, acc, mulmods);
    factor_into(n / g, acc, mulmods);
    return;
  }
}

}  // namespace

Factorization factor(const BigInt& m, const FactorCache* cache, const FactorBudget& budget) {
  if (m < 1) throw DomainError("factor: argument must be >= 1");
  if (cache) {
    if (const Factorization* hit = cache->lookup(m)) return *hit;
  }
  Factorization out;
  out.value = m;
  if (m == 1) return out;

  std::map<BigInt, unsigned> acc;
  BigInt rest = m;
  for (uint64_t p = 2; p <= budget.trial_limit && rest > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
      acc[BigInt(static_cast<unsigned long>(p))] = e;
    }
    // no need to trial past sqrt(rest)
    if (BigInt(static_cast<unsigned long>(p)) * p > rest) break;
  }
  if (rest > 1) {
    uint64_t mulmods = budget.rho_mulmods;
    factor_into(rest, acc, mulmods);
  }
  out.factors.assign(acc.begin(), acc.end());
  return out;
}

std::vector<BigInt> cyclotomic_split(const BigInt& q, unsigned n) {
  if (q < 2 || n < 1) throw DomainError("cyclotomic_split: need q >= 2, n >= 1");
  std::vector<unsigned> divs;
  for (unsigned d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  std::map<unsigned, BigInt> phi;  // Phi_d(q) by increasing d
  for (unsigned d : divs) {
    BigInt v;
    mpz_pow_ui(v.get_mpz_t(), q.get_mpz_t(), d);
    v -= 1;
    for (unsigned e : divs) {
      if (e < d && d % e == 0) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), phi[e].get_mpz_t());
    }
    phi[d] = v;
  }
  std::vector<BigInt> out;
  out.reserve(divs.size());
  for (unsigned d : divs) out.push_back(phi[d]);
  return out;
}

const Factorization* FactorCache::lookup(const BigInt& value) const {
  auto it = entries_.find(value);
  return it == entries_.end() ? nullptr : &it->second;
}

void FactorCache::insert(Factorization f) { entries_[f.value] = std::move(f); }

FactorCache FactorCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open factor cache: " + path);
  FactorCache cache;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // trim
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    line = line.substr(b, e - b + 1);

    const auto fail = [&](const std::string& why) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": " + why);
    };
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("missing '='");
    std::string vs = line.substr(0, eq);
    const auto ve = vs.find_last_not_of(" \t");
    if (ve == std::string::npos) fail("missing value");
    vs = vs.substr(0, ve + 1);
    Factorization f;
    try {
      f.value = BigInt(vs);
    } catch (const std::invalid_argument&) {
      fail("bad value");
    }
    std::string rhs = line.substr(eq + 1);
    std::map<BigInt, unsigned> acc;
    std::istringstream ts(rhs);
    std::string tok;
    bool any = false;
    while (std::getline(ts, tok, '*')) {
      const auto tb = tok.find_first_not_of(" \t");
      if (tb == std::string::npos) fail("empty factor");
      const auto te = tok.find_last_not_of(" \t");
      tok = tok.substr(tb, te - tb + 1);
      any = true;
      std::string ps = tok;
      unsigned long ev = 1;
      const auto caret = tok.find('^');
      if (caret != std::string::npos) {
        ps = tok.substr(0, caret);
        try {
          ev = std::stoul(tok.substr(caret + 1));
        } catch (...) {
          fail("bad exponent");
        }
      }
      BigInt p;
      try {
        p = BigInt(ps);
      } catch (const std::invalid_argument&) {
        fail("bad prime");
      }
      if (p == 1 && caret == std::string::npos) continue;  // allow `1 = 1`
      if (ev == 0) fail("zero exponent");
      if (acc.count(p)) fail("duplicate prime " + p.get_str());
      acc[p] = static_cast<unsigned>(ev);
    }
    if (!any) fail("empty factorization");
    f.factors.assign(acc.begin(), acc.end());
    if (!f.verify()) fail("verification failed for value " + f.value.get_str());
    cache.insert(std::move(f));
  }
  return cache;
}

void FactorCache::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write factor cache: " + path);
  out << "# factor cache: VALUE = P1^E1 * P2^E2 * ...\n";
  for (const auto& [v, f] : entries_) out << f.to_string() << '\n';
}

}  // namespace pav
