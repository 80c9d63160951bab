#include "ecg/core_arith.hpp"

#include <bit>
#include <cmath>
#include <numeric>

namespace ecg {

u64 isqrt_u64(u64 n) {
  if (n < 2) return n;
  // integer Newton; seed 2^ceil(bits/2) >= sqrt(n) guarantees convergence to floor
  int shift = (64 - std::countl_zero(n) + 1) / 2;
  u64 x = u64(1) << shift;
  for (;;) {
    u64 y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = y;
  }
}

u64 mulmod(u64 a, u64 b, u64 n) { return u64((u128)a * b % n); }

u64 powmod(u64 a, u64 e, u64 n) {
  u64 r = n == 1 ? 0 : 1;
  a %= n;
  while (e) {
    if (e & 1) r = mulmod(r, a, n);
    a = mulmod(a, a, n);
    e >>= 1;
  }
  return r;
}

namespace {

bool miller_rabin_once(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  int s = std::countr_zero(d);
  d >>= s;
  // witness set covering all n < 2^64
  for (u64 a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                1795265022ull}) {
    if (!miller_rabin_once(n, a, d, s)) return false;
  }
  return true;
}

u64 umod(i64 a, u64 n) {
  if (a >= 0) return u64(a) % n;
  u64 r = (u64(-(a + 1)) + 1) % n;  // |a| mod n without overflowing INT64_MIN
  return r == 0 ? 0 : n - r;
}

int jacobi(i64 a, u64 n) {
  if (n == 0 || n % 2 == 0)
    throw std::invalid_argument("jacobi: modulus must be odd and positive");
  u64 ua = umod(a, n);
  u64 m = n;
  int t = 1;
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      u64 r = m & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(ua, m);
    if ((ua & 3) == 3 && (m & 3) == 3) t = -t;
    ua %= m;
  }
  return m == 1 ? t : 0;
}

int kronecker(i64 a, u64 n) {
  if (n == 0) throw std::invalid_argument("kronecker: n must be positive");
  int v = std::countr_zero(n);
  n >>= v;
  int t = 1;
  if (v) {
    if (a % 2 == 0) return 0;
    u64 r = umod(a, 8);
    if ((v & 1) && (r == 3 || r == 5)) t = -1;
  }
  return t * jacobi(a, n);
}

int FactoredInteger::valuation(u64 ell) const {
  for (const Factor& f : factors)
    if (f.prime == ell) return f.exp;
  return 0;
}

int FactoredInteger::mobius() const {
  for (const Factor& f : factors)
    if (f.exp > 1) return 0;
  return factors.size() % 2 == 0 ? 1 : -1;
}

u64 FactoredInteger::totient() const {
  u64 t = 1;
  for (const Factor& f : factors) {
    t *= f.prime - 1;
    for (int i = 1; i < f.exp; ++i) t *= f.prime;
  }
  return t;
}

u64 FactoredInteger::divisor_count() const {
  u64 t = 1;
  for (const Factor& f : factors) t *= u64(f.exp) + 1;
  return t;
}

double FactoredInteger::von_mangoldt() const {
  if (factors.size() != 1) return 0.0;
  return std::log(double(factors[0].prime));
}

bool FactoredInteger::squarefree() const {
  for (const Factor& f : factors)
    if (f.exp > 1) return false;
  return true;
}

std::vector<u64> FactoredInteger::divisors() const {
  std::vector<u64> out{1};
  for (const Factor& f : factors) {
    size_t base = out.size();
    u64 pe = 1;
    for (int e = 1; e <= f.exp; ++e) {
      pe *= f.prime;
      for (size_t i = 0; i < base; ++i) out.push_back(out[i] * pe);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> FactoredInteger::divisors_up_to(u64 cap) const {
  std::vector<u64> out;
  for (u64 d : divisors()) {
    if (d > cap) break;
    out.push_back(d);
  }
  return out;
}

namespace {

const std::vector<u64>& trial_primes() {
  static const std::vector<u64> table = primes_up_to(1024);
  return table;
}

u64 pollard_brent(u64 n) {
  // deterministic: x0 = 2 and increasing polynomial constant c
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1, q = 1, ys = 0;
    const u64 m = 128;
    u64 r = 1;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && d == 1; k += m) {
        ys = y;
        u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        d = std::gcd(q, n);
      }
      r <<= 1;
    } while (d == 1);
    if (d == n) {
      // backtrack one step at a time
      do {
        ys = (mulmod(ys, ys, n) + c) % n;
        d = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (d == 1);
    }
    if (d != n) return d;
  }
}

void factor_into(u64 n, std::vector<u64>& primes) {
  while (n > 1) {
    if (is_prime(n)) {
      primes.push_back(n);
      return;
    }
    u64 d = pollard_brent(n);
    factor_into(d, primes);
    n /= d;
  }
}

}  // namespace

FactoredInteger factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be >= 1");
  FactoredInteger out;
  out.n = n;
  u64 rem = n;
  for (u64 p : trial_primes()) {
    if (p * p > rem) break;
    if (rem % p) continue;
    int e = 0;
    while (rem % p == 0) rem /= p, ++e;
    out.factors.push_back({p, e});
  }
  if (rem > 1) {
    if (is_prime(rem)) {
      out.factors.push_back({rem, 1});
    } else {
      std::vector<u64> big;
      factor_into(rem, big);
      std::sort(big.begin(), big.end());
      for (size_t i = 0; i < big.size();) {
        size_t j = i;
        while (j < big.size() && big[j] == big[i]) ++j;
        out.factors.push_back({big[i], int(j - i)});
        i = j;
      }
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const Factor& a, const Factor& b) { return a.prime < b.prime; });
  return out;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  out.push_back(2);
  if (limit < 3) return out;
  u64 count = (limit - 1) / 2;  // odds 3,5,... <= limit
  std::vector<u64> words((count + 63) / 64, 0);
  for (u64 i = 0; i < count; ++i) {
    if ((words[i >> 6] >> (i & 63)) & 1) continue;
    u64 p = 3 + 2 * i;
    if (p * p > limit) break;
    for (u64 j = (p * p - 3) / 2; j < count; j += p)
      words[j >> 6] |= u64(1) << (j & 63);
  }
  for (u64 i = 0; i < count; ++i)
    if (!((words[i >> 6] >> (i & 63)) & 1)) out.push_back(3 + 2 * i);
  return out;
}

namespace detail {

std::vector<u64> odd_base_primes(u64 n) {
  std::vector<u64> base = primes_up_to(isqrt_u64(n));
  if (!base.empty() && base.front() == 2) base.erase(base.begin());
  return base;
}

void sieve_odd_segment(u64 lo, u64 hi, const std::vector<u64>& base,
                       std::vector<u64>& words) {
  u64 count = (hi - lo + 1) / 2;
  words.assign((count + 63) / 64, 0);
  for (u64 p : base) {
    u64 p2 = p * p;
    if (p2 >= hi) break;
    u64 start;
    if (p2 >= lo) {
      start = p2;
    } else {
      u64 r = lo % p;
      start = r == 0 ? lo : lo + (p - r);
      if ((start & 1) == 0) start += p;
    }
    for (u64 i = (start - lo) >> 1; i < count; i += p)
      words[i >> 6] |= u64(1) << (i & 63);
  }
  // bit 0 of the first segment can be n = 1
  if (lo == 1 && count > 0) words[0] |= 1;
}

}  // namespace detail

std::vector<u64> primes_in(const PrimeRange& r) {
  if (r.modulus == 0)
    throw std::invalid_argument("primes_in: modulus must be >= 1");
  if (r.residue >= r.modulus)
    throw std::invalid_argument("primes_in: residue must lie in [0, modulus)");
  if (r.modulus > 1 && std::gcd(r.residue, r.modulus) != 1)
    throw std::invalid_argument("primes_in: residue not coprime to modulus");
  if (r.hi > u64(1) << 63)
    throw std::invalid_argument("primes_in: hi exceeds 2^63");
  std::vector<u64> out;
  if (r.hi <= r.lo || r.hi <= 1) return out;

  u128 candidates = (u128(r.hi) - r.lo) / r.modulus + 1;
  constexpr u64 kDirectCutoff = 4096;
  if (candidates <= kDirectCutoff) {
    u64 n = r.lo + 1;
    u64 rem = n % r.modulus;
    if (rem != r.residue)
      n += (r.residue >= rem) ? r.residue - rem : r.modulus - rem + r.residue;
    for (; n < r.hi; n += r.modulus)
      if (is_prime(n)) out.push_back(n);
  } else {
    for_primes_in(r.lo, r.hi, [&](u64 p) {
      if (r.modulus == 1 || p % r.modulus == r.residue) out.push_back(p);
    });
  }
  return out;
}

}  // namespace ecg
