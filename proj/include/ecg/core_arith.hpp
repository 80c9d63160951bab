#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ecg {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// floor(sqrt(n)), exact for the full uint64 range
u64 isqrt_u64(u64 n);

// deterministic Miller-Rabin, valid for all n < 2^64
bool is_prime(u64 n);

// Jacobi symbol (a|n); n must be odd and positive, a may be negative
int jacobi(i64 a, u64 n);

// Kronecker symbol (a|n) for n >= 1; extends jacobi by the 2-adic rule
// (a|2) = 0 for even a, +1 for a = ±1 (mod 8), -1 for a = ±3 (mod 8)
int kronecker(i64 a, u64 n);

u64 mulmod(u64 a, u64 b, u64 n);
u64 powmod(u64 a, u64 e, u64 n);

// a mod n mapped into [0, n)
u64 umod(i64 a, u64 n);

struct Factor {
  u64 prime;
  int exp;
};

struct FactoredInteger {
  u64 n = 1;
  std::vector<Factor> factors;  // ascending primes

  int valuation(u64 ell) const;
  int mobius() const;           // 0 unless squarefree, else (-1)^{#factors}
  u64 totient() const;
  u64 divisor_count() const;
  double von_mangoldt() const;  // log(ell) if n is a prime power ell^h, else 0
  bool squarefree() const;
  std::vector<u64> divisors() const;            // all divisors, ascending
  std::vector<u64> divisors_up_to(u64 cap) const;  // divisors <= cap, ascending
};

// trial division below a fixed bound, then Pollard rho (Brent cycle, fixed
// deterministic seed) with Miller-Rabin certification of every factor
FactoredInteger factorize(u64 n);

// open interval (lo, hi) restricted to p ≡ residue (mod modulus);
// modulus >= 1, residue < modulus, gcd(residue, modulus) = 1 when modulus > 1
struct PrimeRange {
  u64 lo = 0;
  u64 hi = 0;
  u64 modulus = 1;
  u64 residue = 0;
};

// ascending primes in the range; short candidate lists use per-candidate
// Miller-Rabin, long ones a segmented sieve (cutoff internal)
std::vector<u64> primes_in(const PrimeRange& range);

// all primes <= limit by a plain odd-only sieve (meant for limit <= ~10^7)
std::vector<u64> primes_up_to(u64 limit);

namespace detail {

// segment length measured in odd numbers (span = 2 * kSegmentOdds)
inline constexpr u64 kSegmentOdds = u64(1) << 20;

// odd primes <= isqrt(n), for use as sieve base primes
std::vector<u64> odd_base_primes(u64 n);

// mark composite odds of [lo, hi) in words (bit i <-> lo + 2i); lo odd
void sieve_odd_segment(u64 lo, u64 hi, const std::vector<u64>& base,
                       std::vector<u64>& words);

}  // namespace detail

// calls fn(p) for every prime p with lo < p < hi, ascending
template <class F>
void for_primes_in(u64 lo, u64 hi, F&& fn) {
  if (hi <= lo || hi <= 2) return;
  if (lo < 2) fn(u64(2));
  u64 start = std::max<u64>(lo + 1, 3);
  if (start % 2 == 0) ++start;
  if (start >= hi) return;
  const std::vector<u64> base = detail::odd_base_primes(hi - 1);
  std::vector<u64> words;
  for (u64 seg_lo = start; seg_lo < hi; seg_lo += 2 * detail::kSegmentOdds) {
    u64 seg_hi = std::min(hi, seg_lo + 2 * detail::kSegmentOdds);
    detail::sieve_odd_segment(seg_lo, seg_hi, base, words);
    u64 count = (seg_hi - seg_lo + 1) / 2;
    for (u64 w = 0; w < words.size(); ++w) {
      u64 free_bits = ~words[w];
      while (free_bits) {
        u64 bit = u64(__builtin_ctzll(free_bits));
        free_bits &= free_bits - 1;
        u64 i = w * 64 + bit;
        if (i >= count) break;
        fn(seg_lo + 2 * i);
      }
    }
  }
}

}  // namespace ecg
