#include "ecg/sieve_estimates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecg/core_arith.hpp"

namespace ecg {
namespace {

constexpr u64 kRhoModulusLimit = 1'000'000;
constexpr u64 kSurvivorMaxM = 10'000'000;
constexpr u64 kSurvivorMaxY = 100'000;
constexpr u64 kMainTermMaxY = 1'000'000;
constexpr u64 kEulerMaxY = 100'000'000;
constexpr u64 kPsiMaxSpan = 10'000'000'000ULL;
constexpr u64 kSignedLimit = u64(1) << 62;  // keeps 4s and -d inside i64

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double t = x - carry;
    double next = sum + t;
    carry = (next - sum) - t;
    sum = next;
  }
  double value() const { return sum + carry; }
};

// sweep of k c^2 + j c + 1 mod d via first differences: everything stays
// reduced, so no wide arithmetic in the loop
u64 count_roots_direct(u64 k, i64 j, u64 d) {
  if (d == 1) return 1;
  u64 km = k % d;
  u64 f = 1 % d;                       // f(0)
  u64 step = (km + umod(j, d)) % d;    // f(c+1) - f(c) = k(2c+1) + j
  u64 two_k = (2 * km) % d;
  u64 roots = 0;
  for (u64 c = 0; c < d; ++c) {
    if (f == 0) ++roots;
    f += step;
    if (f >= d) f -= d;
    step += two_k;
    if (step >= d) step -= d;
  }
  return roots;
}

void validate_rho_spec(const RhoSpec& spec, const char* who) {
  if (spec.k == 0)
    throw std::invalid_argument(std::string(who) + ": k must be positive");
}

}  // namespace

u64 rho_prime(const RhoSpec& spec, u64 ell) {
  validate_rho_spec(spec, "rho_prime");
  if (!is_prime(ell))
    throw std::invalid_argument("rho_prime: modulus must be prime");
  if (ell == 2) return ((spec.k ^ u64(spec.j)) & 1) ? 1 : 0;
  if (spec.k % ell == 0) return umod(spec.j, ell) != 0 ? 1 : 0;
  i128 disc = i128(spec.j) * spec.j - i128(4) * i128(spec.k);
  i64 r = i64(disc % i128(ell));
  if (r < 0) r += i64(ell);
  return u64(1 + jacobi(r, ell));
}

u64 rho(const RhoSpec& spec, u64 d) {
  validate_rho_spec(spec, "rho");
  if (d == 0 || d > kRhoModulusLimit)
    throw std::invalid_argument("rho: need 1 <= d <= 10^6");
  if (d == 1) return 1;
  FactoredInteger fd = factorize(d);
  if (fd.squarefree()) {
    u64 prod = 1;
    for (const Factor& f : fd.factors) prod *= rho_prime(spec, f.prime);
    return prod;
  }
  return count_roots_direct(spec.k, spec.j, d);
}

u64 sieve_survivors(const SieveInstance& inst, u64 y) {
  if (inst.k == 0)
    throw std::invalid_argument("sieve_survivors: k must be positive");
  if (inst.max_m == 0 || inst.max_m > kSurvivorMaxM)
    throw std::invalid_argument("sieve_survivors: need 1 <= max_m <= 10^7");
  if (y > kSurvivorMaxY)
    throw std::invalid_argument("sieve_survivors: need y <= 10^5");
  i128 peak = i128(inst.k) * inst.max_m * inst.max_m +
              (inst.j < 0 ? -i128(inst.j) : i128(inst.j)) * inst.max_m + 1;
  if (peak >= i128(1) << 63)
    throw std::overflow_error("sieve_survivors: |k m^2 + j m + 1| can exceed 2^63");

  std::vector<u64> primes = primes_up_to(y);  // empty when y < 2
  u64 alive = 0;
  for (u64 m = 1; m <= inst.max_m; ++m) {
    i128 wide = i128(inst.k) * m * m + i128(inst.j) * m + 1;
    u64 v = wide < 0 ? u64(-wide) : u64(wide);
    bool survivor = true;
    if (v == 0) {
      survivor = primes.empty();  // every prime divides 0
    } else {
      for (u64 p : primes) {
        if (p * p > v) {
          survivor = v == 1 || v > y;  // v is 1 or prime here
          break;
        }
        if (v % p == 0) {
          survivor = false;
          break;
        }
      }
    }
    alive += survivor ? 1 : 0;
  }
  return alive;
}

double sieve_main_term(const SieveInstance& inst, u64 y) {
  if (inst.k == 0)
    throw std::invalid_argument("sieve_main_term: k must be positive");
  if (inst.max_m == 0)
    throw std::invalid_argument("sieve_main_term: max_m must be positive");
  if (y > kMainTermMaxY)
    throw std::invalid_argument("sieve_main_term: need y <= 10^6");
  if (y < 2) return double(inst.max_m);
  RhoSpec spec{inst.k, inst.j};
  KahanSum logsum;
  for_primes_in(1, y + 1, [&](u64 ell) {
    u64 r = rho_prime(spec, ell);
    if (r > std::min<u64>(2, ell - 1))
      throw std::runtime_error("sieve_main_term: rho(" + std::to_string(ell) +
                               ") = " + std::to_string(r) +
                               " breaks the rho <= min(2, ell - 1) hypothesis");
    if (r != 0) logsum.add(std::log1p(-double(r) / double(ell)));
  });
  return double(inst.max_m) * std::exp(logsum.value());
}

std::pair<u64, u64> fundamental_discriminant(u64 d) {
  if (d == 0)
    throw std::invalid_argument("fundamental_discriminant: d must be positive");
  if (d >= kSignedLimit)
    throw std::invalid_argument("fundamental_discriminant: need d < 2^62");
  u64 kernel = 1;    // squarefree part
  u64 cofactor = 1;  // d = cofactor^2 * kernel
  for (const Factor& f : factorize(d).factors) {
    if (f.exp & 1) kernel *= f.prime;
    for (int i = 0; i < f.exp / 2; ++i) cofactor *= f.prime;
  }
  u64 d1 = (kernel % 4 == 3) ? kernel : 4 * kernel;
  // scale relating -d to the fundamental discriminant -d1 when it is an
  // honest square; otherwise the square cofactor of d itself (2-adic slack)
  u64 a = cofactor;
  if (d % d1 == 0) {
    u64 q = d / d1;
    u64 r = isqrt_u64(q);
    if (r * r == q) a = r;
  }
  return {d1, a};
}

CharacterSpec make_character(u64 d) {
  auto [d1, a] = fundamental_discriminant(d);  // validates d
  return CharacterSpec{d, d1, a};
}

int character_value(const CharacterSpec& chi, u64 n) {
  return kronecker(-i64(chi.d), n);
}

double euler_product_range(const CharacterSpec& chi, u64 y1, u64 y2) {
  if (y2 > kEulerMaxY)
    throw std::invalid_argument("euler_product: need y <= 10^8");
  if (y1 > y2)
    throw std::invalid_argument("euler_product: need y1 <= y2");
  if (chi.d >= kSignedLimit)
    throw std::invalid_argument("euler_product: need d < 2^62");
  KahanSum logsum;
  for_primes_in(y1, y2 + 1, [&](u64 ell) {
    int value = character_value(chi, ell);
    if (value != 0) logsum.add(std::log1p(-double(value) / double(ell)));
  });
  return std::exp(logsum.value());
}

double euler_product(const CharacterSpec& chi, u64 y) {
  if (y < 2) return 1.0;
  return euler_product_range(chi, 1, y);
}

double T_sum(u64 d, u64 max_k) {
  if (d == 0) throw std::invalid_argument("T_sum: d must be positive");
  if (max_k == 0 || u128(4) * max_k < d)
    throw std::invalid_argument("T_sum: need d <= 4*max_k");
  u64 dm4 = d % 4;
  // j^2 = 4k - d forces j^2 = -d (mod 4): solvable only for d = 0, 3 (mod 4)
  if (dm4 == 1 || dm4 == 2) return 0.0;
  KahanSum total;
  for (u64 j = (dm4 == 0) ? 0 : 1;; j += 2) {
    u128 four_k = u128(j) * j + d;
    if (four_k > u128(4) * max_k) break;
    u64 k = u64(four_k / 4);
    double term = double(k) / double(factorize(k).totient());
    total.add(j == 0 ? term : 2.0 * term);  // both signs; j = 0 once
  }
  return total.value();
}

double psi_discrepancy(const DiscrepancyQuery& query) {
  if (query.q == 0)
    throw std::invalid_argument("psi_discrepancy: q must be positive");
  u64 a = query.a % query.q;
  if (std::gcd(a, query.q) != 1)
    throw std::invalid_argument("psi_discrepancy: need gcd(a, q) = 1");
  if (query.y > kPsiMaxSpan || query.h > kPsiMaxSpan - query.y)
    throw std::invalid_argument("psi_discrepancy: need y + h <= 10^10");
  if (query.h == 0) return 0.0;
  u64 lo = query.y;
  u64 hi = query.y + query.h;

  KahanSum psi;
  for_primes_in(lo, hi + 1, [&](u64 p) {
    if (p % query.q == a) psi.add(std::log(double(p)));
  });
  // higher prime powers p^e in (lo, hi], e >= 2
  for (u64 p : primes_up_to(isqrt_u64(hi))) {
    u128 pe = u128(p) * p;
    double logp = std::log(double(p));
    while (pe <= hi) {
      u64 n = u64(pe);
      if (n > lo && n % query.q == a) psi.add(logp);
      pe *= p;
    }
  }
  double expected = double(query.h) / double(factorize(query.q).totient());
  return std::abs(psi.value() - expected);
}

TheoremRatios theorem_ratios(u64 max_m, u64 max_k, CountStrategy strategy,
                             const RunOptions& opt) {
  CountReport report = count_S(max_m, max_k, strategy, opt);
  TheoremRatios out;
  out.max_m = max_m;
  out.max_k = max_k;
  out.count = report.count;
  double box = double(max_m) * double(max_k);
  double c = double(report.count);
  out.thm12 = c * std::log(double(max_m)) /
              (double(max_m) * std::pow(double(max_k), 1.5));
  out.thm13_density = c / box;
  out.thm14_ratio = c / box;
  return out;
}

}  // namespace ecg
