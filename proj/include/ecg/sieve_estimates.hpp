#pragma once

#include <utility>

#include "ecg/occurrence.hpp"

namespace ecg {

struct RhoSpec {
  u64 k = 1;
  i64 j = 0;
};

// #{c mod d : k c^2 + j c + 1 = 0 (mod d)}, d <= 10^6; multiplicative
// prime-product for squarefree d, direct root count otherwise
u64 rho(const RhoSpec& spec, u64 d);

// prime case: ell = 2 -> parity of k - j; ell | k -> whether ell divides j;
// otherwise 1 + Legendre(j^2 - 4k, ell)
u64 rho_prime(const RhoSpec& spec, u64 ell);

// the family A = {k m^2 + j m + 1 : m <= max_m}
struct SieveInstance {
  u64 k = 1;
  i64 j = 0;
  u64 max_m = 1;
};

// #{m <= max_m : |k m^2 + j m + 1| has no prime factor <= y}; exact, by
// root-sieving every prime <= y over the progression of m
u64 sieve_survivors(const SieveInstance& inst, u64 y);

// max_m * prod_{ell <= y} (1 - rho(ell)/ell), accumulated in log space;
// verifies the hypothesis rho(ell) <= min(2, ell - 1) and names the first
// offending prime otherwise
double sieve_main_term(const SieveInstance& inst, u64 y);

// the real character n -> kronecker(-d, n)
struct CharacterSpec {
  u64 d = 1;
  u64 conductor = 1;    // |fundamental discriminant| of Q(sqrt(-d))
  u64 square_part = 1;  // a: the square scale relating -d to its conductor
};

CharacterSpec make_character(u64 d);

int character_value(const CharacterSpec& chi, u64 n);

// (d1, a): conductor of kronecker(-d, .) and the stripped square part;
// d1 = s if s = 3 (mod 4) else 4s, s the squarefree kernel of d;
// a = sqrt(d/d1) when that is an integer square, else the kernel cofactor
std::pair<u64, u64> fundamental_discriminant(u64 d);

// prod_{ell <= y} (1 - chi(ell)/ell), log-space accumulation, y <= 10^8
double euler_product(const CharacterSpec& chi, u64 y);

// the partial product over primes y1 < ell <= y2
double euler_product_range(const CharacterSpec& chi, u64 y1, u64 y2);

// sum of k/phi(k) over all integer pairs (j, k) with j^2 - 4k = -d, k <= max_k
// (both signs of j; j = 0 counted once); requires d <= 4 max_k
double T_sum(u64 d, u64 max_k);

struct DiscrepancyQuery {
  u64 y = 0;
  u64 h = 0;
  u64 q = 1;
  u64 a = 0;
};

// |psi(y+h; q, a) - psi(y; q, a) - h/phi(q)| with psi the Chebyshev sum over
// prime powers; y + h <= 10^10
double psi_discrepancy(const DiscrepancyQuery& query);

struct TheoremRatios {
  u64 max_m = 0;
  u64 max_k = 0;
  u64 count = 0;
  double thm12 = 0.0;          // count * log(max_m) / (max_m * max_k^{3/2})
  double thm13_density = 0.0;  // count / (max_m * max_k)
  double thm14_ratio = 0.0;    // count / (max_m * max_k)
};

TheoremRatios theorem_ratios(u64 max_m, u64 max_k,
                             CountStrategy strategy = CountStrategy::kAuto,
                             const RunOptions& opt = {});

}  // namespace ecg
