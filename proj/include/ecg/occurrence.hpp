#pragma once

#include <compare>
#include <vector>

#include "ecg/core_arith.hpp"

namespace ecg {

// the abelian group Z/m x Z/mk of order m^2 k
struct GroupShape {
  u64 m = 1;
  u64 k = 1;
  u64 order() const { return m * m * k; }
  auto operator<=>(const GroupShape&) const = default;
};

// validates m, k >= 1 and m^2 k < 2^63
GroupShape make_shape(u64 m, u64 k);

// Z/m x Z/mk arises over F_p exactly when p = km^2 + jm + 1 is prime for
// some integer j with j^2 < 4k (both endpoints of the window are excluded:
// j^2 = 4k never qualifies)
struct Witness {
  u64 p;
  i64 j;
};

struct OccurrenceResult {
  GroupShape shape;
  bool occurs = false;
  std::vector<Witness> witnesses;  // ascending j; one entry unless all wanted
};

OccurrenceResult occurs(u64 m, u64 k, bool all_witnesses = false);

// true iff the (m,k) window contains a prime; no witness list is built
bool window_has_prime(u64 m, u64 k);

// p ≡ 1 (mod m) and (p - 1 - km^2)^2 < 4km^2
bool window_contains(u64 m, u64 k, u64 p);

// (p + 1 - n)^2 < 4p  (strict Hasse inequality, prime field)
bool hasse_contains(u64 p, u64 n);

// all shapes with m <= max_m realized over F_p (p prime, p < 2^63),
// sorted by (m, k)
std::vector<GroupShape> shapes_for_prime(u64 p, u64 max_m);

enum class CountStrategy { kDirect, kPrimeDriven, kAuto };

struct RunOptions {
  int threads = 0;                          // 0 -> hardware concurrency
  u64 mem_budget_bytes = u64(2) << 30;      // cap for the pair bitset
  u64 divisor_route_limit = u64(1) << 31;   // internal prime_driven crossover
};

struct CountReport {
  u64 max_m = 0;
  u64 max_k = 0;
  u64 count = 0;
  CountStrategy strategy_used = CountStrategy::kDirect;
  double elapsed_seconds = 0.0;
  std::vector<u64> per_k;  // per-k occurring-m counts (only when requested)
  std::vector<u64> per_m;  // per-m occurring-k counts (only when requested)
};

enum class Marginals { kNone, kPerK, kPerM };

// |S(M,K)| = #{(m,k) : m <= M, k <= K, the window holds a prime}
CountReport count_S(u64 max_m, u64 max_k,
                    CountStrategy strategy = CountStrategy::kAuto,
                    const RunOptions& opt = {},
                    Marginals marginals = Marginals::kNone);

// occurrence bit matrix, bit (m-1)*max_k + (k-1); exposed for equivalence tests
std::vector<u64> occurrence_matrix(u64 max_m, u64 max_k, CountStrategy strategy,
                                   const RunOptions& opt = {});

// non-occurring pairs in the dyadic box M/2 < m <= M, K/2 < k <= K
// (integer halving: the box for M = 1 is the single column m = 1)
u64 count_R(u64 max_m, u64 max_k, const RunOptions& opt = {});

struct DensityPoint {
  u64 max_k;
  u64 count;
  double density;  // count / (max_m * max_k)
};

// densities |S(M,K)|/(MK) along an ascending grid of K values, sharing one
// occurrence scan across all grid points
std::vector<DensityPoint> density_scan(u64 max_m,
                                       const std::vector<u64>& k_grid,
                                       const RunOptions& opt = {});

}  // namespace ecg
