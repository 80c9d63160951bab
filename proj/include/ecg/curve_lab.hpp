#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecg/occurrence.hpp"

namespace ecg {

// y^2 = x^3 + ax + b over F_p, p >= 5, 4a^3 + 27b^2 != 0 (mod p)
struct CurveRecord {
  u64 p = 0;
  u64 a = 0;
  u64 b = 0;
  u64 n_points = 0;
  i64 trace = 0;  // p + 1 - n_points
  GroupShape shape;
};

// N = 1 + sum_x (1 + chi(x^3 + ax + b)), chi the quadratic character of F_p
u64 ec_point_count(u64 p, u64 a, u64 b);

// invariant-factor shape (m, k) of E(F_p): the exponent mk is the lcm of the
// orders of all affine points, computed by factored-order descent
GroupShape group_shape_of_curve(u64 p, u64 a, u64 b);

CurveRecord curve_record(u64 p, u64 a, u64 b);

// every shape of order n admissible over F_p: cyclic p-part, and the m-part
// exponent of each other prime ell capped by min(v_ell(p-1), h_ell / 2)
// [Rueck's theorem]; n must lie in the open Hasse window of p.
// Returned sorted by (m, k).
std::vector<GroupShape> ruck_enumerate(u64 n, u64 p);

enum class CensusMode { kEquations, kIsoClasses };

struct CensusOptions {
  CensusMode mode = CensusMode::kEquations;
  int threads = 0;   // 0 -> hardware concurrency
  u64 max_p = 499;   // brute-force guard
};

// histogram shape -> number of nonsingular Weierstrass equations (a, b) over
// F_p with that group shape (or number of F_p-isomorphism classes, identifying
// (a, b) ~ (u^4 a, u^6 b), in kIsoClasses mode)
std::map<GroupShape, u64> census(u64 p, const CensusOptions& opt = {});

struct MofGResult {
  u64 value = 0;
  bool censored = false;  // window reached below p = 5 (census starts at 5)
};

// census count of the shape summed over every prime in its order window
// (p + 1 - N)^2 < 4p; primes above census_max_p are an error
MofGResult M_of_G(u64 m, u64 k, u64 census_max_p = 499,
                  const CensusOptions& opt = {});

enum class AutMode { kClosedForm, kBruteForce };

// number of group automorphisms of Z/m x Z/mk; kBruteForce enumerates the
// m^4 k endomorphism candidates (allowed only for m^2 k <= 10^4) and must
// agree with the per-prime closed form
u64 aut_order(u64 m, u64 k, AutMode mode = AutMode::kClosedForm);

struct CohenLenstraRatio {
  double lhs = 0.0;               // M(G) log N / (4 sqrt N)
  double rhs_unnormalized = 0.0;  // (#G / #Aut G) N^{3/2}
  bool censored = false;
};

CohenLenstraRatio cohen_lenstra_ratio(u64 m, u64 k, u64 census_max_p = 499,
                                      const CensusOptions& opt = {});

struct RuckCheck {
  u64 cells = 0;  // (p, N) pairs compared
  std::vector<std::string> failures;
};

// for every prime p in [5, p_max] and every n in p's window, the census
// shapes of order n must equal ruck_enumerate(n, p) as sets
RuckCheck verify_ruck(u64 p_max, const CensusOptions& opt = {});

}  // namespace ecg
