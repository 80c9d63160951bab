#include "ecg/occurrence.hpp"

#include <cstdint>
#include <set>
#include <string>
#include <utility>

#include "doctest.h"

using namespace ecg;

namespace {

bool naive_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// window scan with the j^2 < 4k predicate written out, trial-division primality
bool naive_occurs(u64 m, u64 k) {
  i64 span = i64(2 * isqrt_u64(k)) + 2;
  for (i64 j = -span; j <= span; ++j) {
    if (u128(j < 0 ? -j : j) * u64(j < 0 ? -j : j) >= 4 * u128(k)) continue;
    i128 c = i128(k) * m * m + i128(j) * m + 1;
    if (c >= 2 && naive_prime(u64(c))) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("make_shape validates") {
  GroupShape s = make_shape(2, 3);
  CHECK(s.m == 2);
  CHECK(s.k == 3);
  CHECK(s.order() == 12);
  CHECK_THROWS_AS(make_shape(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_shape(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_shape(u64(1) << 32, 1), std::overflow_error);
  CHECK_THROWS_AS(make_shape(3037000500ull, 1), std::overflow_error);
  CHECK(make_shape(1, (u64(1) << 63) - 1).order() == (u64(1) << 63) - 1);
}

TEST_CASE("occurs on pinned shapes") {
  {
    OccurrenceResult r = occurs(1, 1, true);
    CHECK(r.occurs);
    REQUIRE(r.witnesses.size() == 2);
    CHECK(r.witnesses[0].p == 2);
    CHECK(r.witnesses[0].j == 0);
    CHECK(r.witnesses[1].p == 3);
    CHECK(r.witnesses[1].j == 1);
  }
  {
    OccurrenceResult r = occurs(2, 1, true);
    CHECK(r.occurs);
    REQUIRE(r.witnesses.size() == 3);
    CHECK(r.witnesses[0].p == 3);
    CHECK(r.witnesses[0].j == -1);
    CHECK(r.witnesses[1].p == 5);
    CHECK(r.witnesses[1].j == 0);
    CHECK(r.witnesses[2].p == 7);
    CHECK(r.witnesses[2].j == 1);
  }
  {
    // 111 = 3*37, 122 = 2*61, 133 = 7*19: no prime in the (11,1) window
    OccurrenceResult r = occurs(11, 1, true);
    CHECK_FALSE(r.occurs);
    CHECK(r.witnesses.empty());
  }
  {
    OccurrenceResult r = occurs(1, 5, true);
    REQUIRE(r.witnesses.size() == 4);
    CHECK(r.witnesses[0].p == 2);
    CHECK(r.witnesses[0].j == -4);
    CHECK(r.witnesses[3].p == 7);
    CHECK(r.witnesses[3].j == 1);
  }
  {
    OccurrenceResult first = occurs(2, 1);
    REQUIRE(first.witnesses.size() == 1);
    CHECK(first.witnesses[0].p == 3);
    CHECK(first.witnesses[0].j == -1);
  }
}

TEST_CASE("occurs and window_has_prime match a naive scan") {
  for (u64 m = 1; m <= 40; ++m)
    for (u64 k = 1; k <= 40; ++k) {
      bool expect = naive_occurs(m, k);
      CHECK(window_has_prime(m, k) == expect);
      CHECK(occurs(m, k).occurs == expect);
    }
}

TEST_CASE("witness list is exactly the primes of the window") {
  for (u64 m = 1; m <= 12; ++m)
    for (u64 k = 1; k <= 12; ++k) {
      OccurrenceResult r = occurs(m, k, true);
      i64 prev_j = INT64_MIN;
      for (const Witness& w : r.witnesses) {
        CHECK(w.j > prev_j);
        prev_j = w.j;
        CHECK(u128(w.j < 0 ? -w.j : w.j) * u64(w.j < 0 ? -w.j : w.j) <
              4 * u128(k));
        CHECK(w.p == u64(i128(k) * m * m + i128(w.j) * m + 1));
        CHECK(naive_prime(w.p));
        CHECK(window_contains(m, k, w.p));
      }
      // count check: every prime candidate appears
      u64 expect = 0;
      i64 span = i64(2 * isqrt_u64(k)) + 2;
      for (i64 j = -span; j <= span; ++j) {
        if (u128(j < 0 ? -j : j) * u64(j < 0 ? -j : j) >= 4 * u128(k)) continue;
        i128 c = i128(k) * m * m + i128(j) * m + 1;
        if (c >= 2 && naive_prime(u64(c))) ++expect;
      }
      CHECK(r.witnesses.size() == expect);
    }
}

TEST_CASE("window_contains pinned and cross-checked") {
  CHECK(window_contains(2, 1, 3));
  CHECK(window_contains(2, 1, 5));
  CHECK(window_contains(2, 1, 7));
  CHECK_FALSE(window_contains(2, 1, 11));
  CHECK_FALSE(window_contains(2, 1, 4));  // 4 - 1 is odd: fails p = 1 (mod 2)
  CHECK(window_contains(3, 1, 7));
  CHECK_FALSE(window_contains(3, 1, 2));
  // membership == existence of an admissible j
  for (u64 m = 1; m <= 10; ++m)
    for (u64 k = 1; k <= 10; ++k)
      for (u64 p = 2; p <= 300; ++p) {
        bool expect = false;
        for (i64 j = -30; j <= 30; ++j)
          if (u128(j < 0 ? -j : j) * u64(j < 0 ? -j : j) < 4 * u128(k) &&
              i128(k) * m * m + i128(j) * m + 1 == i128(p))
            expect = true;
        CHECK(window_contains(m, k, p) == expect);
      }
}

TEST_CASE("hasse_contains is the exact integer window") {
  for (u64 p : {u64(2), u64(3), u64(5), u64(7), u64(97), u64(1009)}) {
    u64 r = isqrt_u64(4 * p);
    u64 nlo = p + 1 - r, nhi = p + 1 + r;
    for (u64 n = nlo > 3 ? nlo - 3 : 1; n <= nhi + 3; ++n)
      CHECK(hasse_contains(p, n) == (nlo <= n && n <= nhi));
  }
  // window and trace forms agree: (p+1-n)^2 < 4p  <=>  (p-1-n)^2 < 4n
  for (u64 p = 2; p <= 2000; ++p)
    for (u64 n = p > 100 ? p - 100 : 1; n <= p + 100; ++n) {
      bool lhs = hasse_contains(p, n);
      i128 d = i128(p) - 1 - i128(n);
      bool rhs = d * d < i128(4) * n;
      CHECK(lhs == rhs);
    }
}

TEST_CASE("shapes_for_prime pinned") {
  {
    std::vector<GroupShape> s = shapes_for_prime(2, 1);
    REQUIRE(s.size() == 5);
    for (u64 k = 1; k <= 5; ++k) {
      CHECK(s[k - 1].m == 1);
      CHECK(s[k - 1].k == k);
    }
  }
  {
    std::vector<GroupShape> s = shapes_for_prime(3, 1);
    REQUIRE(s.size() == 7);
    CHECK(s.front().k == 1);
    CHECK(s.back().k == 7);
  }
  {
    std::vector<GroupShape> s = shapes_for_prime(5, 5);
    REQUIRE(s.size() == 11);
    CHECK(s[0] == GroupShape{1, 2});
    CHECK(s[8] == GroupShape{1, 10});
    CHECK(s[9] == GroupShape{2, 1});
    CHECK(s[10] == GroupShape{2, 2});
  }
  CHECK_THROWS_AS(shapes_for_prime(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(shapes_for_prime(7, 0), std::invalid_argument);
}

TEST_CASE("shapes_for_prime agrees with window_contains") {
  for (u64 p : primes_up_to(500)) {
    std::vector<GroupShape> listed = shapes_for_prime(p, 30);
    std::set<std::pair<u64, u64>> got;
    for (const GroupShape& s : listed) {
      CHECK(window_contains(s.m, s.k, p));
      CHECK(got.insert({s.m, s.k}).second);  // no duplicates
      CHECK(s.m <= 30);
    }
    for (u64 m = 1; m <= 30; ++m)
      for (u64 k = 1; k <= 4 * p; ++k)
        if (window_contains(m, k, p))
          CHECK(got.count({m, k}) == 1);
  }
}

TEST_CASE("count_S pinned and against the naive oracle") {
  RunOptions opt;
  opt.threads = 1;
  CHECK(count_S(11, 1, CountStrategy::kDirect, opt).count == 10);
  CHECK(count_S(1, 1, CountStrategy::kDirect, opt).count == 1);
  for (u64 M : {u64(5), u64(17)})
    for (u64 K : {u64(7), u64(23)}) {
      u64 expect = 0;
      for (u64 m = 1; m <= M; ++m)
        for (u64 k = 1; k <= K; ++k) expect += naive_occurs(m, k);
      CHECK(count_S(M, K, CountStrategy::kDirect, opt).count == expect);
      CHECK(count_S(M, K, CountStrategy::kPrimeDriven, opt).count == expect);
    }
}

TEST_CASE("strategies and internal routes build identical matrices") {
  RunOptions base;
  base.threads = 2;
  RunOptions probe = base;
  probe.divisor_route_limit = 0;  // force candidate probing
  RunOptions divisor = base;
  divisor.divisor_route_limit = ~u64(0);
  for (auto [M, K] : {std::pair<u64, u64>{64, 64}, {1, 300}, {300, 1},
                      {97, 13}, {13, 97}}) {
    std::vector<u64> direct =
        occurrence_matrix(M, K, CountStrategy::kDirect, base);
    CHECK(direct == occurrence_matrix(M, K, CountStrategy::kPrimeDriven, probe));
    CHECK(direct ==
          occurrence_matrix(M, K, CountStrategy::kPrimeDriven, divisor));
  }
}

TEST_CASE("matrix bits match per-pair occurs") {
  u64 M = 24, K = 31;
  std::vector<u64> bits = occurrence_matrix(M, K, CountStrategy::kPrimeDriven);
  for (u64 m = 1; m <= M; ++m)
    for (u64 k = 1; k <= K; ++k) {
      u64 idx = (m - 1) * K + (k - 1);
      bool bit = (bits[idx / 64] >> (idx % 64)) & 1;
      CHECK(bit == naive_occurs(m, k));
    }
}

TEST_CASE("count_S marginals are consistent") {
  RunOptions opt;
  opt.threads = 3;
  for (CountStrategy st : {CountStrategy::kDirect, CountStrategy::kPrimeDriven}) {
    CountReport rk = count_S(20, 30, st, opt, Marginals::kPerK);
    REQUIRE(rk.per_k.size() == 31);
    u64 sum = 0;
    for (u64 k = 1; k <= 30; ++k) sum += rk.per_k[k];
    CHECK(sum == rk.count);
    CountReport rm = count_S(20, 30, st, opt, Marginals::kPerM);
    REQUIRE(rm.per_m.size() == 21);
    sum = 0;
    for (u64 m = 1; m <= 20; ++m) {
      u64 expect = 0;
      for (u64 k = 1; k <= 30; ++k) expect += naive_occurs(m, k);
      CHECK(rm.per_m[m] == expect);
      sum += rm.per_m[m];
    }
    CHECK(sum == rm.count);
  }
}

TEST_CASE("count_S deterministic across worker counts") {
  RunOptions single;
  single.threads = 1;
  std::vector<u64> baseline =
      occurrence_matrix(50, 23, CountStrategy::kPrimeDriven, single);
  u64 base_count = count_S(40, 40, CountStrategy::kDirect, single).count;
  for (int t : {2, 5, 8}) {
    RunOptions opt;
    opt.threads = t;
    CHECK(count_S(40, 40, CountStrategy::kDirect, opt).count == base_count);
    CHECK(count_S(40, 40, CountStrategy::kPrimeDriven, opt).count == base_count);
    CHECK(occurrence_matrix(50, 23, CountStrategy::kPrimeDriven, opt) ==
          baseline);
  }
}

TEST_CASE("count_S validation and strategy reporting") {
  CHECK_THROWS_AS(count_S(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(count_S(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(count_S(u64(1) << 32, 1), std::overflow_error);
  RunOptions tiny;
  tiny.threads = 1;
  tiny.mem_budget_bytes = 8;
  bool budget_error = false;
  try {
    count_S(100, 100, CountStrategy::kPrimeDriven, tiny);
  } catch (const std::runtime_error& e) {
    budget_error = std::string(e.what()).find("budget") != std::string::npos &&
                   std::string(e.what()).find("bytes") != std::string::npos;
  }
  CHECK(budget_error);
  // auto falls back to direct instead of failing the budget
  CountReport r = count_S(300, 300, CountStrategy::kAuto, tiny);
  CHECK(r.strategy_used == CountStrategy::kDirect);
  RunOptions roomy;
  roomy.threads = 2;
  CountReport r2 = count_S(300, 300, CountStrategy::kAuto, roomy);
  CHECK(r2.strategy_used == CountStrategy::kPrimeDriven);
  CHECK(r2.count == r.count);
  // tall thin boxes go direct under auto
  CHECK(count_S(70000, 1, CountStrategy::kAuto, roomy).strategy_used ==
        CountStrategy::kDirect);
}

TEST_CASE("count_R pinned and against the naive oracle") {
  RunOptions opt;
  opt.threads = 2;
  for (auto [M, K] : {std::pair<u64, u64>{1, 1}, {2, 2}, {11, 1}, {40, 40},
                      {37, 19}}) {
    u64 expect = 0;
    for (u64 m = M / 2 + 1; m <= M; ++m)
      for (u64 k = K / 2 + 1; k <= K; ++k) expect += !naive_occurs(m, k);
    CHECK(count_R(M, K, opt) == expect);
  }
  CHECK(count_R(1, 1, opt) == 0);  // (1,1) occurs (p = 2)
}

TEST_CASE("density_scan shares one scan and matches count_S") {
  RunOptions opt;
  opt.threads = 2;
  std::vector<u64> grid = {1, 2, 4, 8, 16, 31};
  std::vector<DensityPoint> pts = density_scan(25, grid, opt);
  REQUIRE(pts.size() == grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    CHECK(pts[i].max_k == grid[i]);
    CHECK(pts[i].count == count_S(25, grid[i], CountStrategy::kDirect, opt).count);
    CHECK(pts[i].density ==
          doctest::Approx(double(pts[i].count) / (25.0 * double(grid[i]))));
  }
  CHECK_THROWS_AS(density_scan(5, {}, opt), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(5, {3, 3}, opt), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(5, {4, 2}, opt), std::invalid_argument);
  CHECK_THROWS_AS(density_scan(5, {0, 2}, opt), std::invalid_argument);
}
