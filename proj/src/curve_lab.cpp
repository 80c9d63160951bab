#include "ecg/curve_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "parallel.hpp"

namespace ecg {

namespace {

void validate_field(u64 p, u64 a, u64 b) {
  if (p < 5) throw std::invalid_argument("curve ops need p >= 5");
  if (p >= u64(1) << 31)
    throw std::invalid_argument("curve ops: field too large for enumeration");
  if (!is_prime(p)) throw std::invalid_argument("curve ops: p must be prime");
  if (a >= p || b >= p)
    throw std::invalid_argument("curve ops: coefficients must lie in [0, p)");
}

u64 discriminant_term(u64 p, u64 a, u64 b) {  // 4a^3 + 27b^2 mod p
  u64 a3 = mulmod(mulmod(a, a, p), a, p);
  u64 b2 = mulmod(b, b, p);
  return (mulmod(4, a3, p) + mulmod(27, b2, p)) % p;
}

struct FieldTable {
  u64 p;
  std::vector<int8_t> chi;               // chi[0] = 0
  std::vector<std::vector<u64>> roots;   // roots[t]: all y with y^2 = t

  explicit FieldTable(u64 p_) : p(p_), chi(p_, -1), roots(p_) {
    for (u64 y = 0; y < p; ++y) roots[mulmod(y, y, p)].push_back(y);
    for (u64 t = 1; t < p; ++t)
      if (!roots[t].empty()) chi[t] = 1;
    chi[0] = 0;
  }
  u64 rhs(u64 a, u64 b, u64 x) const {
    return (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
  }
};

struct Pt {
  u64 x = 0, y = 0;
  bool inf = true;
};

u64 inv_mod(u64 v, u64 p) { return powmod(v, p - 2, p); }

Pt ec_add(const Pt& P, const Pt& Q, u64 a, u64 p) {
  if (P.inf) return Q;
  if (Q.inf) return P;
  u64 lam;
  if (P.x == Q.x) {
    if ((P.y + Q.y) % p == 0) return {};  // inverse pair, incl. y = 0 doubling
    u64 num = (mulmod(3, mulmod(P.x, P.x, p), p) + a) % p;
    lam = mulmod(num, inv_mod(2 * P.y % p, p), p);
  } else {
    lam = mulmod((Q.y + p - P.y) % p, inv_mod((Q.x + p - P.x) % p, p), p);
  }
  u64 x3 = (mulmod(lam, lam, p) + 2 * p - P.x - Q.x) % p;
  u64 y3 = (mulmod(lam, (P.x + p - x3) % p, p) + p - P.y) % p;
  return {x3, y3, false};
}

Pt ec_mul(u64 e, Pt P, u64 a, u64 p) {
  Pt acc;
  while (e) {
    if (e & 1) acc = ec_add(acc, P, a, p);
    e >>= 1;
    if (e) P = ec_add(P, P, a, p);
  }
  return acc;
}

u64 point_order(const Pt& P, const FactoredInteger& fn, u64 a, u64 p) {
  u64 ord = fn.n;
  for (const Factor& f : fn.factors)
    for (int e = 0; e < f.exp; ++e) {
      u64 t = ord / f.prime;
      if (!ec_mul(t, P, a, p).inf) break;
      ord = t;
    }
  return ord;
}

u64 point_count_with_table(const FieldTable& tab, u64 a, u64 b) {
  i64 sum = 0;
  for (u64 x = 0; x < tab.p; ++x) sum += tab.chi[tab.rhs(a, b, x)];
  return u64(i64(tab.p) + 1 + sum);
}

GroupShape shape_with_table(const FieldTable& tab, u64 a, u64 b, u64 n,
                            const FactoredInteger& fn) {
  u64 p = tab.p;
  u64 expo = 1;
  for (u64 x = 0; x < p && expo != n; ++x) {
    u64 t = tab.rhs(a, b, x);
    for (u64 y : tab.roots[t]) {
      Pt P{x, y, false};
      if (ec_mul(expo, P, a, p).inf) continue;  // order already divides expo
      expo = std::lcm(expo, point_order(P, fn, a, p));
      if (expo == n) break;
    }
  }
  u64 m = n / expo;
  if (n % expo != 0 || expo % m != 0 || m * m * (expo / m) != n)
    throw std::logic_error("curve group shape inconsistent with its order");
  return GroupShape{m, expo / m};
}

// inclusive prime window [lo, hi] of the order n: (p + 1 - n)^2 < 4p
void order_window(u64 n, u64& lo, u64& hi) {
  u64 r = isqrt_u64(n);
  u64 s = r * (r + 1) < n ? 2 * r + 1 : 2 * r;  // floor(sqrt(4n))
  lo = n + 1 - s;
  hi = n + 1 + s;
  if (r * r == n) {  // 4n a perfect square: strict inequality drops endpoints
    ++lo;
    --hi;
  }
}

}  // namespace

u64 ec_point_count(u64 p, u64 a, u64 b) {
  validate_field(p, a, b);
  if (discriminant_term(p, a, b) == 0)
    throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0 (mod p)");
  i64 sum = 0;
  for (u64 x = 0; x < p; ++x) {
    u64 t = (mulmod(mulmod(x, x, p), x, p) + mulmod(a, x, p) + b) % p;
    sum += t == 0 ? 0 : jacobi(i64(t), p);
  }
  return u64(i64(p) + 1 + sum);
}

GroupShape group_shape_of_curve(u64 p, u64 a, u64 b) {
  validate_field(p, a, b);
  if (discriminant_term(p, a, b) == 0)
    throw std::invalid_argument("singular curve: 4a^3 + 27b^2 = 0 (mod p)");
  FieldTable tab(p);
  u64 n = point_count_with_table(tab, a, b);
  return shape_with_table(tab, a, b, n, factorize(n));
}

CurveRecord curve_record(u64 p, u64 a, u64 b) {
  CurveRecord rec;
  rec.p = p;
  rec.a = a;
  rec.b = b;
  rec.n_points = ec_point_count(p, a, b);
  rec.trace = i64(p) + 1 - i64(rec.n_points);
  FieldTable tab(p);
  rec.shape = shape_with_table(tab, a, b, rec.n_points, factorize(rec.n_points));
  return rec;
}

std::vector<GroupShape> ruck_enumerate(u64 n, u64 p) {
  if (n < 1) throw std::invalid_argument("ruck_enumerate: n must be >= 1");
  if (p < 2 || !is_prime(p))
    throw std::invalid_argument("ruck_enumerate: p must be prime");
  if (!hasse_contains(p, n))
    throw std::invalid_argument("ruck_enumerate: n outside the Hasse window");
  std::vector<u64> m_values{1};
  for (const Factor& f : factorize(n).factors) {
    int cap = 0;
    if (f.prime != p) {
      int v = 0;
      for (u64 t = p - 1; t % f.prime == 0; t /= f.prime) ++v;
      cap = std::min(v, f.exp / 2);
    }
    size_t base_count = m_values.size();
    u64 power = 1;
    for (int b = 1; b <= cap; ++b) {
      power *= f.prime;
      for (size_t i = 0; i < base_count; ++i)
        m_values.push_back(m_values[i] * power);
    }
  }
  std::vector<GroupShape> out;
  out.reserve(m_values.size());
  for (u64 m : m_values) out.push_back(GroupShape{m, n / (m * m)});
  std::sort(out.begin(), out.end());
  return out;
}

std::map<GroupShape, u64> census(u64 p, const CensusOptions& opt) {
  validate_field(p, 0, 0);
  if (p > opt.max_p)
    throw std::invalid_argument("census: p exceeds the brute-force bound " +
                                std::to_string(opt.max_p));
  FieldTable tab(p);
  std::vector<u64> u4(p), u6(p);
  if (opt.mode == CensusMode::kIsoClasses)
    for (u64 u = 1; u < p; ++u) {
      u64 u2 = mulmod(u, u, p);
      u4[u] = mulmod(u2, u2, p);
      u6[u] = mulmod(u4[u], u2, p);
    }
  int threads = detail::resolve_threads(opt.threads);
  std::vector<std::map<GroupShape, u64>> partial(threads);
  detail::run_workers(threads, [&](int w) {
    std::unordered_map<u64, FactoredInteger> fcache;
    for (u64 a = u64(w); a < p; a += u64(threads)) {
      for (u64 b = 0; b < p; ++b) {
        if (discriminant_term(p, a, b) == 0) continue;
        if (opt.mode == CensusMode::kIsoClasses) {
          bool minimal = true;
          for (u64 u = 1; u < p && minimal; ++u) {
            u64 ta = mulmod(u4[u], a, p), tb = mulmod(u6[u], b, p);
            if (ta < a || (ta == a && tb < b)) minimal = false;
          }
          if (!minimal) continue;
        }
        u64 n = point_count_with_table(tab, a, b);
        auto it = fcache.find(n);
        if (it == fcache.end()) it = fcache.emplace(n, factorize(n)).first;
        ++partial[w][shape_with_table(tab, a, b, n, it->second)];
      }
    }
  });
  std::map<GroupShape, u64> out;
  for (const auto& part : partial)
    for (const auto& [shape, cnt] : part) out[shape] += cnt;
  return out;
}

MofGResult M_of_G(u64 m, u64 k, u64 census_max_p, const CensusOptions& opt) {
  GroupShape g = make_shape(m, k);
  u64 lo, hi;
  order_window(g.order(), lo, hi);
  MofGResult res;
  CensusOptions copt = opt;
  copt.max_p = census_max_p;
  for (u64 p = lo; p <= hi; ++p) {
    if (!is_prime(p)) continue;
    if (p < 5) {
      res.censored = true;
      continue;
    }
    if (p > census_max_p)
      throw std::out_of_range("M_of_G: window prime " + std::to_string(p) +
                              " exceeds the census bound " +
                              std::to_string(census_max_p));
    std::map<GroupShape, u64> c = census(p, copt);
    auto it = c.find(g);
    if (it != c.end()) res.value += it->second;
  }
  return res;
}

u64 aut_order(u64 m, u64 k, AutMode mode) {
  GroupShape g = make_shape(m, k);
  if (mode == AutMode::kBruteForce) {
    if (g.order() > 10000)
      throw std::invalid_argument("aut_order: m^2 k > 10^4 in brute-force mode");
    u64 mk = m * k;
    std::vector<u64> m_primes, k_only_primes;
    for (const Factor& f : factorize(m).factors) m_primes.push_back(f.prime);
    for (const Factor& f : factorize(k).factors)
      if (m % f.prime != 0) k_only_primes.push_back(f.prime);
    //order-compatible endomorphisms: e1 -> (x1, k*y1), e2 -> (x2, y2)
    u64 count = 0;
    for (u64 x1 = 0; x1 < m; ++x1)
      for (u64 y1 = 0; y1 < m; ++y1)
        for (u64 x2 = 0; x2 < m; ++x2)
          for (u64 y2 = 0; y2 < mk; ++y2) {
            bool ok = true;
            for (u64 ell : m_primes)  // full rank on the ell-Frattini layer
              if ((x1 * y2 % ell + ell - x2 * (k % ell) * y1 % ell) % ell == 0) {
                ok = false;
                break;
              }
            if (ok)
              for (u64 ell : k_only_primes)  // cyclic layer: unit needed
                if (y2 % ell == 0) {
                  ok = false;
                  break;
                }
            count += ok;
          }
    return count;
  }
  // closed form: product over primes of #Aut(Z/ell^a x Z/ell^b), a <= b
  u128 total = 1;
  FactoredInteger fm = factorize(m);
  for (const Factor& f : factorize(m * k).factors) {
    u64 ell = f.prime;
    int a = fm.valuation(ell);
    int b = f.exp;  // v_ell(mk)
    u128 local;
    auto pw = [&](int e) {
      u128 r = 1;
      for (int i = 0; i < e; ++i) r *= ell;
      return r;
    };
    if (a == 0) {
      local = pw(b - 1) * (ell - 1);  // cyclic: phi(ell^b)
    } else if (a == b) {
      local = pw(4 * a - 3) * (ell - 1) * ((u128(ell) * ell) - 1);
    } else {
      local = pw(3 * a + b - 2) * (ell - 1) * (ell - 1);
    }
    total *= local;
    if (total >> 64)
      throw std::overflow_error("aut_order: automorphism count exceeds 2^64");
  }
  return u64(total);
}

CohenLenstraRatio cohen_lenstra_ratio(u64 m, u64 k, u64 census_max_p,
                                      const CensusOptions& opt) {
  MofGResult mg = M_of_G(m, k, census_max_p, opt);
  u64 n = make_shape(m, k).order();
  u64 aut = aut_order(m, k);
  CohenLenstraRatio out;
  out.lhs = double(mg.value) * std::log(double(n)) / (4.0 * std::sqrt(double(n)));
  out.rhs_unnormalized = double(n) / double(aut) * std::pow(double(n), 1.5);
  out.censored = mg.censored;
  return out;
}

RuckCheck verify_ruck(u64 p_max, const CensusOptions& opt) {
  RuckCheck res;
  CensusOptions copt = opt;
  copt.max_p = std::max(copt.max_p, p_max);
  for (u64 p : primes_in({4, p_max + 1})) {
    std::map<GroupShape, u64> hist = census(p, copt);
    std::map<u64, std::vector<GroupShape>> by_order;
    for (const auto& [shape, cnt] : hist) {
      (void)cnt;
      by_order[shape.order()].push_back(shape);  // map order: already (m,k)-sorted
    }
    // orders in p's window: |p + 1 - n| < 2 sqrt(p); 4p is never a square
    u64 r = isqrt_u64(p);
    u64 s = r * (r + 1) < p ? 2 * r + 1 : 2 * r;
    u64 lo = p + 1 - s, hi = p + 1 + s;
    for (u64 n = lo; n <= hi; ++n) {
      ++res.cells;
      std::vector<GroupShape> admissible = ruck_enumerate(n, p);
      auto it = by_order.find(n);
      std::vector<GroupShape> observed =
          it == by_order.end() ? std::vector<GroupShape>{} : it->second;
      if (observed != admissible)
        res.failures.push_back("p=" + std::to_string(p) +
                               " n=" + std::to_string(n) + ": observed " +
                               std::to_string(observed.size()) +
                               " shapes, admissible " +
                               std::to_string(admissible.size()));
    }
  }
  return res;
}

}  // namespace ecg
