#include "ecg/occurrence.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>

#include "parallel.hpp"

namespace ecg {

namespace {

constexpr u128 kOrderLimit = u128(1) << 63;

// floor(sqrt(4k-1)) without forming 4k (k may exceed 2^62)
u64 jmax_for(u64 k) {
  u64 r = isqrt_u64(k);
  if (r * r == k) return 2 * r - 1;
  return r * (r + 1) < k ? 2 * r + 1 : 2 * r;
}

// floor(sqrt(4p)) for p < 2^63
u64 isqrt4(u64 p) {
  u64 r = isqrt_u64(p);
  return r * (r + 1) < p ? 2 * r + 1 : 2 * r;
}

i64 floor_div(i128 a, i64 b) {
  i128 q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return i64(q);
}

i64 ceil_div(i128 a, i64 b) { return -floor_div(-a, b); }

struct AtomicBits {
  std::unique_ptr<std::atomic<u64>[]> words;
  u64 nwords;

  explicit AtomicBits(u64 nbits) : nwords((nbits + 63) / 64) {
    words.reset(new std::atomic<u64>[nwords]);
    for (u64 i = 0; i < nwords; ++i)
      words[i].store(0, std::memory_order_relaxed);
  }
  void set(u64 i) {
    words[i >> 6].fetch_or(u64(1) << (i & 63), std::memory_order_relaxed);
  }
  bool test(u64 i) const {
    return (words[i >> 6].load(std::memory_order_relaxed) >> (i & 63)) & 1;
  }
  u64 count() const {
    u64 c = 0;
    for (u64 i = 0; i < nwords; ++i)
      c += std::popcount(words[i].load(std::memory_order_relaxed));
    return c;
  }
  std::vector<u64> snapshot() const {
    std::vector<u64> out(nwords);
    for (u64 i = 0; i < nwords; ++i)
      out[i] = words[i].load(std::memory_order_relaxed);
    return out;
  }
};

void validate_box(u64 max_m, u64 max_k) {
  if (max_m < 1 || max_k < 1)
    throw std::invalid_argument("count box: max_m and max_k must be >= 1");
  u128 order = u128(max_m) * max_m * max_k;
  if (order >= kOrderLimit)
    throw std::overflow_error("count box: max_m^2 * max_k exceeds 2^63");
  u128 top = order + u128(jmax_for(max_k)) * max_m + 1;
  if (top >= kOrderLimit)
    throw std::overflow_error("count box: window candidates exceed 2^63");
}

u64 bitset_bytes(u64 max_m, u64 max_k) {
  u128 bits = u128(max_m) * max_k;
  return u64((bits + 63) / 64) * 8;
}

CountStrategy resolve_strategy(u64 max_m, u64 max_k, CountStrategy strategy,
                               const RunOptions& opt) {
  if (strategy != CountStrategy::kAuto) return strategy;
  // prime-driven pays off when the box is large and the sieve span per marked
  // pair stays moderate; for max_m >> sqrt(max_k) the per-pair direct scan of
  // O(sqrt(k)) candidates beats sieving all of [2, M^2 K]
  if (u128(max_m) * max_k < 65536) return CountStrategy::kDirect;
  if (bitset_bytes(max_m, max_k) > opt.mem_budget_bytes)
    return CountStrategy::kDirect;
  if (max_m > 1000 * isqrt_u64(max_k)) return CountStrategy::kDirect;
  return CountStrategy::kPrimeDriven;
}

// marks every occurring pair (m <= M, k <= K) in bits, index (m-1)*K + (k-1).
// Two internally equivalent routes share the same segmented sieve:
//  - divisor route: walk primes, factor p-1, mark the k-window of each
//    divisor m (preferred while the sieve bound is modest);
//  - probe route: walk segments, test the O(sqrt k) window candidates of the
//    pairs whose windows meet the segment against the segment bitmap
//    (keeps huge bounds feasible: no factorization per prime).
void mark_occurrences(u64 M, u64 K, const RunOptions& opt, int threads,
                      AtomicBits& bits) {
  const u64 jK = jmax_for(K);
  const u64 hi = M * M * K + jK * M + 2;  // exclusive sieve bound
  // p = 2 arises only from m = 1, j = 1-k, (k-1)^2 < 4k  =>  k <= 5
  for (u64 k = 1; k <= std::min<u64>(K, 5); ++k) bits.set(k - 1);
  const std::vector<u64> base = detail::odd_base_primes(hi - 1);
  const bool divisor_route = hi <= opt.divisor_route_limit;
  std::vector<u64> jtab;
  if (!divisor_route) {
    jtab.resize(K + 1);
    for (u64 k = 1; k <= K; ++k) jtab[k] = jmax_for(k);
  }
  const u64 span = 2 * detail::kSegmentOdds;
  const u64 first = 3;
  const u64 nseg = hi > first ? (hi - first + span - 1) / span : 0;

  detail::run_workers(threads, [&](int w) {
    std::vector<u64> words;
    for (u64 s = w; s < nseg; s += u64(threads)) {
      const u64 L = first + s * span;
      const u64 R = std::min(hi, L + span);
      detail::sieve_odd_segment(L, R, base, words);
      const u64 odd_count = (R - L + 1) / 2;

      if (divisor_route) {
        for (u64 widx = 0; widx < words.size(); ++widx) {
          u64 free_bits = ~words[widx];
          while (free_bits) {
            u64 bit = u64(std::countr_zero(free_bits));
            free_bits &= free_bits - 1;
            u64 i = widx * 64 + bit;
            if (i >= odd_count) break;
            u64 p = L + 2 * i;
            u64 s4 = isqrt4(p);
            u64 nlo = p + 1 - s4, nhi = p + 1 + s4;
            FactoredInteger f = factorize(p - 1);
            for (u64 m : f.divisors_up_to(M)) {
              u128 m2 = u128(m) * m;
              if (m2 > nhi) break;
              u64 klo = u64((nlo + m2 - 1) / m2);
              if (klo < 1) klo = 1;
              u64 khi = u64(nhi / m2);
              if (khi > K) khi = K;
              for (u64 k = klo; k <= khi; ++k)
                bits.set((m - 1) * K + (k - 1));
            }
          }
        }
      } else {
        auto zone_hi = [&](u64 m) { return u128(K) * m * m + u128(jK) * m + 1; };
        auto zone_lo = [&](u64 m) { return u128(m) * m - m + 1; };
        u64 mlo = std::max<u64>(1, isqrt_u64(L / K));
        while (mlo > 1 && zone_hi(mlo - 1) >= L) --mlo;
        while (mlo <= M && zone_hi(mlo) < L) ++mlo;
        u64 mhi = std::min(M, isqrt_u64(R) + 1);
        while (mhi > 0 && zone_lo(mhi) >= R) --mhi;
        while (mhi < M && zone_lo(mhi + 1) < R) ++mhi;
        for (u64 m = mlo; m <= mhi; ++m) {
          u64 m2 = m * m;
          u64 k = 1;
          if (L > jK * m + 1) {
            u64 kseed = (L - 1 - jK * m) / m2;
            if (kseed > 1) k = kseed;
          }
          for (; k <= K; ++k) {
            u64 base_c = k * m2;
            u64 jm = jtab[k];
            u64 phi = base_c + jm * m + 1;
            if (phi < L) continue;
            u64 plo = base_c - jm * m + 1;
            if (plo >= R) break;  // windows move upward with k
            u64 idx = (m - 1) * K + (k - 1);
            if (bits.test(idx)) continue;
            i64 jlo = -i64(jm), jhi = i64(jm);
            if (plo < L) jlo = ceil_div(i128(L) - 1 - base_c, i64(m));
            if (phi >= R) jhi = floor_div(i128(R) - 2 - base_c, i64(m));
            u64 c = u64(i128(base_c) + i128(jlo) * i64(m) + 1);
            for (i64 j = jlo; j <= jhi; ++j, c += m) {
              if (c < 3 || (c & 1) == 0) continue;
              u64 oi = (c - L) >> 1;
              if (!((words[oi >> 6] >> (oi & 63)) & 1)) {
                bits.set(idx);
                break;
              }
            }
          }
        }
      }
    }
  });
}

}  // namespace

GroupShape make_shape(u64 m, u64 k) {
  if (m < 1 || k < 1)
    throw std::invalid_argument("group shape: m and k must be >= 1");
  if (u128(m) * m * k >= kOrderLimit)
    throw std::overflow_error("group shape: order m^2*k exceeds 2^63");
  return GroupShape{m, k};
}

OccurrenceResult occurs(u64 m, u64 k, bool all_witnesses) {
  OccurrenceResult out;
  out.shape = make_shape(m, k);
  u64 jm = jmax_for(k);
  u64 base = m * m * k;
  if (u128(base) + u128(jm) * m + 1 >= kOrderLimit)
    throw std::overflow_error("occurs: window candidates exceed 2^63");
  for (i64 j = -i64(jm); j <= i64(jm); ++j) {
    u64 c = u64(i128(base) + i128(j) * i64(m) + 1);
    if (c < 2) continue;
    if (is_prime(c)) {
      out.witnesses.push_back({c, j});
      if (!all_witnesses) break;
    }
  }
  out.occurs = !out.witnesses.empty();
  return out;
}

bool window_has_prime(u64 m, u64 k) {
  u64 jm = jmax_for(k);
  u64 base = m * m * k;
  for (i64 j = -i64(jm); j <= i64(jm); ++j) {
    u64 c = u64(i128(base) + i128(j) * i64(m) + 1);
    if (c >= 2 && is_prime(c)) return true;
  }
  return false;
}

bool window_contains(u64 m, u64 k, u64 p) {
  if (p < 2 || (p - 1) % m != 0) return false;
  i128 base = i128(m) * m * k;
  i128 diff = i128(p) - 1 - base;
  return diff * diff < 4 * base;
}

bool hasse_contains(u64 p, u64 n) {
  i128 t = i128(p) + 1 - i128(n);
  return t * t < i128(4) * p;
}

std::vector<GroupShape> shapes_for_prime(u64 p, u64 max_m) {
  if (p >= u64(1) << 63)
    throw std::invalid_argument("shapes_for_prime: p must be < 2^63");
  if (!is_prime(p)) throw std::invalid_argument("shapes_for_prime: p not prime");
  if (max_m < 1) throw std::invalid_argument("shapes_for_prime: max_m must be >= 1");
  u64 s4 = isqrt4(p);
  u64 nlo = p + 1 - s4, nhi = p + 1 + s4;
  std::vector<GroupShape> out;
  for (u64 m : factorize(p - 1).divisors_up_to(max_m)) {
    u128 m2 = u128(m) * m;
    if (m2 > nhi) break;
    u64 klo = u64((nlo + m2 - 1) / m2);
    if (klo < 1) klo = 1;
    u64 khi = u64(nhi / m2);
    for (u64 k = klo; k <= khi; ++k) {
      if (u128(m2) * k >= kOrderLimit) break;
      out.push_back(GroupShape{m, k});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> occurrence_matrix(u64 max_m, u64 max_k, CountStrategy strategy,
                                   const RunOptions& opt) {
  validate_box(max_m, max_k);
  CountStrategy use = resolve_strategy(max_m, max_k, strategy, opt);
  u64 bytes = bitset_bytes(max_m, max_k);
  if (bytes > opt.mem_budget_bytes)
    throw std::runtime_error(
        "occurrence bitset needs " + std::to_string(bytes) +
        " bytes; budget is " + std::to_string(opt.mem_budget_bytes));
  int threads = detail::resolve_threads(opt.threads);
  AtomicBits bits(max_m * max_k);
  if (use == CountStrategy::kPrimeDriven) {
    mark_occurrences(max_m, max_k, opt, threads, bits);
  } else {
    detail::run_workers(threads, [&](int w) {
      for (u64 m = 1 + u64(w); m <= max_m; m += u64(threads))
        for (u64 k = 1; k <= max_k; ++k)
          if (window_has_prime(m, k)) bits.set((m - 1) * max_k + (k - 1));
    });
  }
  return bits.snapshot();
}

CountReport count_S(u64 max_m, u64 max_k, CountStrategy strategy,
                    const RunOptions& opt, Marginals marginals) {
  validate_box(max_m, max_k);
  CountStrategy use = resolve_strategy(max_m, max_k, strategy, opt);
  int threads = detail::resolve_threads(opt.threads);
  auto t0 = std::chrono::steady_clock::now();

  CountReport rep;
  rep.max_m = max_m;
  rep.max_k = max_k;
  rep.strategy_used = use;

  if (use == CountStrategy::kDirect) {
    std::vector<u64> counts(threads, 0);
    std::vector<std::vector<u64>> perk(threads);
    if (marginals == Marginals::kPerK)
      for (auto& v : perk) v.assign(max_k + 1, 0);
    if (marginals == Marginals::kPerM) rep.per_m.assign(max_m + 1, 0);
    detail::run_workers(threads, [&](int w) {
      for (u64 m = 1 + u64(w); m <= max_m; m += u64(threads)) {
        u64 row = 0;
        for (u64 k = 1; k <= max_k; ++k) {
          if (!window_has_prime(m, k)) continue;
          ++row;
          if (marginals == Marginals::kPerK) ++perk[w][k];
        }
        counts[w] += row;
        if (marginals == Marginals::kPerM) rep.per_m[m] = row;  // disjoint m
      }
    });
    for (u64 c : counts) rep.count += c;
    if (marginals == Marginals::kPerK) {
      rep.per_k.assign(max_k + 1, 0);
      for (int w = 0; w < threads; ++w)
        for (u64 k = 1; k <= max_k; ++k) rep.per_k[k] += perk[w][k];
    }
  } else {
    u64 bytes = bitset_bytes(max_m, max_k);
    if (bytes > opt.mem_budget_bytes)
      throw std::runtime_error(
          "count_S: occurrence bitset needs " + std::to_string(bytes) +
          " bytes; budget is " + std::to_string(opt.mem_budget_bytes));
    AtomicBits bits(max_m * max_k);
    mark_occurrences(max_m, max_k, opt, threads, bits);
    rep.count = bits.count();
    if (marginals == Marginals::kPerK) {
      rep.per_k.assign(max_k + 1, 0);
      for (u64 m = 1; m <= max_m; ++m)
        for (u64 k = 1; k <= max_k; ++k)
          rep.per_k[k] += bits.test((m - 1) * max_k + (k - 1));
    } else if (marginals == Marginals::kPerM) {
      rep.per_m.assign(max_m + 1, 0);
      for (u64 m = 1; m <= max_m; ++m)
        for (u64 k = 1; k <= max_k; ++k)
          rep.per_m[m] += bits.test((m - 1) * max_k + (k - 1));
    }
  }
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

u64 count_R(u64 max_m, u64 max_k, const RunOptions& opt) {
  validate_box(max_m, max_k);
  u64 mlo = max_m / 2 + 1, klo = max_k / 2 + 1;
  int threads = detail::resolve_threads(opt.threads);
  std::vector<u64> misses(threads, 0);
  detail::run_workers(threads, [&](int w) {
    for (u64 m = mlo + u64(w); m <= max_m; m += u64(threads))
      for (u64 k = klo; k <= max_k; ++k)
        if (!window_has_prime(m, k)) ++misses[w];
  });
  u64 total = 0;
  for (u64 c : misses) total += c;
  return total;
}

std::vector<DensityPoint> density_scan(u64 max_m, const std::vector<u64>& k_grid,
                                       const RunOptions& opt) {
  if (k_grid.empty())
    throw std::invalid_argument("density_scan: empty K grid");
  for (size_t i = 0; i < k_grid.size(); ++i) {
    if (k_grid[i] < 1)
      throw std::invalid_argument("density_scan: grid values must be >= 1");
    if (i > 0 && k_grid[i] <= k_grid[i - 1])
      throw std::invalid_argument("density_scan: grid must be ascending");
  }
  u64 kmax = k_grid.back();
  validate_box(max_m, kmax);
  CountStrategy use = resolve_strategy(max_m, kmax, CountStrategy::kAuto, opt);
  int threads = detail::resolve_threads(opt.threads);

  // one occurrence scan shared by every grid point
  std::vector<u64> col(kmax + 1, 0);  // occurring m per k
  if (use == CountStrategy::kPrimeDriven &&
      bitset_bytes(max_m, kmax) <= opt.mem_budget_bytes) {
    AtomicBits bits(max_m * kmax);
    mark_occurrences(max_m, kmax, opt, threads, bits);
    for (u64 m = 1; m <= max_m; ++m)
      for (u64 k = 1; k <= kmax; ++k)
        col[k] += bits.test((m - 1) * kmax + (k - 1));
  } else {
    std::vector<std::vector<u64>> cols(threads);
    for (auto& v : cols) v.assign(kmax + 1, 0);
    detail::run_workers(threads, [&](int w) {
      for (u64 m = 1 + u64(w); m <= max_m; m += u64(threads))
        for (u64 k = 1; k <= kmax; ++k)
          if (window_has_prime(m, k)) ++cols[w][k];
    });
    for (int w = 0; w < threads; ++w)
      for (u64 k = 1; k <= kmax; ++k) col[k] += cols[w][k];
  }

  std::vector<DensityPoint> out;
  out.reserve(k_grid.size());
  u64 cum = 0;
  size_t gi = 0;
  for (u64 k = 1; k <= kmax && gi < k_grid.size(); ++k) {
    cum += col[k];
    if (k == k_grid[gi]) {
      double dens = double(cum) / (double(max_m) * double(k));
      out.push_back({k, cum, dens});
      ++gi;
    }
  }
  return out;
}

}  // namespace ecg
