#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "ksum/core.hpp"

namespace ksum {

struct OracleResult {
  std::optional<KSumSolution> solution;

  bool found() const { return solution.has_value(); }
  static OracleResult not_found() { return {}; }
  static OracleResult of(std::vector<std::uint32_t> idx) {
    std::sort(idx.begin(), idx.end());
    return OracleResult{KSumSolution{std::move(idx)}};
  }
};

/// Abstract k-SUM oracle: any Found output must verify against the
/// instance it was given. Implementations include the solvers below and
/// adversarial test doubles.
using KSumOracle = std::function<OracleResult(const KSumInstance&)>;

inline constexpr std::uint64_t kEnumerationGuard = 1'000'000'000;  // C(m,k) cap
inline constexpr std::uint64_t kMitmTableGuard = 5'000'000;        // half-sum table cap

namespace detail {

/// int64 mirror of the element vector when every partial sum of up to
/// `terms` elements stays far from overflow; the solvers run the same
/// algorithm on either representation, so results are bit-identical.
inline std::optional<std::vector<std::int64_t>> small_values(const std::vector<Int>& v,
                                                             const Int& max_abs, int terms) {
  static const Int kSafe = Int(1) << 62;
  if (max_abs * (terms + 1) >= kSafe) return std::nullopt;
  std::vector<std::int64_t> out;
  out.reserve(v.size());
  for (const Int& e : v) out.push_back(to_s64(e));
  return out;
}

template <class V>
bool sum_is_zero(const V& sum, const V* modulus) {
  if (modulus) return sum % *modulus == 0;
  return sum == 0;
}

/// Lexicographically first k-combination of `vals` whose sum is zero
/// (mod *modulus when given). Incremental prefix sums; early exit.
template <class V>
std::optional<std::vector<std::uint32_t>> first_zero_combination(const std::vector<V>& vals,
                                                                 int k, const V* modulus) {
  const std::uint32_t m = static_cast<std::uint32_t>(vals.size());
  std::vector<std::uint32_t> c(k);
  std::vector<V> pre(k);
  auto recompute = [&](int from) {
    for (int j = from; j < k; ++j) pre[j] = (j ? pre[j - 1] : V(0)) + vals[c[j]];
  };
  for (int j = 0; j < k; ++j) c[j] = j;
  recompute(0);
  for (;;) {
    if (sum_is_zero(pre[k - 1], modulus)) return c;
    int j = k - 1;
    while (j >= 0 && c[j] == m - k + j) --j;
    if (j < 0) return std::nullopt;
    ++c[j];
    for (int l = j + 1; l < k; ++l) c[l] = c[l - 1] + 1;
    recompute(j);
  }
}

template <class V>
std::optional<std::vector<std::uint32_t>> mitm_search(const std::vector<V>& vals, int k,
                                                      const V* modulus) {
  const std::uint32_t m = static_cast<std::uint32_t>(vals.size());
  const int k1 = k / 2, k2 = k - k1;

  auto canonical = [&](V s) {
    if (!modulus) return s;
    s %= *modulus;
    if (s < 0) s += *modulus;
    return s;
  };

  struct Entry {
    V sum;
    std::vector<std::uint32_t> idx;
  };
  std::vector<Entry> table;
  {
    std::vector<std::uint32_t> c(k1);
    for (int j = 0; j < k1; ++j) c[j] = j;
    for (;;) {
      V s = V(0);
      for (std::uint32_t i : c) s += vals[i];
      table.push_back(Entry{canonical(s), c});
      int j = k1 - 1;
      while (j >= 0 && c[j] == m - k1 + j) --j;
      if (j < 0) break;
      ++c[j];
      for (int l = j + 1; l < k1; ++l) c[l] = c[l - 1] + 1;
    }
  }
  std::sort(table.begin(), table.end(),
            [](const Entry& a, const Entry& b) { return a.sum < b.sum || (a.sum == b.sum && a.idx < b.idx); });

  auto disjoint = [](const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      if (a[i] < b[j]) ++i;
      else if (a[i] > b[j]) ++j;
      else return false;
    }
    return true;
  };

  std::vector<std::uint32_t> c(k2);
  for (int j = 0; j < k2; ++j) c[j] = j;
  for (;;) {
    V s = V(0);
    for (std::uint32_t i : c) s += vals[i];
    V target = modulus ? canonical(*modulus - canonical(s)) : V(-s);
    auto lo = std::lower_bound(table.begin(), table.end(), target,
                               [](const Entry& e, const V& t) { return e.sum < t; });
    for (auto it = lo; it != table.end() && it->sum == target; ++it) {
      if (disjoint(it->idx, c)) {
        std::vector<std::uint32_t> merged(it->idx);
        merged.insert(merged.end(), c.begin(), c.end());
        return merged;
      }
    }
    int j = k2 - 1;
    while (j >= 0 && c[j] == m - k2 + j) --j;
    if (j < 0) return std::nullopt;
    ++c[j];
    for (int l = j + 1; l < k2; ++l) c[l] = c[l - 1] + 1;
  }
}

}  // namespace detail

/// Reference oracle: Found iff a k-subset summing to 0 exists; returns the
/// lexicographically smallest such index set. Refuses C(m,k) > 1e9.
inline OracleResult solve_bruteforce(const KSumInstance& inst) {
  check_instance(inst);
  if (binomial(inst.elements.size(), inst.k) > kEnumerationGuard)
    throw capacity_error("solve_bruteforce: C(m,k) exceeds enumeration guard");
  const bool modular = inst.domain.is_modular();
  if (auto small = detail::small_values(inst.elements, inst.domain.bound, inst.k)) {
    std::int64_t Q = modular ? to_s64(inst.domain.bound) : 0;
    auto res = detail::first_zero_combination<std::int64_t>(*small, inst.k, modular ? &Q : nullptr);
    return res ? OracleResult::of(std::move(*res)) : OracleResult::not_found();
  }
  auto res = detail::first_zero_combination<Int>(inst.elements, inst.k,
                                                 modular ? &inst.domain.bound : nullptr);
  return res ? OracleResult::of(std::move(*res)) : OracleResult::not_found();
}

/// Meet-in-the-middle: existence-equivalent to solve_bruteforce; the index
/// set may differ but always verifies. Sorts C(m, floor(k/2)) half sums and
/// scans the larger half against them.
inline OracleResult solve_mitm(const KSumInstance& inst) {
  check_instance(inst);
  if (binomial(inst.elements.size(), inst.k / 2) > kMitmTableGuard)
    throw capacity_error("solve_mitm: half-sum table exceeds guard");
  if (binomial(inst.elements.size(), inst.k - inst.k / 2) > kEnumerationGuard)
    throw capacity_error("solve_mitm: C(m, ceil(k/2)) exceeds enumeration guard");
  const bool modular = inst.domain.is_modular();
  if (auto small = detail::small_values(inst.elements, inst.domain.bound, inst.k)) {
    std::int64_t Q = modular ? to_s64(inst.domain.bound) : 0;
    auto res = detail::mitm_search<std::int64_t>(*small, inst.k, modular ? &Q : nullptr);
    return res ? OracleResult::of(std::move(*res)) : OracleResult::not_found();
  }
  auto res = detail::mitm_search<Int>(inst.elements, inst.k, modular ? &inst.domain.bound : nullptr);
  return res ? OracleResult::of(std::move(*res)) : OracleResult::not_found();
}

/// BKW/Wagner iterated pairing over Z_{q^ell}; solves 2^ell-SUM.
struct BkwConfig {
  Int q;
  int ell = 1;
  Rat density = Rat(1);  // scales the input-size formula below
};

/// ceil(density * 1000 * ell^2 * q^2 * 2^ell * log2 q): the input size the
/// level schedule is calibrated for (density 1 = the full formula).
inline long bkw_input_size(const BkwConfig& cfg) {
  if (cfg.density <= 0) throw std::invalid_argument("bkw_input_size requires positive density");
  if (cfg.ell < 1 || cfg.q < 2) throw std::invalid_argument("bkw_input_size requires q >= 2, ell >= 1");
  double qd = cfg.q.get_d();
  double v = cfg.density.get_d() * 1000.0 * cfg.ell * cfg.ell * qd * qd *
             std::pow(2.0, cfg.ell) * std::log2(qd);
  if (!(v >= 1.0) || v > 9e15) throw capacity_error("bkw_input_size out of range");
  return static_cast<long>(std::ceil(v));
}

namespace detail {

inline std::uint64_t as_u64(std::int64_t v) { return static_cast<std::uint64_t>(v); }
inline std::uint64_t as_u64(const Int& v) { return v.get_ui(); }

/// List-size target for list L_j, j >= 2: ceil((ell^2-j^2)/ell^2 * m /
/// 2^(j-1)), clamped to at least one element (the factor reaches zero at
/// j = ell, but pairing must still produce output to yield a solution).
inline long bkw_level_target(int ell, int j, long m) {
  long long num = (static_cast<long long>(ell) * ell - static_cast<long long>(j) * j);
  if (num <= 0) return 1;
  long long den = static_cast<long long>(ell) * ell * (1ll << (j - 1));
  long long t = (num * m + den - 1) / den;
  return t < 1 ? 1 : static_cast<long>(t);
}

template <class V>
OracleResult bkw_run(const std::vector<V>& input, std::uint64_t q, int ell, const V& Q) {
  const long m = static_cast<long>(input.size());
  std::vector<V> value(input);
  std::vector<std::uint32_t> arena(value.size());
  for (std::uint32_t i = 0; i < arena.size(); ++i) arena[i] = i;
  std::size_t slice = 1;  // original indices per entry

  V qpow_prev = V(1);
  for (int i = 1; i <= ell; ++i) {
    std::vector<std::vector<std::uint32_t>> buckets(q);
    for (std::uint32_t e = 0; e < value.size(); ++e) {
      if (value[e] % qpow_prev != 0)
        throw std::logic_error("bkw invariant violated: value not divisible by q^(i-1)");
      buckets[as_u64(V(value[e] / qpow_prev) % V(static_cast<long>(q)))].push_back(e);
    }

    std::vector<V> nvalue;
    std::vector<std::uint32_t> narena;
    auto add_pair = [&](std::uint32_t a, std::uint32_t b) {
      V nv = value[a] + value[b];
      if (nv >= Q) nv -= Q;
      nvalue.push_back(nv);
      narena.insert(narena.end(), arena.begin() + a * slice, arena.begin() + (a + 1) * slice);
      narena.insert(narena.end(), arena.begin() + b * slice, arena.begin() + (b + 1) * slice);
    };
    for (std::uint64_t j = 0; j <= q / 2; ++j) {
      std::uint64_t jj = (q - j) % q;
      if (jj == j) {
        const auto& B = buckets[j];
        for (std::size_t x = 0; x + 1 < B.size(); x += 2) add_pair(B[x], B[x + 1]);
      } else {
        const auto& A = buckets[j];
        const auto& B = buckets[jj];
        std::size_t z = std::min(A.size(), B.size());
        for (std::size_t x = 0; x < z; ++x) add_pair(A[x], B[x]);
      }
    }

    if (static_cast<long>(nvalue.size()) < bkw_level_target(ell, i + 1, m))
      return OracleResult::not_found();
    value = std::move(nvalue);
    arena = std::move(narena);
    slice *= 2;
    qpow_prev *= V(static_cast<long>(q));
  }

  std::vector<std::uint32_t> idx(arena.begin(), arena.begin() + slice);
  return OracleResult::of(std::move(idx));
}

}  // namespace detail

/// Input: residues mod Q = q^ell. Found implies 2^ell distinct indices
/// whose elements sum to 0 mod Q; a level that misses its list-size target
/// yields NotFound rather than an error.
inline OracleResult solve_bkw(const std::vector<Int>& elements, const BkwConfig& cfg) {
  if (cfg.ell < 1) throw std::invalid_argument("solve_bkw requires ell >= 1");
  if (!is_prime(cfg.q)) throw std::invalid_argument("solve_bkw requires prime q");
  if (cfg.ell >= 62) throw capacity_error("solve_bkw: 2^ell out of range");
  if (elements.size() < (1ull << cfg.ell))
    throw std::invalid_argument("solve_bkw requires m >= 2^ell");
  if (cfg.q > 1'000'000'000)
    throw capacity_error("solve_bkw: q too large to bucket");
  Int Q = pow_int(cfg.q, static_cast<unsigned long>(cfg.ell));
  for (const Int& e : elements)
    if (e < 0 || e >= Q) throw std::invalid_argument("solve_bkw: element out of [0, q^ell)");

  std::uint64_t q = mpz_get_ui(cfg.q.get_mpz_t());
  if (auto small = detail::small_values(elements, Q, 2)) {
    return detail::bkw_run<std::int64_t>(*small, q, cfg.ell, to_s64(Q));
  }
  return detail::bkw_run<Int>(elements, q, cfg.ell, Q);
}

inline KSumOracle oracle_bruteforce() {
  return [](const KSumInstance& inst) { return solve_bruteforce(inst); };
}

inline KSumOracle oracle_mitm() {
  return [](const KSumInstance& inst) { return solve_mitm(inst); };
}

/// Adapts solve_bkw to the oracle interface; the instance must be
/// Modular(q^ell) with k = 2^ell.
inline KSumOracle oracle_bkw(Int q, int ell, Rat density = Rat(1)) {
  BkwConfig cfg{std::move(q), ell, std::move(density)};
  return [cfg](const KSumInstance& inst) {
    Int Q = pow_int(cfg.q, static_cast<unsigned long>(cfg.ell));
    if (!inst.domain.is_modular() || inst.domain.bound != Q)
      throw std::invalid_argument("bkw oracle: instance modulus must equal q^ell");
    if (cfg.ell >= 31 || inst.k != (1 << cfg.ell))
      throw std::invalid_argument("bkw oracle: instance k must equal 2^ell");
    return solve_bkw(inst.elements, cfg);
  };
}

}  // namespace ksum
