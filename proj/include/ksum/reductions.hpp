#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "ksum/core.hpp"
#include "ksum/rng.hpp"
#include "ksum/solvers.hpp"

namespace ksum {

/// Modular k-SUM solver -> integer 2k-SUM solver over [-u,u], u = (Q-1)/2.
/// Runs the oracle on the first half and on the negated second half; the
/// two index sets are accepted when their integer sums cancel exactly.
/// The input instance carries 2m elements and k equal to twice the oracle
/// arity.
inline OracleResult reduce_modular_to_integer(const KSumInstance& inst, const KSumOracle& oracle) {
  check_instance(inst);
  if (inst.domain.is_modular())
    throw std::invalid_argument("reduce_modular_to_integer expects an interval instance");
  if (inst.k % 2 != 0 || inst.k < 4)
    throw std::invalid_argument("reduce_modular_to_integer requires even k >= 4");
  if (inst.elements.size() % 2 != 0)
    throw std::invalid_argument("reduce_modular_to_integer requires an even element count");
  const int k_half = inst.k / 2;
  const std::size_t m_half = inst.elements.size() / 2;
  if (m_half < static_cast<std::size_t>(k_half))
    throw std::invalid_argument("reduce_modular_to_integer: halves smaller than oracle arity");

  const Int& u = inst.domain.bound;
  Int Q = 2 * u + 1;
  auto to_residue = [&](const Int& a) {
    Int r = a % Q;
    if (r < 0) r += Q;
    return r;
  };

  std::vector<Int> half1, half2;
  half1.reserve(m_half);
  half2.reserve(m_half);
  for (std::size_t i = 0; i < m_half; ++i) half1.push_back(to_residue(inst.elements[i]));
  for (std::size_t i = 0; i < m_half; ++i) half2.push_back(to_residue(-inst.elements[m_half + i]));

  KSumInstance inst1{Domain::modular(Q), k_half, std::move(half1)};
  OracleResult r1 = oracle(inst1);
  if (!r1.found() || !verify_ksum(inst1, *r1.solution)) return OracleResult::not_found();

  KSumInstance inst2{Domain::modular(Q), k_half, std::move(half2)};
  OracleResult r2 = oracle(inst2);
  if (!r2.found() || !verify_ksum(inst2, *r2.solution)) return OracleResult::not_found();

  Int s1 = 0, s2 = 0;
  for (std::uint32_t i : r1.solution->indices) s1 += inst.elements[i];
  for (std::uint32_t i : r2.solution->indices) s2 += inst.elements[m_half + i];
  if (s1 != -s2) return OracleResult::not_found();  // overflow multiples differ

  std::vector<std::uint32_t> idx(r1.solution->indices);
  for (std::uint32_t i : r2.solution->indices) idx.push_back(static_cast<std::uint32_t>(m_half + i));
  return OracleResult::of(std::move(idx));
}

/// Totality condition under which the centered instance is guaranteed a
/// solution for the integer oracle: m >= k * u^(2/k), checked exactly as
/// m^k >= k^k * u^2.
inline bool integer_oracle_totality_ok(std::size_t m, int k, const Int& u) {
  Int lhs = pow_int(Int(static_cast<unsigned long>(m)), static_cast<unsigned long>(k));
  Int rhs = pow_int(Int(k), static_cast<unsigned long>(k)) * u * u;
  return lhs >= rhs;
}

/// Integer k-SUM solver -> modular k-SUM solver over Z_{2u+1}: identify
/// residues with their centered representatives and run the oracle; any
/// integer zero-sum is a modular zero-sum. The m >= k*u^(2/k) condition is
/// the caller's to check (see integer_oracle_totality_ok); violating it
/// loses totality, not soundness.
inline OracleResult reduce_integer_to_modular(const KSumInstance& inst, const KSumOracle& oracle) {
  check_instance(inst);
  if (!inst.domain.is_modular())
    throw std::invalid_argument("reduce_integer_to_modular expects a modular instance");
  const Int& Q = inst.domain.bound;
  if (Q < 3 || mpz_even_p(Q.get_mpz_t()))
    throw std::invalid_argument("reduce_integer_to_modular requires odd Q >= 3");
  Int u = (Q - 1) / 2;
  std::vector<Int> centered;
  centered.reserve(inst.elements.size());
  for (const Int& e : inst.elements) centered.push_back(center_representative(e, Q));
  KSumInstance integer_inst{Domain::interval(u), inst.k, std::move(centered)};
  OracleResult r = oracle(integer_inst);
  if (!r.found() || !verify_ksum(inst, *r.solution)) return OracleResult::not_found();
  return r;
}

struct Rerandomized {
  std::vector<Int> sums;                            // t-subset sums mod Q
  std::vector<std::vector<std::uint32_t>> subsets;  // the subsets, sorted
};

/// Leftover-hash-lemma re-randomization: `count` independent uniform
/// t-subsets of [0, M) with their sums mod Q.
inline Rerandomized rerandomize(const std::vector<Int>& elements, const Int& Q, int t,
                                long count, Seed seed) {
  if (t < 1) throw std::invalid_argument("rerandomize requires t >= 1");
  if (static_cast<std::size_t>(t) > elements.size())
    throw std::invalid_argument("rerandomize requires t <= M");
  Prng g(seed);
  Rerandomized out;
  out.sums.reserve(count);
  out.subsets.reserve(count);
  for (long i = 0; i < count; ++i) {
    auto s = g.subset(elements.size(), t);
    Int sum = 0;
    for (std::uint32_t j : s) sum += elements[j];
    out.sums.push_back(sum % Q);
    out.subsets.push_back(std::move(s));
  }
  return out;
}

struct ReductionConfig {
  Int q;          // prime, q > (tk)^r
  int r = 1;      // number of levels
  int t = 1;      // re-randomization subset size
  int k = 2;      // oracle arity
  long m = 2;     // oracle instance size
  Rat p_floor = Rat(1);           // assumed lower bound on oracle success probability
  long attempt_cap = 0;           // max oracle calls per level; 0 = 10*ceil(m_{i+1}/p_floor)
  Rat schedule_density = Rat(1);  // scales the 10*t^2*k^2 level-decay divisor
};

struct LevelTrace {
  long target = 0;               // unions this level must accept
  long oracle_calls = 0;
  long successes = 0;            // verified zero-sums returned by the oracle
  long disjoint_rejections = 0;  // zero-sums discarded because subsets overlapped
  long produced = 0;             // unions accepted (always <= target)
};

struct TraceRecord {
  std::vector<LevelTrace> levels;
  int failed_level = 0;  // 1-based; 0 when the reduction succeeded
};

struct SisReduceResult {
  std::optional<SisSolution> solution;
  TraceRecord trace;

  bool succeeded() const { return solution.has_value(); }
};

namespace detail {

struct Anchor {
  Int value;                          // current element, always 0 mod q^(i-1)
  std::vector<std::uint32_t> support; // original indices with coefficient 1
};

inline std::vector<std::uint32_t> merge_sorted(const std::vector<std::uint32_t>& a,
                                               const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/// BKW-style SIS -> k-SUM reduction. Level i holds anchors that vanish mod
/// q^(i-1); re-randomized t-subset sums are divided by q^(i-1), fed to the
/// oracle in disjoint blocks of m, and a returned k-set is accepted only if
/// its t-subsets are pairwise disjoint and untouched by earlier acceptances
/// at this level. On success the solution is a 0/1 vector with l1 norm
/// (tk)^r.
inline SisReduceResult reduce_sis_to_ksum(const SisInstance& sis, const KSumOracle& oracle,
                                          const ReductionConfig& cfg, Seed seed) {
  if (cfg.r < 1 || cfg.t < 1 || cfg.k < 2 || cfg.m < cfg.k)
    throw std::invalid_argument("reduce_sis_to_ksum: need r >= 1, t >= 1, k >= 2, m >= k");
  if (cfg.p_floor <= 0 || cfg.p_floor > 1)
    throw std::invalid_argument("reduce_sis_to_ksum: p_floor must be in (0, 1]");
  if (cfg.schedule_density <= 0)
    throw std::invalid_argument("reduce_sis_to_ksum: schedule_density must be positive");
  if (!is_prime(cfg.q)) throw std::invalid_argument("reduce_sis_to_ksum: q must be prime");
  Int tk_r = pow_int(Int(cfg.t) * cfg.k, static_cast<unsigned long>(cfg.r));
  if (cfg.q <= tk_r)
    throw std::invalid_argument("reduce_sis_to_ksum: requires q > (tk)^r");
  if (sis.q != cfg.q || sis.r != cfg.r)
    throw std::invalid_argument("reduce_sis_to_ksum: instance (q, r) must match config");
  if (sis.beta < tk_r)
    throw std::invalid_argument("reduce_sis_to_ksum: instance beta below (tk)^r");
  if (static_cast<std::size_t>(cfg.t) > sis.elements.size())
    throw std::invalid_argument("reduce_sis_to_ksum: t exceeds m'");

  const Int Qbig = sis.modulus();
  const long m_prime = static_cast<long>(sis.elements.size());

  // Level sizes m_i = ceil(m' / D^(i-1)) with D = 10*density*t^2*k^2.
  Int divisor = ceil_rat(Rat(10) * cfg.schedule_density * cfg.t * cfg.t * cfg.k * cfg.k);
  if (divisor < 2) divisor = 2;
  auto sched = [&](int i) {
    Int d = pow_int(divisor, static_cast<unsigned long>(i - 1));
    Int v = ceil_div(Int(m_prime), d);
    return static_cast<long>(v.get_si());
  };

  std::vector<detail::Anchor> anchors;
  anchors.reserve(sis.elements.size());
  for (std::uint32_t j = 0; j < sis.elements.size(); ++j)
    anchors.push_back(detail::Anchor{sis.elements[j], {j}});

  Prng g(seed);
  SisReduceResult result;

  Int q_prev = 1;  // q^(i-1)
  for (int level = 1; level <= cfg.r; ++level) {
    const long M = static_cast<long>(anchors.size());
    const long needed = sched(level + 1);
    LevelTrace trace;
    trace.target = needed;

    for (const auto& a : anchors)
      if (a.value % q_prev != 0)
        throw std::logic_error("reduce_sis_to_ksum: anchor not divisible by q^(i-1)");

    if (cfg.t > M) {  // schedule ran out of anchors; report, don't crash
      result.trace.levels.push_back(trace);
      result.trace.failed_level = level;
      return result;
    }

    long blocks = cfg.attempt_cap;
    if (blocks <= 0) blocks = 10 * static_cast<long>(ceil_rat(Rat(needed) / cfg.p_floor).get_si());

    std::vector<char> used(M, 0);
    std::vector<detail::Anchor> accepted;
    accepted.reserve(needed);

    for (long b = 0; b < blocks && trace.produced < needed; ++b) {
      // One block: m fresh t-subset sums, divided down to Z_q.
      std::vector<std::vector<std::uint32_t>> subsets;
      std::vector<Int> block_values;
      subsets.reserve(cfg.m);
      block_values.reserve(cfg.m);
      for (long j = 0; j < cfg.m; ++j) {
        auto s = g.subset(M, cfg.t);
        Int sum = 0;
        for (std::uint32_t idx : s) sum += anchors[idx].value;
        sum %= Qbig;
        if (sum % q_prev != 0)
          throw std::logic_error("reduce_sis_to_ksum: block sum not divisible by q^(i-1)");
        block_values.push_back((sum / q_prev) % cfg.q);
        subsets.push_back(std::move(s));
      }

      KSumInstance block{Domain::modular(cfg.q), cfg.k, std::move(block_values)};
      ++trace.oracle_calls;
      OracleResult res = oracle(block);
      if (!res.found()) continue;
      const auto& idx = res.solution->indices;
      if (idx.size() != static_cast<std::size_t>(cfg.k)) continue;
      bool in_range = true;
      Int dsum = 0;
      for (std::uint32_t j : idx) {
        if (j >= block.elements.size()) { in_range = false; break; }
        dsum += block.elements[j];
      }
      if (!in_range || dsum % cfg.q != 0) continue;
      ++trace.successes;

      // Accept only if the k underlying t-subsets are pairwise disjoint and
      // avoid every previously accepted union at this level.
      std::vector<std::uint32_t> touched;
      bool disjoint = true;
      for (std::uint32_t j : idx) {
        for (std::uint32_t a : subsets[j]) {
          if (used[a]) { disjoint = false; break; }
          touched.push_back(a);
        }
        if (!disjoint) break;
      }
      if (disjoint) {
        std::sort(touched.begin(), touched.end());
        for (std::size_t x = 1; x < touched.size(); ++x)
          if (touched[x] == touched[x - 1]) { disjoint = false; break; }
      }
      if (!disjoint) {
        ++trace.disjoint_rejections;
        continue;
      }

      for (std::uint32_t a : touched) used[a] = 1;
      detail::Anchor next;
      Int value = 0;
      std::vector<std::uint32_t> support;
      for (std::uint32_t a : touched) {
        value += anchors[a].value;
        support = detail::merge_sorted(support, anchors[a].support);
      }
      next.value = value % Qbig;
      next.support = std::move(support);
      accepted.push_back(std::move(next));
      ++trace.produced;
    }

    result.trace.levels.push_back(trace);
    if (trace.produced < needed) {
      result.trace.failed_level = level;
      return result;
    }
    anchors = std::move(accepted);
    q_prev *= cfg.q;
  }

  // Indicator vector of the first surviving union.
  std::vector<Int> x(sis.elements.size(), 0);
  for (std::uint32_t j : anchors.front().support) x[j] = 1;
  result.solution = SisSolution{std::move(x)};
  return result;
}

}  // namespace ksum
