#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <thread>
#include <vector>

#include "ksum/core.hpp"
#include "ksum/gen.hpp"
#include "ksum/rng.hpp"
#include "ksum/solvers.hpp"

namespace ksum {

inline constexpr std::uint64_t kSubsetEnumGuard = 2'000'000;  // stored C(M,t) cap

namespace detail {

template <class F>
void for_each_combination(std::uint32_t m, int t, F&& f) {
  if (t == 0 || m < static_cast<std::uint32_t>(t)) return;
  std::vector<std::uint32_t> c(t);
  for (int j = 0; j < t; ++j) c[j] = j;
  for (;;) {
    f(const_cast<const std::vector<std::uint32_t>&>(c));
    int j = t - 1;
    while (j >= 0 && c[j] == m - t + j) --j;
    if (j < 0) return;
    ++c[j];
    for (int l = j + 1; l < t; ++l) c[l] = c[l - 1] + 1;
  }
}

/// Certified rational lower bound on 1 - e^{-alpha}: the Taylor partial sum
/// T <= e^alpha gives 1 - 1/T <= 1 - e^{-alpha} exactly.
inline Rat one_minus_exp_lower(const Rat& alpha) {
  if (alpha <= 0) return Rat(0);
  if (alpha >= 64) {
    // e^{-alpha} < 2^-92 for alpha >= 64
    return Rat(1) - make_rat(Int(1), pow_int(2, 92));
  }
  long terms = 80 + 4 * static_cast<long>(ceil_rat(alpha).get_si());
  Rat term(1), total(1);
  for (long i = 1; i <= terms; ++i) {
    term *= alpha;
    term /= i;
    total += term;
  }
  return Rat(1) - Rat(1) / total;
}

inline Rat clamp01(const Rat& r) {
  if (r < 0) return Rat(0);
  if (r > 1) return Rat(1);
  return r;
}

}  // namespace detail

struct TotalityReport {
  long trials = 0;
  long successes = 0;
  Rat empirical_rate;
  Rat lower_bound, upper_bound;  // clamped to [0, 1]
  Rat lower_raw, upper_raw;      // unclamped analytic values
  double sigma = 0.0;            // binomial standard error of the empirical rate
  bool within = false;           // empirical in [lower - 3 sigma, upper + 3 sigma]
};

/// Empirical solvability rate of random instances against the analytic
/// totality bounds: 1 - Q/C(m,k) <= Pr <= C(m,k)/Q for modular domains, and
/// 1 - e^{-alpha} with alpha = floor(m / (k (20u+10)^{1/k})) / (4k+2) for
/// interval domains. Success per trial means brute force finds any k-subset
/// summing to zero. Trial i always uses stream seed.stream + i, so the
/// result is independent of the worker count.
inline TotalityReport estimate_totality(const Domain& domain, long m, int k, long trials,
                                        Seed seed, int jobs = 1) {
  if (k < 2) throw std::invalid_argument("estimate_totality requires k >= 2");
  if (trials < 1) throw std::invalid_argument("estimate_totality requires trials >= 1");
  if (m >= k && binomial(m, k) > kEnumerationGuard)
    throw capacity_error("estimate_totality: C(m,k) exceeds enumeration guard");

  TotalityReport rep;
  rep.trials = trials;
  if (m >= k) {
    auto trial_succeeds = [&](long t) {
      KSumInstance inst = gen_ksum(domain, m, k, seed.with_stream(seed.stream + t));
      return solve_bruteforce(inst).found();
    };
    if (jobs <= 1) {
      for (long t = 0; t < trials; ++t)
        if (trial_succeeds(t)) ++rep.successes;
    } else {
      std::vector<char> results(trials, 0);
      std::atomic<long> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < jobs; ++w) {
        pool.emplace_back([&]() {
          for (;;) {
            long t = next.fetch_add(1);
            if (t >= trials) return;
            results[t] = trial_succeeds(t) ? 1 : 0;
          }
        });
      }
      for (auto& th : pool) th.join();
      for (char r : results) rep.successes += r;
    }
  }
  rep.empirical_rate = make_rat(rep.successes, trials);

  Int C = m >= k ? binomial(m, k) : Int(0);
  if (C == 0) {
    rep.lower_raw = rep.upper_raw = Rat(0);
  } else if (domain.is_modular()) {
    rep.lower_raw = Rat(1) - make_rat(domain.bound, C);
    rep.upper_raw = make_rat(C, domain.bound);
  } else {
    const Int& u = domain.bound;
    rep.upper_raw = make_rat(C, 2 * u + 1);
    // alpha = floor(m / (k (20u+10)^{1/k})) / (4k+2), the floor evaluated
    // exactly: j = floor((floor(m^k / (k^k (20u+10))))^{1/k}).
    Int D = pow_int(k, k) * (20 * u + 10);
    Int j = floor_root(floor_div(pow_int(m, k), D), k);
    rep.lower_raw = detail::one_minus_exp_lower(make_rat(j, 4 * k + 2));
  }
  rep.lower_bound = detail::clamp01(rep.lower_raw);
  rep.upper_bound = detail::clamp01(rep.upper_raw);

  double emp = rep.empirical_rate.get_d();
  rep.sigma = std::sqrt(emp * (1.0 - emp) / static_cast<double>(trials));
  rep.within = emp >= rep.lower_bound.get_d() - 3 * rep.sigma &&
               emp <= rep.upper_bound.get_d() + 3 * rep.sigma;
  return rep;
}

/// Exact statistical distance (sum-of-absolute-differences convention,
/// twice the total variation) between the distribution of t-subset sums of
/// `elements` mod Q and uniform over Z_Q.
inline Rat exact_subset_sum_distance(const std::vector<Int>& elements, const Int& Q, int t) {
  const std::uint32_t M = static_cast<std::uint32_t>(elements.size());
  if (t < 1 || static_cast<std::uint32_t>(t) > M)
    throw std::invalid_argument("exact_subset_sum_distance requires 1 <= t <= M");
  Int total = binomial(M, t);
  if (total > kSubsetEnumGuard)
    throw capacity_error("exact_subset_sum_distance: C(M,t) exceeds enumeration guard");

  std::map<Int, long> counts;
  detail::for_each_combination(M, t, [&](const std::vector<std::uint32_t>& c) {
    Int s = 0;
    for (std::uint32_t i : c) s += elements[i];
    s %= Q;
    if (s < 0) s += Q;
    ++counts[s];
  });

  Rat uniform = make_rat(Int(1), Q);
  Rat delta(0);
  for (const auto& [residue, count] : counts) {
    Rat diff = make_rat(count, total) - uniform;
    if (diff < 0) diff = -diff;
    delta += diff;
  }
  delta += make_rat(Q - static_cast<long>(counts.size()), Q);  // residues never hit
  return delta;
}

/// Exact t-hitting probability restricted to I = J = {first index}: the
/// probability that a uniform t-subset with sum c (mod Q) contains index 0.
/// By convention 1 when no t-subset sums to c.
inline Rat exact_hitting_probability(const std::vector<Int>& elements, const Int& Q,
                                     const Int& c, int t) {
  const std::uint32_t M = static_cast<std::uint32_t>(elements.size());
  if (t < 1 || static_cast<std::uint32_t>(t) > M)
    throw std::invalid_argument("exact_hitting_probability requires 1 <= t <= M");
  if (binomial(M, t) > kSubsetEnumGuard)
    throw capacity_error("exact_hitting_probability: C(M,t) exceeds enumeration guard");
  Int target = c % Q;
  if (target < 0) target += Q;

  long total = 0, containing = 0;
  detail::for_each_combination(M, t, [&](const std::vector<std::uint32_t>& comb) {
    Int s = 0;
    for (std::uint32_t i : comb) s += elements[i];
    s %= Q;
    if (s < 0) s += Q;
    if (s == target) {
      ++total;
      if (comb.front() == 0) ++containing;
    }
  });
  if (total == 0) return Rat(1);
  return make_rat(containing, total);
}

/// Monte Carlo estimate of the general hitting probability p_{a,c,I,J,t}:
/// per trial, each S_j (j in J) is drawn uniformly among t-subsets summing
/// to targets[j] mod Q, and the trial hits when some S_j meets I or two
/// distinct S_j, S_j' intersect. Returns 1 when some target is unreachable.
inline Rat estimate_hitting_general(const std::vector<Int>& elements, const Int& Q,
                                    const std::vector<Int>& targets,
                                    const std::vector<std::uint32_t>& I,
                                    const std::vector<std::uint32_t>& J, int t, long trials,
                                    Seed seed) {
  const std::uint32_t M = static_cast<std::uint32_t>(elements.size());
  if (t < 1 || static_cast<std::uint32_t>(t) > M)
    throw std::invalid_argument("estimate_hitting_general requires 1 <= t <= M");
  if (trials < 1) throw std::invalid_argument("estimate_hitting_general requires trials >= 1");
  if (binomial(M, t) > kSubsetEnumGuard)
    throw capacity_error("estimate_hitting_general: C(M,t) exceeds enumeration guard");
  for (std::uint32_t i : I)
    if (i >= M) throw std::invalid_argument("estimate_hitting_general: I index out of range");
  for (std::uint32_t j : J)
    if (j >= targets.size())
      throw std::invalid_argument("estimate_hitting_general: J index out of range");

  std::vector<std::vector<std::uint32_t>> subsets;
  std::map<Int, std::vector<std::uint32_t>> by_sum;  // residue -> subset ids
  detail::for_each_combination(M, t, [&](const std::vector<std::uint32_t>& comb) {
    Int s = 0;
    for (std::uint32_t i : comb) s += elements[i];
    s %= Q;
    if (s < 0) s += Q;
    by_sum[s].push_back(static_cast<std::uint32_t>(subsets.size()));
    subsets.push_back(comb);
  });

  std::vector<const std::vector<std::uint32_t>*> buckets;
  for (std::uint32_t j : J) {
    Int tgt = targets[j] % Q;
    if (tgt < 0) tgt += Q;
    auto it = by_sum.find(tgt);
    if (it == by_sum.end()) return Rat(1);  // unreachable target
    buckets.push_back(&it->second);
  }

  std::vector<char> in_I(M, 0);
  for (std::uint32_t i : I) in_I[i] = 1;

  Prng g(seed);
  long hits = 0;
  std::vector<const std::vector<std::uint32_t>*> drawn(J.size());
  for (long trial = 0; trial < trials; ++trial) {
    for (std::size_t j = 0; j < J.size(); ++j) {
      const auto& bucket = *buckets[j];
      drawn[j] = &subsets[bucket[g.below_u64(bucket.size())]];
    }
    bool hit = false;
    for (std::size_t j = 0; j < J.size() && !hit; ++j)
      for (std::uint32_t idx : *drawn[j])
        if (in_I[idx]) {
          hit = true;
          break;
        }
    for (std::size_t j = 0; j < J.size() && !hit; ++j)
      for (std::size_t j2 = j + 1; j2 < J.size() && !hit; ++j2) {
        const auto& a = *drawn[j];
        const auto& b = *drawn[j2];
        std::size_t x = 0, y = 0;
        while (x < a.size() && y < b.size()) {
          if (a[x] < b[y]) ++x;
          else if (a[x] > b[y]) ++y;
          else {
            hit = true;
            break;
          }
        }
      }
    if (hit) ++hits;
  }
  return make_rat(hits, trials);
}

/// The parameter schedule of the worst-case-to-average-case chain, all
/// values exact: r = floor(eps' log2 n / (2 log2 k)), beta = floor(n^eps'),
/// u = floor(k^{2(1+eps')cn/eps'}), m = floor(u^{eps/(2 log2 k)}),
/// q = least prime with q^r >= (beta n)^{cn}, m' = ceil(k^{10cn/(k eps')} n^10).
struct ParamSet {
  long n = 0, k = 0;
  Rat epsilon, epsilon_prime, c;
  int r = 0;
  Int beta, u, m, q, Q, m_prime;
};

inline ParamSet reduction_chain_params(long n, long k, const Rat& eps, const Rat& eps_prime,
                                       const Rat& c) {
  if (n < 2 || k < 2) throw std::invalid_argument("reduction_chain_params requires n, k >= 2");
  if (!(c > 0)) throw std::invalid_argument("reduction_chain_params requires c > 0");
  if (!(eps > 0) || !(eps < eps_prime))
    throw std::invalid_argument("reduction_chain_params requires 0 < epsilon < epsilon'");

  auto expo = [](const Int& e) {
    unsigned long v = to_ulong_checked(e, "reduction_chain_params exponent");
    if (v > (1ul << 22)) throw capacity_error("reduction_chain_params exponent too large");
    return v;
  };

  ParamSet ps;
  ps.n = n;
  ps.k = k;
  ps.epsilon = eps;
  ps.epsilon_prime = eps_prime;
  ps.c = c;

  // r: the largest r with k^{2r} <= n^{eps'}, via k^{2 r s'} <= n^{p'}.
  const Int pp = eps_prime.get_num(), sp = eps_prime.get_den();
  Int n_pow = pow_int(n, expo(pp));
  Int step = pow_int(k, expo(2 * sp));
  Int cur = step;
  int r = 0;
  while (cur <= n_pow) {
    ++r;
    cur *= step;
    if (r > 4096) throw capacity_error("reduction_chain_params: r out of range");
  }
  if (r < 1)
    throw std::invalid_argument("reduction_chain_params: derived r < 1; n too small for (k, epsilon')");
  ps.r = r;

  ps.beta = floor_root(n_pow, expo(sp));

  Rat e_u = Rat(2) * (Rat(1) + eps_prime) * c * Rat(n) / eps_prime;
  ps.u = floor_root(pow_int(k, expo(e_u.get_num())), expo(e_u.get_den()));

  // m = u^{eps/(2 log2 k)} evaluated exactly as 2^{c n eps (1+eps')/eps'}.
  Rat e_m = c * Rat(n) * eps * (Rat(1) + eps_prime) / eps_prime;
  ps.m = floor_root(pow_int(2, expo(e_m.get_num())), expo(e_m.get_den()));

  Rat cn = c * Rat(n);
  Int X = pow_int(ps.beta * n, expo(cn.get_num()));
  Int q0 = ceil_root(X, static_cast<unsigned long>(r) * expo(cn.get_den()));
  ps.q = next_prime_at_least(q0 < 2 ? Int(2) : q0);
  ps.Q = pow_int(ps.q, static_cast<unsigned long>(r));

  Rat e_mp = Rat(10) * c * Rat(n) / (Rat(k) * eps_prime);
  Int X2 = pow_int(n, 10 * expo(e_mp.get_den())) * pow_int(k, expo(e_mp.get_num()));
  ps.m_prime = ceil_root(X2, expo(e_mp.get_den()));
  return ps;
}

}  // namespace ksum
