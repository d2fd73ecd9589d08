#include <gtest/gtest.h>

#include <vector>

#include "ksum/gen.hpp"
#include "ksum/solvers.hpp"

using namespace ksum;

namespace {

KSumInstance modular_instance(long Q, int k, std::vector<long> elems) {
  std::vector<Int> v;
  for (long e : elems) v.emplace_back(e);
  return KSumInstance{Domain::modular(Int(Q)), k, std::move(v)};
}

KSumInstance interval_instance(long u, int k, std::vector<long> elems) {
  std::vector<Int> v;
  for (long e : elems) v.emplace_back(e);
  return KSumInstance{Domain::interval(Int(u)), k, std::move(v)};
}

// Enumerates every modular instance over Z_Q with m elements (odometer).
template <class F>
void for_all_instances(long Q, int m, F&& f) {
  std::vector<long> elems(m, 0);
  for (;;) {
    f(elems);
    int i = m - 1;
    while (i >= 0 && elems[i] == Q - 1) elems[i--] = 0;
    if (i < 0) return;
    ++elems[i];
  }
}

}  // namespace

TEST(BruteForce, KnownValues) {
  auto r1 = solve_bruteforce(modular_instance(7, 3, {1, 2, 4}));
  ASSERT_TRUE(r1.found());
  EXPECT_EQ(r1.solution->indices, (std::vector<std::uint32_t>{0, 1, 2}));

  // all pairs of [1,2,3] sum to 3, 4, 5 mod 7; none vanish
  EXPECT_FALSE(solve_bruteforce(modular_instance(7, 2, {1, 2, 3})).found());

  auto r3 = solve_bruteforce(interval_instance(3, 2, {1, 2, -2, 3}));
  ASSERT_TRUE(r3.found());
  EXPECT_EQ(r3.solution->indices, (std::vector<std::uint32_t>{1, 2}));
}

TEST(BruteForce, LexicographicallySmallest) {
  // {0,3} and {1,2} both work; brute force must return {0,3}.
  auto r = solve_bruteforce(modular_instance(10, 2, {1, 4, 6, 9}));
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.solution->indices, (std::vector<std::uint32_t>{0, 3}));
}

TEST(BruteForce, CapacityGuard) {
  auto inst = gen_ksum(Domain::modular(Int(1009)), 300, 5, Seed{1, 0});
  EXPECT_THROW(solve_bruteforce(inst), capacity_error);  // C(300,5) > 1e9
}

TEST(Mitm, KnownValues) {
  auto r1 = solve_mitm(modular_instance(10, 2, {1, 9, 3, 5}));
  ASSERT_TRUE(r1.found());
  EXPECT_TRUE(verify_ksum(modular_instance(10, 2, {1, 9, 3, 5}), *r1.solution));

  auto inst2 = modular_instance(7, 4, {1, 1, 2, 3});
  auto r2 = solve_mitm(inst2);
  ASSERT_TRUE(r2.found());
  EXPECT_EQ(r2.solution->indices, (std::vector<std::uint32_t>{0, 1, 2, 3}));
}

TEST(Mitm, AgreesWithBruteForceExhaustively) {
  // Existence equivalence over every Modular(Q) instance in a small grid.
  for (long Q : {2L, 3L, 5L}) {
    for (int m = 2; m <= 5; ++m) {
      for (int k = 2; k <= std::min(m, 4); ++k) {
        for_all_instances(Q, m, [&](const std::vector<long>& elems) {
          auto inst = modular_instance(Q, k, elems);
          auto bf = solve_bruteforce(inst);
          auto mm = solve_mitm(inst);
          ASSERT_EQ(bf.found(), mm.found());
          if (mm.found()) ASSERT_TRUE(verify_ksum(inst, *mm.solution));
        });
      }
    }
  }
}

TEST(Mitm, AgreesOnRandomIntervalInstances) {
  for (long trial = 0; trial < 300; ++trial) {
    Prng pick(Seed{555, static_cast<std::uint64_t>(trial)});
    long u = 1 + static_cast<long>(pick.below_u64(30));
    int k = 2 + static_cast<int>(pick.below_u64(3));
    long m = k + static_cast<long>(pick.below_u64(8));
    auto inst = gen_ksum(Domain::interval(Int(u)), m, k, Seed{556, static_cast<std::uint64_t>(trial)});
    auto bf = solve_bruteforce(inst);
    auto mm = solve_mitm(inst);
    ASSERT_EQ(bf.found(), mm.found());
    if (mm.found()) ASSERT_TRUE(verify_ksum(inst, *mm.solution));
  }
}

TEST(Solvers, SmallAndBigPathsBitIdentical) {
  // Same instances through the int64 fast path and the arbitrary-precision
  // path: identical index sets.
  for (long trial = 0; trial < 50; ++trial) {
    auto inst = gen_ksum(Domain::modular(Int(11)), 8, 3, Seed{777, static_cast<std::uint64_t>(trial)});
    auto big = inst;
    big.domain.bound = Int(11);
    // Force the big path by inflating the modulus beyond the int64 window,
    // keeping arithmetic identical: add Q-multiples of 0 (no-op) -- instead
    // compare against a manual mpz run of the same algorithm.
    auto small_res = solve_bruteforce(inst);
    auto generic = detail::first_zero_combination<Int>(inst.elements, inst.k, &inst.domain.bound);
    ASSERT_EQ(small_res.found(), generic.has_value());
    if (generic) EXPECT_EQ(small_res.solution->indices, *generic);

    auto small_mitm = solve_mitm(inst);
    auto generic_mitm = detail::mitm_search<Int>(inst.elements, inst.k, &inst.domain.bound);
    ASSERT_EQ(small_mitm.found(), generic_mitm.has_value());
    if (generic_mitm) {
      auto sorted = *generic_mitm;
      std::sort(sorted.begin(), sorted.end());
      EXPECT_EQ(small_mitm.solution->indices, sorted);
    }
  }
}

TEST(Solvers, FuzzSoundness) {
  // Every Found output verifies, across domains and solvers.
  for (long trial = 0; trial < 2000; ++trial) {
    Prng pick(Seed{31337, static_cast<std::uint64_t>(trial)});
    bool modular = pick.below_u64(2) == 0;
    long bound = 2 + static_cast<long>(pick.below_u64(50));
    int k = 2 + static_cast<int>(pick.below_u64(3));
    long m = k + static_cast<long>(pick.below_u64(9));
    Domain dom = modular ? Domain::modular(Int(bound)) : Domain::interval(Int(bound));
    auto inst = gen_ksum(dom, m, k, Seed{31338, static_cast<std::uint64_t>(trial)});
    auto bf = solve_bruteforce(inst);
    if (bf.found()) ASSERT_TRUE(verify_ksum(inst, *bf.solution));
    auto mm = solve_mitm(inst);
    if (mm.found()) ASSERT_TRUE(verify_ksum(inst, *mm.solution));
    ASSERT_EQ(bf.found(), mm.found());
  }
}

TEST(Bkw, HandTracedExample) {
  // q=3, ell=2: level 1 pairs (1,2), (4,5), (7,8); level 2 pairs 3+15.
  std::vector<Int> elems{Int(1), Int(2), Int(4), Int(5), Int(7), Int(8)};
  auto r = solve_bkw(elems, BkwConfig{Int(3), 2});
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.solution->indices.size(), 4u);
  Int sum = 0;
  for (std::uint32_t i : r.solution->indices) sum += elems[i];
  EXPECT_EQ(sum % 9, 0);
}

TEST(Bkw, SingleLevel) {
  std::vector<Int> elems{Int(1), Int(2)};
  auto r = solve_bkw(elems, BkwConfig{Int(3), 1});
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.solution->indices, (std::vector<std::uint32_t>{0, 1}));
}

TEST(Bkw, NotFoundWhenNoPairs) {
  std::vector<Int> elems{Int(1), Int(1), Int(1), Int(1)};
  EXPECT_FALSE(solve_bkw(elems, BkwConfig{Int(3), 2}).found());
}

TEST(Bkw, Errors) {
  std::vector<Int> elems{Int(1), Int(2)};
  EXPECT_THROW(solve_bkw(elems, BkwConfig{Int(4), 1}), std::invalid_argument);  // q composite
  EXPECT_THROW(solve_bkw(elems, BkwConfig{Int(3), 2}), std::invalid_argument);  // m < 2^ell
  std::vector<Int> out_of_range{Int(9), Int(1), Int(2), Int(3)};
  EXPECT_THROW(solve_bkw(out_of_range, BkwConfig{Int(3), 2}), std::invalid_argument);
}

TEST(Bkw, InputSizeFormula) {
  // m = ceil(1000 * ell^2 * q^2 * 2^ell * log2 q) at density 1
  BkwConfig cfg{Int(3), 2};
  EXPECT_EQ(bkw_input_size(cfg), 228235);
  cfg.density = Rat(1, 1000);
  EXPECT_EQ(bkw_input_size(cfg), 229);
}

TEST(Bkw, SolutionsAreValidOnRandomInputs) {
  // Disjoint indices, exactly 2^ell of them, elements summing to 0 mod q^ell.
  const long m = 2000;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    auto inst = gen_ksum(Domain::modular(Int(27)), m, 8, Seed{888, trial});
    auto r = solve_bkw(inst.elements, BkwConfig{Int(3), 3});
    ASSERT_TRUE(r.found());
    ASSERT_EQ(r.solution->indices.size(), 8u);
    EXPECT_TRUE(verify_ksum(inst, *r.solution));  // also checks distinctness
  }
}

TEST(Mitm, AgreesAtCorpusEdge) {
  // m = 10 random cells round out the small-corpus equivalence checks.
  for (long Q : {7L, 11L}) {
    for (int k = 2; k <= 4; ++k) {
      for (std::uint64_t i = 0; i < 200; ++i) {
        auto inst = gen_ksum(Domain::modular(Int(Q)), 10, k,
                             Seed{4242, static_cast<std::uint64_t>(Q * 10 + k) * 1000 + i});
        auto bf = solve_bruteforce(inst);
        auto mm = solve_mitm(inst);
        ASSERT_EQ(bf.found(), mm.found());
        if (mm.found()) ASSERT_TRUE(verify_ksum(inst, *mm.solution));
      }
    }
  }
}

TEST(Bkw, EvenPrimeSelfPairing) {
  // q = 2: class 1 is its own negation and must pair internally.
  std::vector<Int> elems{Int(1), Int(3), Int(2), Int(2), Int(1), Int(1)};
  auto r = solve_bkw(elems, BkwConfig{Int(2), 2});
  if (r.found()) {
    Int sum = 0;
    for (std::uint32_t i : r.solution->indices) sum += elems[i];
    EXPECT_EQ(sum % 4, 0);
  }
  for (std::uint64_t i = 0; i < 200; ++i) {
    auto inst = gen_ksum(Domain::modular(Int(4)), 32, 4, Seed{2222, i});
    auto res = solve_bkw(inst.elements, BkwConfig{Int(2), 2});
    if (res.found()) ASSERT_TRUE(verify_ksum(inst, *res.solution));
  }
}

TEST(Bkw, FuzzSoundness) {
  // 1e4 random instances: every Found output verifies.
  long found = 0;
  for (std::uint64_t trial = 0; trial < 10000; ++trial) {
    auto inst = gen_ksum(Domain::modular(Int(9)), 32, 4, Seed{999, trial});
    auto r = solve_bkw(inst.elements, BkwConfig{Int(3), 2});
    if (r.found()) {
      ++found;
      ASSERT_TRUE(verify_ksum(inst, *r.solution));
    }
  }
  EXPECT_GT(found, 9000);  // 32 elements mod 9 pair up almost surely
}

TEST(BruteForce, CompletenessAgainstIndependentEnumeration) {
  // Found iff some k-subset verifies, checked with a separate enumerator
  // that walks subsets through verify_ksum only.
  for (long Q : {2L, 3L, 5L}) {
    for (int m = 2; m <= 5; ++m) {
      for (int k = 2; k <= std::min(m, 4); ++k) {
        for_all_instances(Q, m, [&](const std::vector<long>& elems) {
          auto inst = modular_instance(Q, k, elems);
          bool exists = false;
          std::vector<std::uint32_t> c(k);
          for (int j = 0; j < k; ++j) c[j] = j;
          for (;;) {
            if (verify_ksum(inst, KSumSolution{c})) {
              exists = true;
              break;
            }
            int j = k - 1;
            while (j >= 0 && c[j] == static_cast<std::uint32_t>(m - k + j)) --j;
            if (j < 0) break;
            ++c[j];
            for (int l = j + 1; l < k; ++l) c[l] = c[l - 1] + 1;
          }
          ASSERT_EQ(solve_bruteforce(inst).found(), exists);
        });
      }
    }
  }
}

TEST(Solvers, LargeModulusPath) {
  // Arbitrary-precision path end to end: modulus near 2^256.
  Int Q = pow_int(2, 256) + 297;
  Int x = pow_int(2, 200) + 7;
  KSumInstance inst{Domain::modular(Q), 2, {Int(3), x, Q - x, Int(9)}};
  auto bf = solve_bruteforce(inst);
  ASSERT_TRUE(bf.found());
  EXPECT_EQ(bf.solution->indices, (std::vector<std::uint32_t>{1, 2}));
  auto mm = solve_mitm(inst);
  ASSERT_TRUE(mm.found());
  EXPECT_TRUE(verify_ksum(inst, *mm.solution));
}

TEST(Bkw, OracleAdapterValidatesShape) {
  auto oracle = oracle_bkw(Int(3), 2);
  auto bad = gen_ksum(Domain::modular(Int(7)), 10, 4, Seed{1, 2});
  EXPECT_THROW(oracle(bad), std::invalid_argument);
  auto bad_k = gen_ksum(Domain::modular(Int(9)), 10, 3, Seed{1, 3});
  EXPECT_THROW(oracle(bad_k), std::invalid_argument);
  auto good = gen_ksum(Domain::modular(Int(9)), 64, 4, Seed{1, 4});
  auto r = oracle(good);
  if (r.found()) EXPECT_TRUE(verify_ksum(good, *r.solution));
}
