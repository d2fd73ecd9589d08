#include <gtest/gtest.h>

#include "ksum/gen.hpp"
#include "ksum/plane.hpp"

using namespace ksum;

namespace {

std::vector<Int> ints(std::vector<long> v) {
  std::vector<Int> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST(MomentCurve, KnownValues) {
  EXPECT_EQ(embed_moment_curve(Int(2), 1, Int(7)), ints({2, 1}));  // 2^3 = 8 = 1
  EXPECT_EQ(embed_moment_curve(Int(2), 2, Int(7)), ints({2, 4, 2}));  // 2^4 = 16 = 2
  EXPECT_EQ(embed_moment_curve(Int(0), 3, Int(7)), ints({0, 0, 0, 0}));
}

TEST(Degeneracy, KnownValues) {
  // Images of 1, 2, 4 under f_1 all lie on the line y = 1.
  std::vector<std::vector<Int>> on_line{ints({1, 1}), ints({2, 1}), ints({4, 1})};
  EXPECT_TRUE(is_affinely_degenerate(on_line, Int(7)));

  std::vector<std::vector<Int>> off_line{ints({0, 0}), ints({1, 1}), ints({2, 4})};
  EXPECT_FALSE(is_affinely_degenerate(off_line, Int(7)));

  std::vector<std::vector<Int>> dup{ints({3, 5}), ints({3, 5}), ints({2, 4})};
  EXPECT_TRUE(is_affinely_degenerate(dup, Int(7)));

  EXPECT_THROW(is_affinely_degenerate(on_line, Int(8)), std::invalid_argument);
}

TEST(Determinant, IdentityOnAllTuplesD1Q7) {
  // det M(b) = (-1)^d (sum b_i) prod_{i<j} (b_j - b_i): exhaustive at d=1.
  const Int Q(7);
  for (long b1 = 0; b1 < 7; ++b1)
    for (long b2 = 0; b2 < 7; ++b2)
      for (long b3 = 0; b3 < 7; ++b3) {
        std::vector<Int> b = ints({b1, b2, b3});
        EXPECT_EQ(moment_det(b, 1, Q), plane_det_closed_form(b, 1, Q));
      }
}

TEST(Determinant, IdentityRandomHigherD) {
  for (int d : {2, 3}) {
    for (long Q : {11L, 101L}) {
      Prng g(Seed{17, static_cast<std::uint64_t>(d * 1000 + Q)});
      for (int trial = 0; trial < 500; ++trial) {
        std::vector<Int> b;
        for (int i = 0; i < d + 2; ++i) b.push_back(g.below(Int(Q)));
        ASSERT_EQ(moment_det(b, d, Int(Q)), plane_det_closed_form(b, d, Int(Q)));
      }
    }
  }
}

TEST(Determinant, ZeroIffCollisionOrZeroSum) {
  const Int Q(11);
  Prng g(Seed{18, 0});
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<Int> b;
    for (int i = 0; i < 4; ++i) b.push_back(g.below(Q));
    bool collide = false;
    Int sum = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      sum += b[i];
      for (std::size_t j = i + 1; j < b.size(); ++j)
        if (b[i] == b[j]) collide = true;
    }
    bool zero = moment_det(b, 2, Q) == 0;
    EXPECT_EQ(zero, collide || sum % Q == 0);
  }
}

TEST(PlaneBruteForce, KnownExample) {
  // Points f_1(1), f_1(2), f_1(4), f_1(3) over Z_7: only {1,2,4} sums to 0.
  PlaneInstance plane{1, Int(7), {}};
  for (long a : {1L, 2L, 4L, 3L}) plane.points.push_back(embed_moment_curve(Int(a), 1, Int(7)));
  auto r = solve_plane_bruteforce(plane);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r, (std::vector<std::uint32_t>{0, 1, 2}));
}

TEST(PlaneBruteForce, TooFewPoints) {
  PlaneInstance plane{1, Int(7), {ints({1, 1}), ints({2, 1})}};
  EXPECT_FALSE(solve_plane_bruteforce(plane).has_value());
}

TEST(PlaneBruteForce, OutputAlwaysDegenerate) {
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    Prng g(Seed{19, trial});
    PlaneInstance plane{1, Int(11), {}};
    for (int i = 0; i < 8; ++i)
      plane.points.push_back({g.below(Int(11)), g.below(Int(11))});
    auto r = solve_plane_bruteforce(plane);
    if (!r) continue;
    std::vector<std::vector<Int>> pts;
    for (std::uint32_t i : *r) pts.push_back(plane.points[i]);
    EXPECT_TRUE(is_affinely_degenerate(pts, Int(11)));
    // distinct points only
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) EXPECT_NE(pts[i], pts[j]);
  }
}

TEST(PlaneBruteForce, CapacityGuard) {
  PlaneInstance plane{3, Int(11), {}};
  Prng g(Seed{22, 0});
  for (int i = 0; i < 2000; ++i)
    plane.points.push_back({g.below(Int(11)), g.below(Int(11)), g.below(Int(11)), g.below(Int(11))});
  EXPECT_THROW(solve_plane_bruteforce(plane), capacity_error);  // C(2000,5) >> 1e9
}

TEST(ReduceKsumToPlane, KnownExamples) {
  KSumInstance inst{Domain::modular(Int(7)), 3, ints({1, 2, 4})};
  auto r = reduce_ksum_to_plane(inst, plane_oracle_bruteforce());
  ASSERT_TRUE(r.found());
  EXPECT_EQ(r.solution->indices, (std::vector<std::uint32_t>{0, 1, 2}));

  KSumInstance ones{Domain::modular(Int(7)), 3, ints({1, 1, 1})};
  EXPECT_FALSE(reduce_ksum_to_plane(ones, plane_oracle_bruteforce()).found());

  PlaneOracle nothing = [](const PlaneInstance&) { return std::nullopt; };
  EXPECT_FALSE(reduce_ksum_to_plane(inst, nothing).found());
}

TEST(ReduceKsumToPlane, DuplicateValueOutputsAreMisses) {
  // Oracle claims the all-equal triple is on a plane (it is: duplicated
  // points), but the wrapper must filter it as an f_d collision.
  KSumInstance inst{Domain::modular(Int(7)), 3, ints({2, 2, 2})};
  PlaneOracle dup = [](const PlaneInstance&) {
    return std::optional<std::vector<std::uint32_t>>({0, 1, 2});
  };
  EXPECT_FALSE(reduce_ksum_to_plane(inst, dup).found());
}

TEST(ReduceKsumToPlane, ContractViolationDetected) {
  // Distinct values that do not sum to zero: a lying oracle must be caught.
  KSumInstance inst{Domain::modular(Int(7)), 3, ints({1, 2, 5})};
  PlaneOracle liar = [](const PlaneInstance&) {
    return std::optional<std::vector<std::uint32_t>>({0, 1, 2});
  };
  EXPECT_THROW(reduce_ksum_to_plane(inst, liar), oracle_contract_error);
}

TEST(ReduceKsumToPlane, AgreesWithBruteForceOnDistinctInstances) {
  // Spot check here; the acceptance suite runs the full corpus.
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    Prng g(Seed{20, trial});
    std::vector<Int> elems;
    std::vector<char> used(7, 0);
    int m = 3 + static_cast<int>(g.below_u64(4));
    while (static_cast<int>(elems.size()) < m) {
      long v = static_cast<long>(g.below_u64(7));
      if (!used[v]) {
        used[v] = 1;
        elems.emplace_back(v);
      }
    }
    KSumInstance inst{Domain::modular(Int(7)), 3, elems};
    auto direct = solve_bruteforce(inst);
    auto via_plane = reduce_ksum_to_plane(inst, plane_oracle_bruteforce());
    ASSERT_EQ(direct.found(), via_plane.found());
    if (via_plane.found()) EXPECT_TRUE(verify_ksum(inst, *via_plane.solution));
  }
}
