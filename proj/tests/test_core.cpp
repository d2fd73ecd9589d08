#include <gtest/gtest.h>

#include <set>

#include "ksum/core.hpp"

using namespace ksum;

TEST(Center, KnownValues) {
  EXPECT_EQ(center_representative(Int(5), Int(7)), -2);
  EXPECT_EQ(center_representative(Int(3), Int(7)), 3);
  EXPECT_EQ(center_representative(Int(0), Int(7)), 0);
}

TEST(Center, Errors) {
  EXPECT_THROW(center_representative(Int(1), Int(8)), std::invalid_argument);  // even Q
  EXPECT_THROW(center_representative(Int(7), Int(7)), std::invalid_argument);  // out of range
  EXPECT_THROW(center_representative(Int(-1), Int(7)), std::invalid_argument);
  EXPECT_THROW(center_representative(Int(0), Int(1)), std::invalid_argument);
}

TEST(Center, BijectionProperty) {
  // center(v) = v mod Q, and the map is a bijection onto [-(Q-1)/2, (Q-1)/2].
  for (long Q : {3L, 7L, 101L, 1009L}) {
    std::set<Int> image;
    for (long v = 0; v < Q; ++v) {
      Int c = center_representative(Int(v), Int(Q));
      Int back = c % Q;
      if (back < 0) back += Q;
      EXPECT_EQ(back, v);
      EXPECT_LE(c * 2, Q - 1);
      EXPECT_GE(c * 2, -(Q - 1));
      image.insert(c);
    }
    EXPECT_EQ(static_cast<long>(image.size()), Q);
  }
}

TEST(VerifyKsum, KnownValues) {
  KSumInstance mod7{Domain::modular(Int(7)), 3, {Int(1), Int(2), Int(4)}};
  EXPECT_TRUE(verify_ksum(mod7, KSumSolution{{0, 1, 2}}));

  KSumInstance intv{Domain::interval(Int(5)), 2, {Int(3), Int(-3), Int(1)}};
  EXPECT_TRUE(verify_ksum(intv, KSumSolution{{0, 1}}));

  KSumInstance mod7b{Domain::modular(Int(7)), 2, {Int(1), Int(2), Int(4)}};
  EXPECT_FALSE(verify_ksum(mod7b, KSumSolution{{0, 1}}));
}

TEST(VerifyKsum, Errors) {
  KSumInstance inst{Domain::modular(Int(7)), 3, {Int(1), Int(2), Int(4)}};
  EXPECT_THROW(verify_ksum(inst, KSumSolution{{0, 1}}), std::invalid_argument);
  EXPECT_THROW(verify_ksum(inst, KSumSolution{{0, 1, 3}}), std::invalid_argument);
  EXPECT_THROW(verify_ksum(inst, KSumSolution{{0, 1, 1}}), std::invalid_argument);
}

TEST(VerifySis, KnownValues) {
  SisInstance s{Int(5), 2, Int(3), {Int(3), Int(7), Int(15)}};
  check_sis_instance(s);
  EXPECT_TRUE(verify_sis(s, SisSolution{{Int(1), Int(1), Int(1)}}));
  EXPECT_FALSE(verify_sis(s, SisSolution{{Int(0), Int(0), Int(0)}}));
  EXPECT_FALSE(verify_sis(s, SisSolution{{Int(5), Int(0), Int(0)}}));
  EXPECT_THROW(verify_sis(s, SisSolution{{Int(1), Int(1)}}), std::invalid_argument);
}

TEST(VerifySis, NegationSymmetry) {
  SisInstance s{Int(5), 2, Int(6), {Int(3), Int(7), Int(15), Int(24)}};
  const SisSolution sols[] = {
      SisSolution{{Int(1), Int(1), Int(1), Int(0)}},
      SisSolution{{Int(2), Int(0), Int(0), Int(-1)}},
      SisSolution{{Int(0), Int(1), Int(0), Int(3)}},
  };
  for (const auto& sol : sols) {
    SisSolution neg;
    for (const Int& v : sol.x) neg.x.push_back(-v);
    EXPECT_EQ(verify_sis(s, sol), verify_sis(s, neg));
  }
}

TEST(VerifyKsum, NoOverflowAtLargeModuli) {
  // Exact arithmetic well past 2^256.
  Int Q = pow_int(2, 256) + 297;
  Int x = pow_int(2, 255) + 12345;
  KSumInstance inst{Domain::modular(Q), 2, {x, Q - x, Int(5)}};
  EXPECT_TRUE(verify_ksum(inst, KSumSolution{{0, 1}}));
  EXPECT_FALSE(verify_ksum(inst, KSumSolution{{0, 2}}));
  EXPECT_EQ(center_representative(Q - 1, Q), -1);
}

TEST(Types, InstanceValidation) {
  EXPECT_THROW(Domain::modular(Int(1)), std::invalid_argument);
  EXPECT_THROW(Domain::interval(Int(0)), std::invalid_argument);
  EXPECT_THROW(make_ksum_instance(Domain::modular(Int(7)), 3, {Int(1), Int(2)}),
               std::invalid_argument);
  EXPECT_THROW(make_ksum_instance(Domain::modular(Int(7)), 2, {Int(1), Int(7)}),
               std::invalid_argument);
  EXPECT_THROW(make_ksum_instance(Domain::interval(Int(3)), 2, {Int(1), Int(-4)}),
               std::invalid_argument);
  EXPECT_NO_THROW(make_ksum_instance(Domain::interval(Int(3)), 2, {Int(-3), Int(3)}));
}

TEST(Types, SisValidation) {
  EXPECT_THROW(check_sis_instance(SisInstance{Int(4), 2, Int(3), {Int(1)}}),
               std::invalid_argument);  // q composite
  EXPECT_THROW(check_sis_instance(SisInstance{Int(5), 0, Int(3), {Int(1)}}),
               std::invalid_argument);
  EXPECT_THROW(check_sis_instance(SisInstance{Int(5), 2, Int(3), {Int(25)}}),
               std::invalid_argument);  // out of [0, Q)
}
