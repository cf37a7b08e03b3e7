#include "oracles.hpp"

#include <chopshop/grading.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace chopshop;

TEST(Hs, SmallValues) {
  EXPECT_EQ(hs(2, 5), 21);
  EXPECT_EQ(hs(3, -2), 0);
  EXPECT_EQ(hs(4, 5), 126);
  EXPECT_EQ(hs(5, 0), 1);
}

TEST(Hs, MatchesPascalTable) {
  for (int n = 1; n <= 10; ++n)
    for (int t = 0; t <= 60; ++t)
      ASSERT_EQ(hs(n, t), oracle::hs_pascal(n, t)) << n << "," << t;
}

TEST(Hs, PascalRecurrence) {
  for (int n = 1; n <= 10; ++n)
    for (int t = 0; t <= 200; ++t)
      ASSERT_EQ(hs(n, t) - hs(n, t - 1), hs(n - 1, t)) << n << "," << t;
}

TEST(Hs, OverflowIsReported) {
  EXPECT_THROW(hs(40, 200), capacity_error);
  EXPECT_THROW(hs(-1, 3), std::invalid_argument);
}

TEST(Monomials, LineDegreeTwo) {
  const auto m = monomials(1, 2);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], Exponent({2, 0}));
  EXPECT_EQ(m[1], Exponent({1, 1}));
  EXPECT_EQ(m[2], Exponent({0, 2}));
}

TEST(Monomials, VariablesInOrder) {
  const auto m = monomials(2, 1);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[0], Exponent({1, 0, 0}));
  EXPECT_EQ(m[1], Exponent({0, 1, 0}));
  EXPECT_EQ(m[2], Exponent({0, 0, 1}));
}

TEST(Monomials, GrevlexStrictlyDecreasing) {
  for (int n = 1; n <= 4; ++n)
    for (int t = 0; t <= 7; ++t) {
      const auto m = monomials(n, t);
      ASSERT_EQ(static_cast<count_t>(m.size()), hs(n, t));
      for (std::size_t i = 0; i + 1 < m.size(); ++i)
        ASSERT_TRUE(oracle::grevlex_greater(m[i].entries, m[i + 1].entries));
      for (const auto& e : m)
        ASSERT_EQ(e.degree(), t);
    }
}

TEST(MonoIndex, RoundTrip) {
  for (int n = 1; n <= 5; ++n)
    for (int t = 0; t <= 6; ++t) {
      const auto m = monomials(n, t);
      for (std::size_t k = 0; k < m.size(); ++k)
        ASSERT_EQ(mono_index(n, t, m[k]), static_cast<count_t>(k));
    }
  const auto m = monomials(2, 5);
  EXPECT_EQ(m.size(), 21u);
  EXPECT_EQ(mono_index(2, 5, m.front()), 0);
}

TEST(MonoIndex, DegreeMismatchThrows) {
  EXPECT_THROW(mono_index(2, 4, Exponent({1, 1, 1})), std::invalid_argument);
}

TEST(MonoMul, AddsExponents) {
  EXPECT_EQ(mono_mul(Exponent({1, 0, 0}), Exponent({0, 2, 0})), Exponent({1, 2, 0}));
}

TEST(ProductIndexTable, AgreesWithMonoIndex) {
  const int n = 3, a = 2, b = 3;
  const auto ma = monomials(n, a), mb = monomials(n, b);
  const auto table = product_index_table(n, a, b);
  for (std::size_t i = 0; i < ma.size(); ++i)
    for (std::size_t j = 0; j < mb.size(); ++j)
      ASSERT_EQ(static_cast<count_t>(table[i * mb.size() + j]),
                mono_index(n, a + b, mono_mul(ma[i], mb[j])));
}

TEST(HilbertTable, RejectsBadInput) {
  EXPECT_THROW(HilbertTable(2, {1, -1}), std::invalid_argument);
  EXPECT_THROW(HilbertTable(2, {1, 3, 4}, 5), std::invalid_argument);
  HilbertTable h(2, {1, 3, 5}, 5);
  EXPECT_EQ(h.at(10), 5);
  HilbertTable g(2, {1, 3, 6});
  EXPECT_THROW(g.at(3), std::out_of_range);
}

TEST(FirstDifference, EighteenPlanePoints) {
  HilbertTable h(2, {1, 3, 6, 10, 15, 18, 18}, 18);
  const auto dh = first_difference(h);
  EXPECT_EQ(dh.values, (std::vector<count_t>{1, 2, 3, 4, 5, 3, 0}));
  EXPECT_EQ(hilbert_regularity(h), 5);
}

TEST(FirstDifference, ConstantTable) {
  HilbertTable h(3, {7, 7}, 7);
  const auto dh = first_difference(h);
  EXPECT_EQ(dh.values, (std::vector<count_t>{7, 0}));
  EXPECT_EQ(hilbert_regularity(h), 0);
}

TEST(FirstDifference, FullRingGivesSmallerRing) {
  const int n = 3;
  std::vector<count_t> v;
  for (int t = 0; t <= 8; ++t)
    v.push_back(hs(n, t));
  // Treat the stored range as the whole table by appending a constant tail.
  v.push_back(v.back());
  const auto dh = first_difference(HilbertTable(n, v, v.back()));
  for (int t = 0; t <= 8; ++t)
    EXPECT_EQ(dh.values[t], binomial(t + n - 1, n - 1));
}

TEST(FirstDifference, RequiresTail) {
  EXPECT_THROW(first_difference(HilbertTable(2, {1, 3, 6})), std::invalid_argument);
  EXPECT_THROW(hilbert_regularity(HilbertTable(2, {1, 3, 6})), std::invalid_argument);
}

TEST(PrefixSum, InvertsFirstDifference) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<count_t> v;
    count_t acc = 0;
    const int len = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i) {
      acc += static_cast<count_t>(rng() % 5);
      v.push_back(acc);
    }
    HilbertTable h(2, v, v.back());
    const HilbertTable back = prefix_sum(first_difference(h));
    for (int t = 0; t < len + 3; ++t)
      ASSERT_EQ(back.at(t), h.at(t));
  }
}

TEST(LexCompare, Basics) {
  HilbertTable a(2, {1, 3, 5});
  HilbertTable b(2, {1, 3, 6});
  EXPECT_EQ(lex_compare_hf(a, a), LexOrder::equal);
  EXPECT_EQ(lex_compare_hf(a, b), LexOrder::less);
  EXPECT_EQ(lex_compare_hf(b, a), LexOrder::greater);
  EXPECT_EQ(lex_compare_hf(HilbertTable(2, {}), a), LexOrder::incomparable);
  EXPECT_EQ(lex_compare_hf(HilbertTable(2, {1, 3}), a), LexOrder::incomparable);
  EXPECT_THROW(lex_compare_hf(a, HilbertTable(3, {1})), std::invalid_argument);
}

TEST(LexCompare, ReflexiveAndAntisymmetric) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<count_t> x(6), y(6);
    for (int i = 0; i < 5; ++i) {
      x[i] = static_cast<count_t>(rng() % 4);
      y[i] = static_cast<count_t>(rng() % 4);
    }
    x[5] = x[4];
    y[5] = y[4];
    HilbertTable h(2, x, x[5]), g(2, y, y[5]);
    ASSERT_EQ(lex_compare_hf(h, h), LexOrder::equal);
    const auto hg = lex_compare_hf(h, g), gh = lex_compare_hf(g, h);
    if (hg == LexOrder::equal) {
      ASSERT_EQ(h.values, g.values);
    }
    if (hg == LexOrder::less) {
      ASSERT_EQ(gh, LexOrder::greater);
    }
    if (hg == LexOrder::greater) {
      ASSERT_EQ(gh, LexOrder::less);
    }
  }
}
