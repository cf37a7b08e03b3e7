#include "oracles.hpp"

#include <chopshop/modlinalg.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace chopshop;

namespace {

ModMatrix random_matrix(std::size_t r, std::size_t c, const PrimeField& F, std::mt19937_64& rng) {
  ModMatrix m(r, c, F);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = static_cast<residue_t>(rng() % F.p());
  return m;
}

/// Product of random r x k and k x c matrices: rank min(k, r, c) generically.
ModMatrix low_rank(std::size_t r, std::size_t c, std::size_t k, const PrimeField& F,
                   std::mt19937_64& rng) {
  return random_matrix(r, k, F, rng) * random_matrix(k, c, F, rng);
}

std::vector<std::vector<std::uint64_t>> to_rows(const ModMatrix& m) {
  std::vector<std::vector<std::uint64_t>> out(m.rows(), std::vector<std::uint64_t>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out[i][j] = m(i, j);
  return out;
}

} // namespace

TEST(PrimeField, Construction) {
  EXPECT_NO_THROW(PrimeField{kDefaultPrime});
  EXPECT_NO_THROW(PrimeField(1009));
  EXPECT_NO_THROW(PrimeField(3));
  EXPECT_THROW(PrimeField(2), std::invalid_argument);
  EXPECT_THROW(PrimeField(1001), std::invalid_argument);
  EXPECT_THROW(PrimeField(4294967291u), std::invalid_argument);
  // Strong pseudoprime to bases 2, 3 and 5.
  EXPECT_THROW(PrimeField(25326001u), std::invalid_argument);
}

TEST(PrimeField, PrimalityAgreesWithTrialDivision) {
  for (std::uint32_t p = 3; p < 20000; ++p) {
    bool prime = true;
    for (std::uint32_t q = 2; q * q <= p; ++q)
      if (p % q == 0) {
        prime = false;
        break;
      }
    ASSERT_EQ(detail::is_prime_u32(p), prime) << p;
  }
}

TEST(PrimeField, Arithmetic) {
  const PrimeField F(1009);
  for (residue_t a = 1; a < 1009; ++a)
    ASSERT_EQ(F.mul(a, F.inv(a)), 1u);
  EXPECT_EQ(F.reduce(-1), 1008u);
  EXPECT_EQ(F.sub(3, 5), 1007u);
  EXPECT_THROW(F.inv(0), std::domain_error);
}

TEST(Axpy, MatchesPlainArithmetic) {
  std::mt19937_64 rng(5);
  for (std::uint32_t p : {3u, 1009u, 65521u, kDefaultPrime}) {
    std::vector<residue_t> dst(37), src(37);
    for (int trial = 0; trial < 200; ++trial) {
      for (std::size_t j = 0; j < dst.size(); ++j) {
        dst[j] = static_cast<residue_t>(rng() % p);
        src[j] = static_cast<residue_t>(rng() % p);
      }
      const residue_t w = static_cast<residue_t>(rng() % p);
      auto expect = dst;
      for (std::size_t j = 3; j < dst.size(); ++j)
        expect[j] = static_cast<residue_t>((dst[j] + static_cast<std::uint64_t>(w) * src[j]) % p);
      detail::axpy_mod(dst.data(), src.data(), w, p, 3, dst.size());
      ASSERT_EQ(dst, expect);
    }
  }
}

TEST(Rank, Trivial) {
  const PrimeField F;
  EXPECT_EQ(rank(ModMatrix::identity(7, F)), 7u);
  EXPECT_EQ(rank(ModMatrix(5, 9, F)), 0u);
}

TEST(Rank, MatchesNaiveElimination) {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {7u, 1009u, kDefaultPrime}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t r = 1 + rng() % 30, c = 1 + rng() % 30, k = rng() % 25;
      const ModMatrix m = k ? low_rank(r, c, k, F, rng) : ModMatrix(r, c, F);
      ASSERT_EQ(rank(m), oracle::naive_rank(to_rows(m), p));
    }
  }
}

TEST(Rank, TransposeInvariant) {
  std::mt19937_64 rng(23);
  const PrimeField F;
  for (int trial = 0; trial < 10; ++trial) {
    const ModMatrix m = low_rank(50, 80, 10 + rng() % 45, F, rng);
    ASSERT_EQ(rank(m), rank(m.transpose()));
    ASSERT_EQ(rank(m), column_rank(m));
  }
}

TEST(Rank, EarlyStopReportsTarget) {
  std::mt19937_64 rng(29);
  const PrimeField F;
  const ModMatrix m = random_matrix(40, 60, F, rng);
  EXPECT_EQ(column_rank(m, 25), 25u);
  EXPECT_EQ(column_rank(m), 40u);
}

TEST(Echelonizer, StreamMatchesSingleInserts) {
  std::mt19937_64 rng(31);
  const PrimeField F(1009);
  const ModMatrix m = low_rank(70, 45, 30, F, rng);
  Echelonizer a(F, 45), b(F, 45);
  for (std::size_t i = 0; i < m.rows(); ++i)
    a.insert(m.row(i));
  b.insert_stream(m.rows(), [&](std::size_t i, std::span<residue_t> out) {
    std::copy(m.row(i).begin(), m.row(i).end(), out.begin());
  });
  ASSERT_EQ(a.rank(), b.rank());
  EXPECT_EQ(a.pivot_cols(), b.pivot_cols());
  for (std::size_t j = 0; j < a.rank(); ++j)
    EXPECT_TRUE(std::equal(a.pivot_row(j).begin(), a.pivot_row(j).end(), b.pivot_row(j).begin()));
}

TEST(Kernel, TrivialCases) {
  const PrimeField F;
  EXPECT_EQ(kernel_basis(ModMatrix::identity(6, F)).cols(), 0u);
  const auto k = kernel_basis(ModMatrix(3, 4, F));
  EXPECT_EQ(k, ModMatrix::identity(4, F));
}

TEST(Kernel, RankNullityAndAnnihilation) {
  std::mt19937_64 rng(37);
  const PrimeField F;
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t r = 1 + rng() % 25, c = 1 + rng() % 40, k = 1 + rng() % 20;
    const ModMatrix m = low_rank(r, c, k, F, rng);
    const ModMatrix ker = kernel_basis(m);
    ASSERT_EQ(ker.cols() + rank(m), c);
    ASSERT_TRUE((m * ker).is_zero());
    ASSERT_EQ(rank(ker), ker.cols());
  }
}

TEST(Kernel, Deterministic) {
  std::mt19937_64 rng(41);
  const PrimeField F;
  const ModMatrix m = low_rank(12, 20, 7, F, rng);
  EXPECT_EQ(kernel_basis(m), kernel_basis(m));
  EXPECT_EQ(rref(m).reduced, rref(m).reduced);
}

TEST(Rref, IsReduced) {
  std::mt19937_64 rng(43);
  const PrimeField F(101);
  const ModMatrix m = low_rank(15, 22, 9, F, rng);
  const auto rr = rref(m);
  ASSERT_EQ(rr.pivot_cols.size(), 9u);
  for (std::size_t i = 0; i < rr.pivot_cols.size(); ++i)
    for (std::size_t j = 0; j < m.rows(); ++j)
      ASSERT_EQ(rr.reduced(j, rr.pivot_cols[i]), j == i ? 1u : 0u);
}

TEST(InSpan, Basics) {
  std::mt19937_64 rng(47);
  const PrimeField F;
  const ModMatrix m = low_rank(20, 6, 6, F, rng);
  for (std::size_t j = 0; j < m.cols(); ++j)
    EXPECT_TRUE(in_span(m, m.column(j)));
  EXPECT_TRUE(in_span(m, std::vector<residue_t>(20, 0)));
  std::vector<residue_t> combo(20, 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    const auto col = m.column(j);
    for (std::size_t i = 0; i < 20; ++i)
      combo[i] = F.add(combo[i], F.mul(static_cast<residue_t>(j + 2), col[i]));
  }
  EXPECT_TRUE(in_span(m, combo));
  combo[0] = F.add(combo[0], 1);
  EXPECT_FALSE(in_span(m, combo));
  EXPECT_THROW(in_span(m, std::vector<residue_t>(3, 0)), std::invalid_argument);
}
