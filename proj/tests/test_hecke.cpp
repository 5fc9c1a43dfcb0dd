#include <gtest/gtest.h>

#include <random>

#include "blobkl/hecke.hpp"
#include "oracles.hpp"

using namespace blobkl;

namespace {

LaurentPoly V(int e, long long c = 1) { return LaurentPoly::monomial(e, c); }

AffineElement D(int k, Side s = Side::s) {
  return from_dihedral(k == 0 ? DihedralForm{} : DihedralForm{s, k});
}

oracle::Expansion as_map(HeckeElement const& h) { return {h.support().begin(), h.support().end()}; }

} // namespace

TEST(Hecke, RightMultiplicationByBarredGenerator) {
  HeckeElement e = HeckeElement::standard(AffineElement(2));
  HeckeElement r = mult_right_barred(e, kGenS);
  EXPECT_EQ(r.coeff(D(1)), LaurentPoly(1));
  EXPECT_EQ(r.coeff(AffineElement(2)), V(1));

  HeckeElement s = mult_right_barred(HeckeElement::standard(D(1)), kGenS);
  EXPECT_EQ(s.coeff(AffineElement(2)), LaurentPoly(1));
  EXPECT_EQ(s.coeff(D(1)), V(-1));
  EXPECT_EQ(s.support().size(), 2u);
}

TEST(Hecke, BottSamelsonSts) {
  HeckeElement h = bott_samelson({kGenS, kGenT, kGenS}, 2);
  EXPECT_EQ(h.coeff(D(3)), LaurentPoly(1));
  EXPECT_EQ(h.coeff(D(2)), V(1));
  EXPECT_EQ(h.coeff(D(2, Side::t)), V(1));
  EXPECT_EQ(h.coeff(D(1, Side::t)), V(2));
  EXPECT_EQ(h.coeff(D(1)), LaurentPoly(1) + V(2));
  EXPECT_EQ(h.coeff(AffineElement(2)), V(1) + V(3));
  EXPECT_EQ(h.support().size(), 6u);
}

TEST(Hecke, BottSamelsonSmallWords) {
  EXPECT_EQ(bott_samelson({}, 3), HeckeElement::standard(AffineElement(3)));
  HeckeElement h = bott_samelson({kGenS}, 2);
  EXPECT_EQ(h.coeff(D(1)), LaurentPoly(1));
  EXPECT_EQ(h.coeff(AffineElement(2)), V(1));
}

TEST(Hecke, BottSamelsonMatchesSubsequenceOracle) {
  std::mt19937_64 rng(21);
  for (int l = 2; l <= 4; ++l)
    for (int iter = 0; iter < 25; ++iter) {
      Word w = oracle::random_word(rng, l, static_cast<int>(oracle::draw(rng, 0, 9)));
      EXPECT_EQ(as_map(bott_samelson(w, l)), oracle::bs_subsequences(w, l)) << word_string(w);
    }
}

TEST(Hecke, BottSamelsonCoefficientsNonnegative) {
  std::mt19937_64 rng(23);
  for (int l = 2; l <= 4; ++l)
    for (int iter = 0; iter < 20; ++iter) {
      Word w = oracle::random_word(rng, l, static_cast<int>(oracle::draw(rng, 1, 14)));
      HeckeElement h = bott_samelson(w, l);
      for (auto const& [x, c] : h.support())
        EXPECT_TRUE(c.has_nonnegative_coefficients()) << word_string(w) << " at " << label(x);
    }
}

TEST(Hecke, FpDigits) {
  EXPECT_EQ(f_p(4, 1, 2), 1);
  EXPECT_EQ(f_p(4, 2, 2), 0);
  EXPECT_EQ(f_p(2, 1, 3), 0);
  EXPECT_EQ(f_p(2, 1, 2), 1);
  for (int a = 0; a < 20; ++a)
    for (int p : {2, 3, 5, 7})
      EXPECT_EQ(f_p(a, 0, p), 1);
  EXPECT_EQ(f_p(4, 0, 2, 0), 0);
  // 7 = 111_2 contains 1, 2, 3 (two digits) but not 4 (same top index)
  EXPECT_EQ(f_p(6, 3, 2), 1);
  EXPECT_EQ(f_p(6, 4, 2), 0);
  EXPECT_THROW(f_p(3, 1, 4), ValidationError);
}

TEST(Hecke, ConstantTermSeeds) {
  auto c = pkl_constant_terms({Side::s, 5}, 2);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[D(5)], 1);
  EXPECT_EQ(c[D(3)], 1);
  EXPECT_EQ(c[D(1)], 0);

  auto one = pkl_constant_terms({Side::s, 1}, 7);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[D(1)], 1);

  auto t3 = pkl_constant_terms({Side::t, 3}, 3);
  ASSERT_EQ(t3.size(), 2u);
  EXPECT_EQ(t3[D(3, Side::t)], 1);
  EXPECT_EQ(t3[D(1, Side::t)], 0);
}

TEST(Hecke, KLTrivialCases) {
  KLTable e = kl_char0(AffineElement(3));
  ASSERT_EQ(e.h.size(), 1u);
  EXPECT_EQ(e.h.at(AffineElement(3)), LaurentPoly(1));

  KLTable s = kl_char0(D(1));
  EXPECT_EQ(s.h.at(AffineElement(2)), V(1));
  EXPECT_EQ(s.h.at(D(1)), LaurentPoly(1));
}

TEST(Hecke, DihedralKLAreMonomials) {
  for (int k = 1; k <= 12; ++k)
    for (Side side : {Side::s, Side::t}) {
      AffineElement w = D(k, side);
      KLTable t = kl_char0(w);
      EXPECT_EQ(static_cast<int>(t.h.size()), 2 * k);
      for (auto const& [x, h] : t.h)
        EXPECT_EQ(h, V(k - length(x))) << label(x) << " under " << label(w);
    }
}

TEST(Hecke, KLMatchesMuRecursion) {
  for (int l = 2; l <= 4; ++l) {
    int radius = l == 2 ? 12 : (l == 3 ? 6 : 5);
    oracle::MuRecursion mu(l);
    for (auto const& [w, d] : oracle::ball(l, radius)) {
      KLTable t = kl_char0(w);
      EXPECT_EQ(oracle::Expansion(t.h.begin(), t.h.end()), mu.C(w)) << label(w);
    }
  }
}

TEST(Hecke, KLBarInvariant) {
  for (int k = 0; k <= 8; ++k)
    for (Side side : {Side::s, Side::t}) {
      KLTable t = kl_char0(D(k, side));
      oracle::Expansion c(t.h.begin(), t.h.end());
      EXPECT_EQ(oracle::bar(c), c);
    }
  for (auto const& [w, d] : oracle::ball(3, 4)) {
    KLTable t = kl_char0(w);
    oracle::Expansion c(t.h.begin(), t.h.end());
    EXPECT_EQ(oracle::bar(c), c) << label(w);
  }
}

TEST(Hecke, KLIndependentOfReducedWord) {
  // s1 s2 s1 = s2 s1 s2 and s0 s1 s0 = s1 s0 s1 in W_3
  std::vector<std::pair<Word, Word>> pairs{{{1, 2, 1}, {2, 1, 2}}, {{0, 1, 0, 2}, {1, 0, 1, 2}}};
  for (auto const& [a, b] : pairs) {
    AffineElement w = eval_word(a, 3);
    ASSERT_EQ(w, eval_word(b, 3));
    KLTable ta = kl_char0(w, &a), tb = kl_char0(w, &b);
    EXPECT_EQ(ta.h, tb.h);
    EXPECT_EQ(resubstitute(ta), bott_samelson(a, 3));
    EXPECT_EQ(resubstitute(tb), bott_samelson(b, 3));
  }
}

TEST(Hecke, ResubstitutionReproducesExpansion) {
  for (int l = 2; l <= 4; ++l) {
    int radius = l == 2 ? 10 : (l == 3 ? 6 : 4);
    for (auto const& [w, d] : oracle::ball(l, radius)) {
      KLTable t = kl_char0(w);
      EXPECT_EQ(resubstitute(t), bott_samelson(t.word, l)) << label(w);
      for (auto const& [y, a] : t.aux) {
        EXPECT_TRUE(is_self_dual(a));
        EXPECT_TRUE(a.has_nonnegative_coefficients());
      }
      for (auto const& [x, h] : t.h)
        if (x != w)
          EXPECT_TRUE(h.exponents_at_least(1));
    }
  }
}

TEST(Hecke, PKLSmallCases) {
  KLTable one = pkl_dihedral({Side::s, 1}, 2);
  EXPECT_EQ(one.h, kl_char0(D(1)).h);

  KLTable t3 = pkl_dihedral({Side::s, 3}, 2);
  EXPECT_EQ(t3.h.at(D(1)).constant_term(), 1);
  EXPECT_EQ(t3.h.at(D(1)), LaurentPoly(1) + V(2));
  EXPECT_EQ(t3.h.at(D(1, Side::t)), V(2));

  KLTable t5 = pkl_dihedral({Side::s, 5}, 2);
  EXPECT_EQ(resubstitute(t5), bott_samelson(dihedral_word({Side::s, 5}), 2));
  for (auto const& [x, h] : t5.h) {
    EXPECT_TRUE(h.in_polynomial_ring());
    EXPECT_TRUE(h.has_nonnegative_coefficients());
  }
  for (auto const& [y, a] : t5.aux) {
    EXPECT_TRUE(is_self_dual(a));
    EXPECT_TRUE(a.has_nonnegative_coefficients());
  }
}

TEST(Hecke, PKLMatchesCharZeroForLargePrimes) {
  for (int k = 1; k <= 10; ++k)
    for (int p : {11, 13})
      for (Side side : {Side::s, Side::t}) {
        ASSERT_GE(p, k);
        EXPECT_EQ(pkl_dihedral({side, k}, p).h, kl_char0(D(k, side)).h) << k << " p=" << p;
      }
}

TEST(Hecke, PKLResubstitutionAllSmallPrimes) {
  for (int p : {2, 3, 5, 7})
    for (int k = 1; k <= 12; ++k) {
      KLTable t = pkl_dihedral({Side::t, k}, p);
      EXPECT_EQ(resubstitute(t), bott_samelson(t.word, 2)) << k << " p=" << p;
      for (auto const& [x, h] : t.h)
        EXPECT_TRUE(h.has_nonnegative_coefficients() && h.in_polynomial_ring());
    }
}

TEST(Hecke, PositiveCharacteristicNeedsLevelTwo) {
  EXPECT_THROW(kl_table(AffineElement(3), 3), UnsupportedError);
  EXPECT_THROW(kl_table(AffineElement(2), 4), ValidationError);
  EXPECT_THROW(pkl_dihedral({Side::s, 2}, 0), ValidationError);
}
