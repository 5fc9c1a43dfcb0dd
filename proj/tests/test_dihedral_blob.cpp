#include <gtest/gtest.h>

#include <random>

#include "blobkl/dihedral_blob.hpp"
#include "oracles.hpp"

using namespace blobkl;

namespace {

BlobParams example() { return BlobParams(5, {1, 4}); }
OneColMultipartition example_lambda() { return OneColMultipartition({2, 28}); }

ColumnTableau from_path(std::string const& rl) {
  ColumnTableau t;
  for (char c : rl)
    t.components.push_back(c == 'R' ? 1 : 2);
  return t;
}

// Blue tableau of shape (4,8): entries 1,2,3,11 in the first component.
ColumnTableau blue() { return from_path("RRRLLLLLLLRL"); }

Int catalan(int m) {
  Int c = 1;
  for (int i = 0; i < m; ++i)
    c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

struct Instance {
  BlobParams params;
  OneColMultipartition lambda;
};

Instance random_regular(std::mt19937_64& rng, int max_e, int max_height) {
  while (true) {
    int e = static_cast<int>(oracle::draw(rng, 4, max_e));
    BlobParams p(e, oracle::random_kappa(rng, e, 2));
    OneColMultipartition lambda({static_cast<int>(oracle::draw(rng, 0, max_height)),
                                 static_cast<int>(oracle::draw(rng, 0, max_height))});
    if (is_regular(lambda, p))
      return {p, lambda};
  }
}

} // namespace

TEST(Pascal, Paths) {
  PascalPath p = PascalPath::of(blue());
  EXPECT_EQ(p.level(), 12);
  EXPECT_EQ(p.weights().back(), -4);
  EXPECT_EQ(p.str(), "RRRLLLLLLLRL");
  EXPECT_THROW(PascalPath::of(ColumnTableau{{1, 3}}), LevelMismatch);
}

TEST(Dihedral, FLambda) {
  EXPECT_EQ(f_lambda(example_lambda(), example()), 7);
  EXPECT_EQ(underlined_levels(example_lambda(), example()), (std::vector<int>{12, 17, 22}));
  EXPECT_EQ(hit_levels(example_lambda(), example()), (std::vector<int>{7, 12, 17, 22, 27}));
  // first component longer: the path heads right and meets c0 + e = 2 first
  EXPECT_EQ(f_lambda(OneColMultipartition({28, 2}), example()), 6);
  EXPECT_EQ(hit_levels(OneColMultipartition({28, 2}), example()).front(), 6);
  EXPECT_THROW(f_lambda(OneColMultipartition({2, 2}), example()), NotApplicable);
  EXPECT_THROW(f_lambda(OneColMultipartition({1, 4}), example()), NotRegular);
  EXPECT_THROW(f_lambda(OneColMultipartition({1, 4, 1}), BlobParams(8, {0, 2, 4})), LevelMismatch);
}

TEST(Dihedral, FLambdaAgreesWithFirstHit) {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 300; ++iter) {
    auto [p, lambda] = random_regular(rng, 12, 40);
    if (hit_levels(lambda, p).empty())
      EXPECT_THROW(f_lambda(lambda, p), NotApplicable);
    else
      EXPECT_EQ(f_lambda(lambda, p), hit_levels(lambda, p).front());
  }
}

TEST(Dihedral, WallToWallExamples) {
  auto lambda = example_lambda();
  EXPECT_TRUE(wall_to_wall_check(dominant_tableau(lambda), lambda, example()));
  auto all = enumerate_std_same_residue(lambda, example());
  EXPECT_EQ(all.size(), 32u);
  for (auto const& t : all)
    EXPECT_TRUE(wall_to_wall_check(t, lambda, example())) << t.str();
  // t^lambda with step 14 reversed, inside the run between levels 12 and 17
  ColumnTableau bent = from_path("RLRLLLLLLLLLLRLLLLLLLLLLLLLLLL");
  EXPECT_FALSE(wall_to_wall_check(bent, lambda, example()));
  EXPECT_NE(residue_sequence(bent, example()), residue_sequence(dominant_tableau(lambda), example()));
  EXPECT_FALSE(wall_to_wall_check(from_path("RL"), lambda, example()));
}

// The lemma's characterisation, checked in both directions over every path.
TEST(DihedralProperty, WallToWallIffSameResidues) {
  std::mt19937_64 rng(8);
  for (int iter = 0; iter < 12; ++iter) {
    auto [p, lambda] = random_regular(rng, 8, 8);
    int n = lambda.size();
    if (n > 15)
      continue;
    auto target = residue_sequence(dominant_tableau(lambda), p);
    for (auto const& word : oracle::all_words(2, n)) {
      ColumnTableau t{word};
      EXPECT_EQ(wall_to_wall_check(t, lambda, p), residue_sequence(t, p) == target)
          << lambda.str() << " " << t.str();
    }
  }
}

TEST(Dihedral, FastDegreeExamples) {
  auto lambda = example_lambda();
  EXPECT_EQ(fast_degree(dominant_tableau(lambda), lambda, example()), 0);
  // two crossings of the fundamental alcove, then a closing line towards 0
  ColumnTableau t = from_path("RLRLLLL" "RRRRR" "LLLLL" "LLLLL" "LLLLL" "RRR");
  EXPECT_EQ(fast_degree(t, lambda, example()), 3);
  EXPECT_EQ(tableau_degree(t, example()), 3);
  EXPECT_THROW(fast_degree(from_path("RLRLLLLLLLLLLLRLLLLLLLLLLLLLLL"), lambda, example()), ResidueMismatch);
}

TEST(DihedralProperty, FastDegreeMatchesDefinition) {
  std::mt19937_64 rng(13);
  int tableaux = 0;
  for (int iter = 0; iter < 1500; ++iter) {
    auto [p, lambda] = random_regular(rng, iter % 2 ? 12 : 6, 20);
    for (auto const& t : enumerate_std_same_residue(lambda, p)) {
      int d = tableau_degree(t, p);
      EXPECT_EQ(fast_degree(t, lambda, p), d) << lambda.str() << " " << t.str();
      EXPECT_GE(d, 0);
      ++tableaux;
    }
  }
  EXPECT_GT(tableaux, 2000);
}

TEST(Dihedral, DegreeZeroExample) {
  auto cells = degree_zero_cells(example_lambda(), example());
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].mu, example_lambda());
  EXPECT_EQ(cells[1].mu, OneColMultipartition({7, 23}));
  EXPECT_EQ(cells[2].mu, OneColMultipartition({12, 18}));
  EXPECT_EQ(dihedral_form(cells[1].w), (DihedralForm{Side::s, 3}));
  EXPECT_EQ(dihedral_form(cells[2].w), (DihedralForm{Side::s, 1}));
  std::vector<std::size_t> counts;
  Int squares = 0;
  for (auto const& c : cells) {
    counts.push_back(c.tableaux.size());
    squares += c.tableaux.size() * c.tableaux.size();
    for (auto const& t : c.tableaux)
      EXPECT_EQ(tableau_degree(t, example()), 0);
  }
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 3, 2}));
  EXPECT_EQ(squares, 14);
  EXPECT_EQ(catalan(4), 14);
  EXPECT_EQ(cells[0].two_col, TwoColPartition(0, 4));
  EXPECT_EQ(cells[1].two_col, TwoColPartition(1, 2));
  EXPECT_EQ(cells[2].two_col, TwoColPartition(2, 0));
  EXPECT_EQ(cells[0].images.front().str(), "[1,2,3,4|]");
  std::set<TwoColTableau> images(cells[2].images.begin(), cells[2].images.end());
  EXPECT_EQ(images, (std::set<TwoColTableau>{{{1, 2}, {3, 4}}, {{1, 3}, {2, 4}}}));
}

TEST(Dihedral, DegreeZeroShortWords) {
  // w = 1_s: only t^lambda
  OneColMultipartition lambda({2, 7});
  ASSERT_EQ(dihedral_form(w_of(lambda, example())).k, 1);
  auto cells = degree_zero_cells(lambda, example());
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0].tableaux, std::vector<ColumnTableau>{dominant_tableau(lambda)});
  EXPECT_EQ(cells[0].two_col, TwoColPartition(0, 0));
  // k = 2: a single cell too
  OneColMultipartition mu({2, 12});
  ASSERT_EQ(dihedral_form(w_of(mu, example())).k, 2);
  EXPECT_EQ(degree_zero_cells(mu, example()).size(), 1u);
}

TEST(DihedralProperty, DegreeZeroCountsAreCatalan) {
  std::mt19937_64 rng(19);
  std::set<int> lengths;
  for (int iter = 0; iter < 150; ++iter) {
    auto [p, lambda] = random_regular(rng, 6, 40);
    int k = dihedral_form(w_of(lambda, p)).k;
    if (k < 1 || k > 10)
      continue;
    lengths.insert(k);
    Int squares = 0;
    for (auto const& c : degree_zero_cells(lambda, p))
      squares += c.tableaux.size() * c.tableaux.size();
    EXPECT_EQ(squares, catalan(k - 1)) << lambda.str();
  }
  EXPECT_GE(lengths.size(), 8u);
}

TEST(Dihedral, HookWordsOfBlueTableau) {
  OneColMultipartition lambda({4, 8});
  auto high = d_tableau_word(blue(), lambda, example());
  auto low = d_tableau_word(blue(), lambda, example(), HookStrategy::lowest_first);
  EXPECT_EQ(high, (Word{10, 9, 8, 7, 3, 4, 2}));
  EXPECT_EQ(low, (Word{3, 2, 4, 10, 9, 8, 7}));
  EXPECT_EQ(permutation_of(high, 12), permutation_of(low, 12));
  EXPECT_EQ(permutation_length(permutation_of(high, 12)), 7);
  EXPECT_EQ(act_on_entries(high, dominant_tableau(lambda)), blue());
  EXPECT_TRUE(d_tableau_word(dominant_tableau(lambda), lambda, example()).empty());
  EXPECT_THROW(d_tableau_word(blue(), OneColMultipartition({5, 7}), example()), ShapeMismatch);
}

TEST(DihedralProperty, HookWordsAreReducedAndAgree) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 1500; ++iter) {
    int n = static_cast<int>(oracle::draw(rng, 1, 24));
    auto word = oracle::random_word(rng, 2, n);
    ColumnTableau t;
    for (int c : word)
      t.components.push_back(c + 1);
    auto lambda = t.shape(2);
    auto high = d_tableau_word(t, lambda, example());
    auto low = d_tableau_word(t, lambda, example(), HookStrategy::lowest_first);
    EXPECT_EQ(high.size(), low.size());
    EXPECT_EQ(permutation_of(high, n), permutation_of(low, n));
    EXPECT_EQ(permutation_length(permutation_of(high, n)), static_cast<int>(high.size()));
    EXPECT_EQ(act_on_entries(low, dominant_tableau(lambda)), t);
  }
}

TEST(TemperleyLieb, Entries) {
  auto t = tl_decomposition(4, 2);
  EXPECT_EQ(t.at({1, 2}, {0, 4}), 1);
  EXPECT_EQ(t.at({2, 0}, {0, 4}), 0);
  EXPECT_EQ(t.at({0, 4}, {1, 2}), 0);
  for (auto const& a : two_col_partitions(4))
    EXPECT_EQ(t.at(a, a), 1);
  EXPECT_THROW(tl_decomposition(4, 4), ValidationError);
  EXPECT_THROW(t.at({3, 0}, {0, 4}), IndexError);
  EXPECT_EQ(TwoColPartition(2, 1).str(), "(2^2,1^1)");
}

TEST(TemperleyLieb, LargePrimeIsIdentity) {
  for (int n = 0; n <= 12; ++n)
    for (int p : {2, 3, 5, 7, 11, 13, 17}) {
      auto t = tl_decomposition(n, p);
      for (auto const& [key, v] : t.entries) {
        EXPECT_TRUE(v == 0 || v == 1);
        if (p > n + 1)
          EXPECT_EQ(v, key.first == key.second ? 1 : 0) << n << " " << p;
      }
    }
}

TEST(TemperleyLieb, BallotCounts) {
  EXPECT_EQ(count_std_two_col({0, 4}), 1);
  EXPECT_EQ(count_std_two_col({1, 2}), 3);
  EXPECT_EQ(count_std_two_col({2, 0}), 2);
  EXPECT_EQ(count_std_two_col({3, 1}), 14);
}

TEST(BlobDecomposition, Trivial) {
  auto table = blob_graded_decomposition(example_lambda(), example(), 3);
  ASSERT_FALSE(table.entries.empty());
  EXPECT_EQ(table.entries.front().mu, example_lambda());
  EXPECT_EQ(table.entries.front().d, LaurentPoly(1));
  EXPECT_EQ(table.entries.front().simple_dim, LaurentPoly(1));
  EXPECT_THROW(blob_graded_decomposition(example_lambda(), example(), 4), ValidationError);
  EXPECT_THROW(blob_graded_decomposition(OneColMultipartition({1, 4}), example(), 3), NotRegular);
}

TEST(BlobDecomposition, ExampleAgainstPKL) {
  for (int p : {2, 3, 5, 7}) {
    auto table = blob_graded_decomposition(example_lambda(), example(), p);
    EXPECT_EQ(table.entries.size(), 10u);
    for (auto const& c : cross_check_pkl(table))
      EXPECT_TRUE(c.equal) << "p=" << p << " " << c.mu.str() << " " << c.blob << " vs " << c.hecke;
  }
  auto table = blob_graded_decomposition(example_lambda(), example(), 2);
  auto mu = table.find(OneColMultipartition({7, 23}));
  ASSERT_NE(mu, nullptr);
  EXPECT_EQ(mu->d, kl_poly(from_dihedral({Side::s, 3}), from_dihedral({Side::s, 5}), 2));
}

TEST(BlobDecomposition, CharacteristicZeroMatchesKL) {
  std::mt19937_64 rng(37);
  for (int iter = 0; iter < 60; ++iter) {
    auto [p, lambda] = random_regular(rng, 8, 40);
    auto table = blob_graded_decomposition(lambda, p, 0);
    int k = length(table.w);
    for (auto const& e : table.entries) {
      EXPECT_EQ(e.d, kl_poly(e.w, table.w, 0));
      EXPECT_EQ(e.d, LaurentPoly::monomial(k - length(e.w)));
    }
    // a prime above the length sees no torsion
    auto big = blob_graded_decomposition(lambda, p, 11);
    for (std::size_t i = 0; i < big.entries.size(); ++i)
      EXPECT_EQ(big.entries[i].d, table.entries[i].d);
  }
}

TEST(BlobDecompositionProperty, PositivityAndResubstitution) {
  std::mt19937_64 rng(41);
  int checked = 0;
  for (int iter = 0; iter < 80; ++iter) {
    auto [params, lambda] = random_regular(rng, 10, 45);
    for (int p : {2, 3, 5, 7}) {
      BlobDecomposer dec(params, p);
      auto const& table = dec.get(lambda);
      for (auto const& e : table.entries) {
        EXPECT_TRUE(e.d.in_polynomial_ring() && e.d.has_nonnegative_coefficients());
        EXPECT_TRUE(is_self_dual(e.simple_dim) && e.simple_dim.has_nonnegative_coefficients());
        EXPECT_EQ(e.d.constant_term(), e.seed);
        EXPECT_EQ(resubstitute_cell_dim(dec, table, e.mu), e.cell_dim);
        ++checked;
      }
      if (p != 2)
        for (auto const& c : cross_check_pkl(table))
          EXPECT_TRUE(c.equal) << params.e << " " << join(params.kappa) << " " << lambda.str() << " p=" << p;
    }
  }
  EXPECT_GT(checked, 500);
}
