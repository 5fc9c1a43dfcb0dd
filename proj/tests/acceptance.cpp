// One PASS/FAIL line per acceptance criterion, with wall time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <blobkl/blobkl.hpp>

using namespace blobkl;

namespace {

struct Outcome {
  bool pass = false;
  std::string note;
};

int failures = 0;

void criterion(int id, char const* title, double limit_s, std::function<Outcome()> const& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (std::exception const& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && s >= limit_s) {
    o.pass = false;
    o.note += " [over the " + std::to_string(static_cast<int>(limit_s)) + " s limit]";
  }
  failures += o.pass ? 0 : 1;
  std::printf("%s  %2d  %-44s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", id, title, s, o.note.c_str());
  std::fflush(stdout);
}

Outcome from_report(SuiteReport const& r) {
  std::string note = r.summary() + ", " + std::to_string(r.checks) + " checks";
  if (!r.findings.empty())
    note += ", " + std::to_string(r.findings.size()) + " findings";
  for (std::size_t i = 0; i < r.failures.size() && i < 3; ++i)
    note += "; #" + std::to_string(r.failures[i].first) + ": " + r.failures[i].second;
  return {r.ok(), note};
}

SuiteOptions options(int instances) {
  SuiteOptions o;
  o.seed = 42;
  o.instances = instances;
  o.jobs = 0;
  return o;
}

template <class T>
std::string show(std::vector<T> const& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ")";
  return os.str();
}

ColumnTableau from_path(std::string const& rl) {
  ColumnTableau t;
  for (char c : rl)
    t.components.push_back(c == 'R' ? 1 : 2);
  return t;
}

} // namespace

int main() {
  BlobParams ex3(8, {0, 2, 4, 6});
  OneColMultipartition lam3({1, 13, 1, 8}), mu3({5, 5, 6, 7});
  BlobParams ex5(5, {1, 4});
  OneColMultipartition lam5({2, 28});

  criterion(1, "worked example: residues, degree, |Std|", 1.0, [&] {
    std::string il = show(residue_sequence(dominant_tableau(lam3), ex3));
    std::string im = show(residue_sequence(dominant_tableau(mu3), ex3));
    ColumnTableau t{{1, 2, 3, 4, 2, 4, 2, 4, 1, 3, 1, 3, 1, 3, 1, 3, 4, 2, 4, 4, 4, 3, 2}};
    int deg = tableau_degree(t, ex3);
    auto all = enumerate_std_same_residue(lam3, ex3);
    bool ok = il == "(0,2,4,6,1,5,0,4,7,3,6,2,5,1,4,0,3,7,2,1,0,7,6)" &&
              im == "(0,2,4,6,7,1,3,5,6,0,2,4,5,7,1,3,4,6,0,2,7,1,0)" && deg == 6 && all.size() == 64 &&
              t.shape(4) == mu3;
    return Outcome{ok, "deg(t) = " + std::to_string(deg) + ", |Std| = " + std::to_string(all.size())};
  });

  criterion(2, "alcove: hyperplanes, hit levels, word", 0, [&] {
    auto seq = hyperplane_sequence(lam3, ex3);
    std::vector<int> levels;
    std::string planes;
    for (auto const& h : seq) {
      levels.push_back(h.level);
      planes += h.plane.str() + " ";
    }
    std::string word = word_string(principal_word(lam3, ex3));
    int len = length(w_of(lam3, ex3));
    bool ok = show(levels) == "(7,8,15,16,21,22)" &&
              planes == "h^0_{1,2} h^0_{3,4} h^1_{2,3} h^0_{1,4} h^-1_{1,2} h^1_{2,4} " &&
              word == "s1 s3 s0 s2 s3 s2" && len == 6;
    return Outcome{ok, word + ", length " + std::to_string(len)};
  });

  criterion(3, "graded dimension theorem, seeded corpus", 60.0,
            [] { return from_report(run_suite("theorem-graded-dim", options(200))); });

  criterion(4, "level-two example: 5_s, f, degree zero", 0, [&] {
    auto w = dihedral_form(w_of(lam5, ex5));
    int f = f_lambda(lam5, ex5);
    auto under = underlined_levels(lam5, ex5);
    auto cells = degree_zero_cells(lam5, ex5);
    std::vector<std::size_t> counts;
    std::size_t squares = 0;
    for (auto const& c : cells) {
      counts.push_back(c.tableaux.size());
      squares += c.tableaux.size() * c.tableaux.size();
    }
    bool ok = w.str() == "5s" && f == 7 && show(under) == "(12,17,22)" && show(counts) == "(1,3,2)" && squares == 14;
    return Outcome{ok, "w = " + w.str() + ", f = " + std::to_string(f) + ", counts " + show(counts) +
                           ", sum of squares " + std::to_string(squares)};
  });

  criterion(5, "hook algorithm on the blue tableau", 0, [&] {
    OneColMultipartition lambda({4, 8});
    ColumnTableau blue = from_path("RRRLLLLLLLRL");
    Word high = d_tableau_word(blue, lambda, ex5, HookStrategy::highest_first);
    Word low = d_tableau_word(blue, lambda, ex5, HookStrategy::lowest_first);
    Word ref{10, 9, 8, 7, 3, 4, 2};
    auto perm = permutation_of(high, 12);
    bool ok = high.size() == 7 && permutation_length(perm) == 7 && perm == permutation_of(ref, 12) &&
              perm == permutation_of(low, 12) && act_on_entries(high, dominant_tableau(lambda)) == blue;
    return Outcome{ok, word_string(high) + " / " + word_string(low)};
  });

  criterion(6, "Bott-Samelson against 01-subsequences", 0,
            [] { return from_report(run_suite("bs-oracle", options(100))); });

  criterion(7, "fast degree formula, n <= 40", 0,
            [] { return from_report(run_suite("degree-formula", options(500))); });

  criterion(8, "blob vs Soergel sweep, p in {2,3,5,7}", 120.0, [] {
    auto o = options(0);
    o.max_e = 12;
    o.max_length = 10;
    return from_report(run_suite("blob-vs-soergel", o));
  });

  criterion(9, "re-substitution, Hecke and blob sides", 0, [] {
    Outcome o = from_report(run_suite("resubstitution", options(500)));
    // every level-two table up to length 10 as well
    int tables = 0;
    for (int p : {0, 2, 3, 5, 7})
      for (int k = 0; k <= 10; ++k)
        for (Side s : {Side::s, Side::t}) {
          DihedralForm d = k == 0 ? DihedralForm{} : DihedralForm{s, k};
          KLTable t = kl_table(from_dihedral(d), p);
          ++tables;
          if (resubstitute(t) != bott_samelson(t.word, 2)) {
            o.pass = false;
            o.note += "; table " + d.str() + " p=" + std::to_string(p) + " fails";
          }
        }
    o.note += ", plus " + std::to_string(tables) + " level-two tables";
    return o;
  });

  criterion(10, "positivity and bar invariance", 0,
            [] { return from_report(run_suite("positivity", options(500))); });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
