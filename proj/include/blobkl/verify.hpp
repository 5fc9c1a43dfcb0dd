#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "alcove.hpp"
#include "corpus.hpp"
#include "dihedral_blob.hpp"
#include "hecke.hpp"

namespace blobkl {

struct SuiteOptions {
  std::uint64_t seed = 42;
  int instances = 200;
  int jobs = 1;          // 0 = one per hardware thread
  int max_e = 12;
  int max_length = 10;   // blob-vs-soergel sweep
};

struct InstanceResult {
  bool pass = true;
  std::string detail;                 // dump for failures
  std::vector<std::string> findings;  // reported, never counted as failures
  std::int64_t checks = 0;
};

struct SuiteReport {
  std::string suite;
  int version = 1;
  std::uint64_t seed = 0;
  int instances = 0;
  int passed = 0;
  std::int64_t checks = 0;
  std::vector<std::pair<int, std::string>> failures;  // (instance index, dump)
  std::vector<std::pair<int, std::string>> findings;

  bool ok() const { return passed == instances; }

  /// e.g. "200/200 equal"
  std::string summary() const {
    return std::to_string(passed) + "/" + std::to_string(instances) + " equal";
  }
};

namespace detail {

// Runs f(i) for i in [0, count) on `jobs` threads; results land by index, so
// the outcome does not depend on scheduling.
inline std::vector<InstanceResult> run_indexed(int count, int jobs, std::function<InstanceResult(int)> const& f) {
  std::vector<InstanceResult> out(static_cast<std::size_t>(count));
  if (jobs <= 0)
    jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max(count, 1));
  auto guarded = [&](int i) {
    try {
      out[i] = f(i);
    } catch (Error const& e) {
      out[i].pass = false;
      out[i].detail = std::string("exception: ") + e.what();
    }
  };
  if (jobs == 1) {
    for (int i = 0; i < count; ++i)
      guarded(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++)
        guarded(i);
    });
  for (auto& t : pool)
    t.join();
  return out;
}

inline SuiteReport collect(std::string suite, int version, SuiteOptions const& opt,
                           std::vector<InstanceResult> const& results) {
  SuiteReport r;
  r.suite = std::move(suite);
  r.version = version;
  r.seed = opt.seed;
  r.instances = static_cast<int>(results.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    auto const& x = results[i];
    r.checks += x.checks;
    if (x.pass)
      ++r.passed;
    else
      r.failures.emplace_back(static_cast<int>(i), x.detail);
    for (auto const& f : x.findings)
      r.findings.emplace_back(static_cast<int>(i), f);
  }
  return r;
}

// Brute-force Bott-Samelson expansion: sum over all 01-subsequences, each
// unused letter contributing +1 if it would have gone up and -1 otherwise.
inline std::map<AffineElement, LaurentPoly> bs_by_subsequences(Word const& word, int l) {
  std::map<AffineElement, LaurentPoly> out;
  std::size_t k = word.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
    AffineElement x(l);
    int deg = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask >> j & 1)
        x = x.times_simple(word[j]);
      else
        deg += x.has_right_descent(word[j]) ? -1 : 1;
    }
    out[x] += LaurentPoly::monomial(deg);
  }
  std::erase_if(out, [](auto const& kv) { return kv.second.is_zero(); });
  return out;
}

inline bool same_expansion(HeckeElement const& h, std::map<AffineElement, LaurentPoly> const& m) {
  if (h.support().size() != m.size())
    return false;
  for (auto const& [x, c] : m)
    if (h.coeff(x) != c)
      return false;
  return true;
}

} // namespace detail

// ---------------------------------------------------------------------------
// Suites

/// Graded cell dimensions against Bott-Samelson coefficients, every mu where
/// either side is nonzero, over the seeded random corpus.
inline SuiteReport suite_theorem_graded_dim(SuiteOptions const& opt) {
  RandomCorpusSpec spec;
  spec.max_e = opt.max_e;
  auto results = detail::run_indexed(opt.instances, opt.jobs, [&](int i) {
    InstanceResult r;
    Instance inst = random_instance(opt.seed, static_cast<std::uint64_t>(i), spec);
    for (auto const& [mu, rep] : verify_graded_dim_all(inst.lambda, inst.params)) {
      ++r.checks;
      if (!rep.equal) {
        r.pass = false;
        r.detail += inst.str() + " mu=" + mu.str() + " cells=" + rep.lhs.to_tex() + " hecke=" + rep.rhs.to_tex() + "; ";
      }
    }
    return r;
  });
  return detail::collect("theorem-graded-dim", 1, opt, results);
}

namespace detail {

// One sweep group shares a decomposer per prime: all weights of the same
// parameters and size.
inline InstanceResult blob_vs_soergel_item(DihedralSweepItem const& item, BlobDecomposer& dec) {
  InstanceResult r;
  std::string where = "e=" + std::to_string(item.params.e) + " kappa=" + join(item.params.kappa) +
                      " lambda=" + item.lambda.str() + " p=" + std::to_string(dec.p());
  auto const& table = dec.get(item.lambda);
  if (dihedral_form(table.w) != item.w) {
    r.pass = false;
    r.detail = where + " expected w = " + item.w.str() + ", got " + label(table.w);
    return r;
  }
  for (auto const& c : cross_check_pkl(table)) {
    ++r.checks;
    if (c.equal)
      continue;
    std::string msg = where + " mu=" + c.mu.str() + " (" + label(c.w) + ") blob=" + c.blob.to_tex() +
                      " pkl=" + c.hecke.to_tex();
    if (dec.p() == 2) {
      r.findings.push_back(msg);
    } else {
      r.pass = false;
      r.detail += msg + "; ";
    }
  }
  return r;
}

} // namespace detail

/// Level-two sweep, primes 2, 3, 5, 7. Mismatches at p = 2 are findings.
/// One instance is one (e, kappa, size, orbit) group at one prime.
inline SuiteReport suite_blob_vs_soergel(SuiteOptions const& opt) {
  auto items = dihedral_sweep(opt.max_e, opt.max_length);
  // group by (parameters, size): weights of one group share intermediate tables
  std::map<std::tuple<int, std::vector<int>, int>, std::vector<DihedralSweepItem>> groups;
  for (auto const& it : items)
    groups[{it.params.e, it.params.kappa, it.lambda.size()}].push_back(it);
  struct Job {
    std::vector<DihedralSweepItem> const* items;
    int p;
  };
  std::vector<Job> jobs;
  for (auto const& [key, g] : groups)
    for (int p : {2, 3, 5, 7})
      jobs.push_back({&g, p});
  auto results = detail::run_indexed(static_cast<int>(jobs.size()), opt.jobs, [&](int i) {
    InstanceResult r;
    BlobDecomposer dec(jobs[i].items->front().params, jobs[i].p);
    for (auto const& item : *jobs[i].items) {
      auto one = detail::blob_vs_soergel_item(item, dec);
      r.checks += one.checks;
      r.pass = r.pass && one.pass;
      r.detail += one.detail;
      r.findings.insert(r.findings.end(), one.findings.begin(), one.findings.end());
    }
    return r;
  });
  return detail::collect("blob-vs-soergel", 1, opt, results);
}

namespace detail {

inline Instance random_dihedral(std::uint64_t seed, int i, int max_e, int max_n) {
  RandomCorpusSpec spec;
  spec.levels = {2};
  spec.max_e = max_e;
  spec.max_n = max_n;
  return random_instance(seed, static_cast<std::uint64_t>(i), spec);
}

} // namespace detail

/// Decomposition numbers in Z>=0[v], simple dimensions bar-invariant and
/// nonnegative, level-two tableau degrees nonnegative.
inline SuiteReport suite_positivity(SuiteOptions const& opt) {
  auto results = detail::run_indexed(opt.instances, opt.jobs, [&](int i) {
    InstanceResult r;
    Instance inst = detail::random_dihedral(opt.seed, i, opt.max_e, 60);
    static constexpr int primes[] = {2, 3, 5, 7};
    int p = primes[i % 4];
    auto fail = [&](std::string const& what) {
      r.pass = false;
      r.detail += inst.str() + " p=" + std::to_string(p) + ": " + what + "; ";
    };
    for (auto const& t : enumerate_std_same_residue(inst.lambda, inst.params)) {
      ++r.checks;
      if (tableau_degree(t, inst.params) < 0)
        fail("negative degree for " + t.str());
    }
    for (auto const& e : blob_graded_decomposition(inst.lambda, inst.params, p).entries) {
      r.checks += 2;
      if (!e.d.in_polynomial_ring() || !e.d.has_nonnegative_coefficients())
        fail("d at " + e.mu.str() + " = " + e.d.to_tex());
      if (!is_self_dual(e.simple_dim) || !e.simple_dim.has_nonnegative_coefficients())
        fail("simple dimension at " + e.mu.str() + " = " + e.simple_dim.to_tex());
    }
    return r;
  });
  return detail::collect("positivity", 1, opt, results);
}

/// Hecke side: sum of complements times KL polynomials gives back the
/// Bott-Samelson expansion. Blob side: sum of d times simple dimensions gives
/// back the cell dimensions.
inline SuiteReport suite_resubstitution(SuiteOptions const& opt) {
  auto results = detail::run_indexed(opt.instances, opt.jobs, [&](int i) {
    InstanceResult r;
    CorpusRng rng(opt.seed, static_cast<std::uint64_t>(i));
    // Hecke side: a random element of W_2 (char p) or W_3 (char 0)
    int l = i % 2 == 0 ? 2 : 3;
    int p = l == 2 ? std::array<int, 4>{0, 2, 3, 5}[static_cast<std::size_t>(rng.uniform(0, 3))] : 0;
    Word word;
    for (int k = rng.uniform(0, l == 2 ? 12 : 7); k > 0; --k)
      word.push_back(rng.uniform(0, l - 1));
    AffineElement w = eval_word(word, l);
    KLTable t = kl_table(w, p);
    ++r.checks;
    if (resubstitute(t) != bott_samelson(t.word, l)) {
      r.pass = false;
      r.detail += "KL table of " + label(w) + " at p=" + std::to_string(p) + " does not resubstitute; ";
    }
    // blob side
    Instance inst = detail::random_dihedral(opt.seed ^ 0x9e3779b97f4a7c15ULL, i, opt.max_e, 60);
    BlobDecomposer dec(inst.params, p == 0 ? 3 : p);
    auto const& table = dec.get(inst.lambda);
    for (auto const& e : table.entries) {
      ++r.checks;
      if (resubstitute_cell_dim(dec, table, e.mu) != e.cell_dim) {
        r.pass = false;
        r.detail += inst.str() + " mu=" + e.mu.str() + " does not resubstitute; ";
      }
    }
    return r;
  });
  return detail::collect("resubstitution", 1, opt, results);
}

/// Fast level-two degree formula against the definition, exhaustively over
/// each instance's enumeration (n <= 40).
inline SuiteReport suite_degree_formula(SuiteOptions const& opt) {
  auto results = detail::run_indexed(opt.instances, opt.jobs, [&](int i) {
    InstanceResult r;
    Instance inst = detail::random_dihedral(opt.seed, i, opt.max_e, 40);
    for (auto const& t : enumerate_std_same_residue(inst.lambda, inst.params)) {
      ++r.checks;
      int slow = tableau_degree(t, inst.params), fast = fast_degree(t, inst.lambda, inst.params);
      if (slow != fast) {
        r.pass = false;
        r.detail += inst.str() + " t=" + t.str() + " deg=" + std::to_string(slow) + " fast=" + std::to_string(fast) + "; ";
      }
    }
    return r;
  });
  return detail::collect("degree-formula", 1, opt, results);
}

/// Bott-Samelson expansion against the subsequence sum: every word of length
/// <= 10 in W_2 (one instance per length), then random words in W_3 and W_4.
inline SuiteReport suite_bs_oracle(SuiteOptions const& opt) {
  int exhaustive = 11;
  auto results = detail::run_indexed(exhaustive + opt.instances, opt.jobs, [&](int i) {
    InstanceResult r;
    if (i < exhaustive) {
      int len = i;
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
        Word word;
        for (int j = 0; j < len; ++j)
          word.push_back(static_cast<int>(mask >> j & 1));
        ++r.checks;
        if (!detail::same_expansion(bott_samelson(word, 2), detail::bs_by_subsequences(word, 2))) {
          r.pass = false;
          r.detail += "l=2 word " + word_string(word) + "; ";
        }
      }
      return r;
    }
    CorpusRng rng(opt.seed, static_cast<std::uint64_t>(i));
    int l = rng.uniform(3, 4);
    Word word;
    for (int k = rng.uniform(0, 10); k > 0; --k)
      word.push_back(rng.uniform(0, l - 1));
    ++r.checks;
    if (!detail::same_expansion(bott_samelson(word, l), detail::bs_by_subsequences(word, l))) {
      r.pass = false;
      r.detail = "l=" + std::to_string(l) + " word " + word_string(word);
    }
    return r;
  });
  return detail::collect("bs-oracle", 1, opt, results);
}

inline std::vector<std::string> suite_names() {
  return {"theorem-graded-dim", "blob-vs-soergel", "positivity", "resubstitution", "degree-formula", "bs-oracle"};
}

inline SuiteReport run_suite(std::string const& name, SuiteOptions const& opt) {
  if (opt.instances < 0)
    throw ValidationError("--instances must be nonnegative");
  if (name == "theorem-graded-dim")
    return suite_theorem_graded_dim(opt);
  if (name == "blob-vs-soergel")
    return suite_blob_vs_soergel(opt);
  if (name == "positivity")
    return suite_positivity(opt);
  if (name == "resubstitution")
    return suite_resubstitution(opt);
  if (name == "degree-formula")
    return suite_degree_formula(opt);
  if (name == "bs-oracle")
    return suite_bs_oracle(opt);
  std::string known;
  for (auto const& s : suite_names())
    known += (known.empty() ? "" : ", ") + s;
  throw ValidationError("--suite: unknown suite '" + name + "' (known: " + known + ")");
}

} // namespace blobkl
