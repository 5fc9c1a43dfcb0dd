#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "affine_weyl.hpp"
#include "alcove.hpp"
#include "blob_comb.hpp"

namespace blobkl {

/// Deterministic stream for instance `index` of a corpus with the given seed.
/// Each instance gets its own stream, so instance i does not depend on how
/// many instances are requested.
class CorpusRng {
public:
  CorpusRng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    gen_.seed(seq);
  }

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

  std::mt19937_64& engine() { return gen_; }

private:
  std::mt19937_64 gen_;
};

struct Instance {
  BlobParams params;
  OneColMultipartition lambda;

  std::string str() const {
    return "l=" + std::to_string(params.l) + " e=" + std::to_string(params.e) + " kappa=" + join(params.kappa) +
           " lambda=" + lambda.str();
  }
};

/// Increasing adjacency-free multicharge with entries in [0, e), by rejection.
inline std::vector<int> random_kappa(CorpusRng& rng, int e, int l) {
  while (true) {
    std::set<int> pick;
    while (static_cast<int>(pick.size()) < l)
      pick.insert(rng.uniform(0, e - 1));
    std::vector<int> k(pick.begin(), pick.end());
    bool ok = true;
    for (int i = 0; i < l && ok; ++i) {
      int gap = i + 1 < l ? k[i + 1] - k[i] : k[0] + e - k[i];
      ok = gap >= 2;
    }
    if (ok)
      return k;
  }
}

/// Heights filled in a random component order, each drawn from what is left
/// of the budget, so lopsided multipartitions are common.
inline std::vector<int> random_heights(CorpusRng& rng, int l, int max_n) {
  std::vector<int> order(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i)
    order[i] = i;
  std::shuffle(order.begin(), order.end(), rng.engine());
  std::vector<int> h(static_cast<std::size_t>(l), 0);
  int left = rng.uniform(1, max_n);
  for (int i : order) {
    h[i] = rng.uniform(0, left);
    left -= h[i];
  }
  return h;
}

struct RandomCorpusSpec {
  std::vector<int> levels{2, 3, 4};
  int max_e = 12;
  int max_n = 30;
};

/// Instance `index` of the seeded corpus: a regular lambda of size <= max_n.
inline Instance random_instance(std::uint64_t seed, std::uint64_t index, RandomCorpusSpec const& spec = {}) {
  CorpusRng rng(seed, index);
  while (true) {
    int l = spec.levels[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(spec.levels.size()) - 1))];
    if (2 * l > spec.max_e)
      throw ValidationError("max e = " + std::to_string(spec.max_e) + " is below 2l for l = " + std::to_string(l));
    // small e gives long words; draw the upper end first so they are common
    int e = rng.uniform(2 * l, rng.uniform(2 * l, spec.max_e));
    BlobParams params(e, random_kappa(rng, e, l));
    OneColMultipartition lambda(random_heights(rng, l, spec.max_n));
    if (lambda.size() > 0 && is_regular(lambda, params))
      return {params, lambda};
  }
}

/// Level-two sweep: every e in [4, max_e], every multicharge (0, d) up to
/// translation, every regular orbit (base weight b strictly inside A_0) and
/// every w with 1 <= length(w) <= max_length. Each (orbit, w) gives two
/// weights: the smallest one, and one large enough that every orbit point of
/// length <= max_length is a bipartition of the same size.
struct DihedralSweepItem {
  BlobParams params;
  OneColMultipartition lambda;
  DihedralForm w;
};

inline std::vector<DihedralSweepItem> dihedral_sweep(int max_e, int max_length) {
  std::vector<DihedralSweepItem> out;
  for (int e = 4; e <= max_e; ++e)
    for (int d = 2; d <= e - 2; ++d) {
      BlobParams params(e, {0, d});
      int c0 = -d;
      for (int b = c0 + 1; b < c0 + e; ++b) {
        std::vector<std::pair<DihedralForm, long long>> weights;
        long long widest = 0;
        for (int k = 1; k <= max_length; ++k)
          for (Side side : {Side::s, Side::t}) {
            DihedralForm w{side, k};
            Point y = detail::act_on_point(dihedral_word(w), Point{b, 0}, params);
            long long x = y[0] - y[1];
            weights.emplace_back(w, x);
            widest = std::max(widest, x < 0 ? -x : x);
          }
        long long full = widest + ((widest - b) % 2 != 0 ? 1 : 0);
        for (auto const& [w, x] : weights) {
          long long ax = x < 0 ? -x : x;
          std::vector<long long> sizes{ax};
          if (full != ax)
            sizes.push_back(full);
          for (long long n : sizes)
            out.push_back({params, OneColMultipartition({static_cast<int>((n + x) / 2), static_cast<int>((n - x) / 2)}), w});
        }
      }
    }
  return out;
}

} // namespace blobkl
