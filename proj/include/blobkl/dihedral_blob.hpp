#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "affine_weyl.hpp"
#include "alcove.hpp"
#include "blob_comb.hpp"
#include "errors.hpp"
#include "hecke.hpp"
#include "laurent.hpp"

namespace blobkl {

// Level-two specialisation. A tableau is read as a path in the Pascal
// triangle: entry k in component 1 is a step right (+1), in component 2 a
// step left (-1). The weight after k steps is #R - #L, i.e. x_1 - x_2.

namespace detail {

inline void require_level_two(BlobParams const& params) {
  if (params.l != 2)
    throw LevelMismatch("this operation needs l = 2, got l = " + std::to_string(params.l));
}

} // namespace detail

struct PascalPath {
  std::vector<int> steps;  // +1 or -1

  static PascalPath of(ColumnTableau const& t) {
    PascalPath p;
    for (int c : t.components) {
      if (c != 1 && c != 2)
        throw LevelMismatch("Pascal paths need a tableau with two components");
      p.steps.push_back(c == 1 ? 1 : -1);
    }
    return p;
  }

  int level() const { return static_cast<int>(steps.size()); }

  /// weights()[k] is the weight after k steps.
  std::vector<int> weights() const {
    std::vector<int> w(steps.size() + 1, 0);
    for (std::size_t k = 0; k < steps.size(); ++k)
      w[k + 1] = w[k] + steps[k];
    return w;
  }

  std::string str() const {
    std::string s;
    for (int x : steps)
      s += x > 0 ? 'R' : 'L';
    return s;
  }

  friend bool operator==(PascalPath const&, PascalPath const&) = default;
};

/// Hit levels of the dominant path, i.e. the levels at which it first meets
/// each hyperplane.
inline std::vector<int> hit_levels(OneColMultipartition const& lambda, BlobParams const& params) {
  detail::require_level_two(params);
  std::vector<int> out;
  for (auto const& h : hyperplane_sequence(lambda, params))
    out.push_back(h.level);
  return out;
}

/// Level of first contact of the dominant path with a wall.
inline int f_lambda(OneColMultipartition const& lambda, BlobParams const& params) {
  detail::require_level_two(params);
  auto hits = hit_levels(lambda, params);
  if (hits.empty())
    throw NotApplicable(lambda.str() + " lies in the fundamental alcove");
  int a1 = lambda.heights[0], a2 = lambda.heights[1];
  int m = std::min(a1, a2);
  int c0 = params.kappa[0] - params.kappa[1];
  int f = m == a1 ? 2 * m - c0 : 2 * m + c0 + params.e;
  if (f != hits.front())
    throw ConsistencyError("first contact of " + lambda.str() + " computed as " + std::to_string(f) +
                           " but the path meets its first wall at " + std::to_string(hits.front()));
  return f;
}

/// The levels f + je for 1 <= j < k - 1, k the number of hits.
inline std::vector<int> underlined_levels(OneColMultipartition const& lambda, BlobParams const& params) {
  int f = f_lambda(lambda, params);
  int k = static_cast<int>(hit_levels(lambda, params).size());
  std::vector<int> out;
  for (int j = 1; j < k - 1; ++j)
    out.push_back(f + j * params.e);
  return out;
}

namespace detail {

// Shape of a path relative to the hit levels of lambda.
struct WallSteps {
  bool valid = false;
  std::vector<int> start;  // weight at hit level j, j = 0..r-1
  std::vector<int> dir;    // direction of the wall-to-wall step leaving hit j, j = 0..r-2
  int final_dir = 0;       // direction of the closing straight line
};

inline WallSteps wall_steps(PascalPath const& path, OneColMultipartition const& lambda, BlobParams const& params) {
  WallSteps ws;
  ColumnTableau top = dominant_tableau(lambda);
  if (path.level() != top.size())
    return ws;
  auto hits = hit_levels(lambda, params);
  PascalPath base = PascalPath::of(top);
  int n = path.level();
  int first = hits.empty() ? n : hits.front();
  for (int k = 0; k < first; ++k)
    if (path.steps[k] != base.steps[k])
      return ws;
  if (hits.empty()) {
    ws.valid = true;
    return ws;
  }
  auto w = path.weights();
  // a straight run over steps (from, to]
  auto straight = [&](int from, int to) {
    for (int k = from + 1; k < to; ++k)
      if (path.steps[k] != path.steps[from])
        return false;
    return true;
  };
  for (std::size_t j = 0; j < hits.size(); ++j) {
    ws.start.push_back(w[hits[j]]);
    int next = j + 1 < hits.size() ? hits[j + 1] : n;
    if (!straight(hits[j], next))
      return ws;
    if (j + 1 < hits.size())
      ws.dir.push_back(path.steps[hits[j]]);
    else
      ws.final_dir = path.steps[hits[j]];
  }
  ws.valid = true;
  return ws;
}

inline bool points_to_symmetry_edge(int start, int dir) { return static_cast<long long>(start) * dir < 0; }

} // namespace detail

/// True iff the path of t follows the dominant path up to first contact, then
/// runs straight between consecutive hit levels, then straight to the end.
inline bool wall_to_wall_check(ColumnTableau const& t, OneColMultipartition const& lambda, BlobParams const& params) {
  detail::require_level_two(params);
  check_level(lambda, params);
  for (int c : t.components)
    if (c != 1 && c != 2)
      return false;
  return detail::wall_steps(PascalPath::of(t), lambda, params).valid;
}

/// deg t = (number of wall-to-wall steps crossing the fundamental alcove)
/// + (1 if the closing line heads towards weight 0).
inline int fast_degree(ColumnTableau const& t, OneColMultipartition const& lambda, BlobParams const& params) {
  detail::require_level_two(params);
  check_level(lambda, params);
  if (t.size() != lambda.size() || residue_sequence(t, params) != residue_sequence(dominant_tableau(lambda), params))
    throw ResidueMismatch("tableau " + t.str() + " does not have the residue sequence of " + lambda.str());
  auto ws = detail::wall_steps(PascalPath::of(t), lambda, params);
  if (!ws.valid)
    throw ConsistencyError("tableau " + t.str() + " shares the residues of " + lambda.str() +
                           " but its path is not wall to wall");
  if (ws.start.empty())
    return 0;
  int lo = params.kappa[0] - params.kappa[1], hi = lo + params.e;
  int crossings = 0;
  for (std::size_t j = 0; j < ws.dir.size(); ++j) {
    int from = ws.start[j], to = ws.start[j + 1];
    if ((from == lo && to == hi) || (from == hi && to == lo))
      ++crossings;
  }
  return crossings + (detail::points_to_symmetry_edge(ws.start.back(), ws.final_dir) ? 1 : 0);
}

// ---------------------------------------------------------------------------
// Reduced expressions for d_t

enum class HookStrategy { highest_first, lowest_first };

/// One-line notation of the permutation s_{a_1} ... s_{a_m} of {1..n}:
/// result[i-1] is the image of i.
inline std::vector<int> permutation_of(Word const& word, int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    perm[i] = i + 1;
  // rightmost letter acts first; composing on the left swaps values
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    int k = *it;
    if (k < 1 || k >= n)
      throw IndexError("s_" + std::to_string(k) + " is not a generator of the symmetric group on " +
                       std::to_string(n) + " letters");
    for (auto& v : perm)
      v = v == k ? k + 1 : v == k + 1 ? k : v;
  }
  return perm;
}

inline int permutation_length(std::vector<int> const& perm) {
  int inv = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      inv += perm[i] > perm[j];
  return inv;
}

/// The tableau obtained by letting the permutation of `word` act on the
/// entries of t.
inline ColumnTableau act_on_entries(Word const& word, ColumnTableau t) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    std::swap(t.components[static_cast<std::size_t>(*it - 1)], t.components[static_cast<std::size_t>(*it)]);
  return t;
}

/// Reduced word for d_t with d_t t^lambda = t, built by hooks that each shrink
/// the area between the current path and the path of t.
inline Word d_tableau_word(ColumnTableau const& t, OneColMultipartition const& lambda, BlobParams const& params,
                           HookStrategy strategy = HookStrategy::highest_first) {
  detail::require_level_two(params);
  check_level(lambda, params);
  for (int c : t.components)
    if (c != 1 && c != 2)
      throw LevelMismatch("tableau " + t.str() + " has entries outside two components");
  if (t.shape(2) != lambda)
    throw ShapeMismatch("tableau " + t.str() + " has shape " + t.shape(2).str() + ", not " + lambda.str());
  ColumnTableau start = dominant_tableau(lambda);
  auto target = PascalPath::of(t).weights();
  PascalPath cur = PascalPath::of(start);
  int n = t.size();
  Word applied;  // in the order the hooks were made
  while (cur.weights() != target) {
    auto w = cur.weights();
    int chosen = -1;
    for (int i = 1; i < n; ++i) {
      int k = strategy == HookStrategy::highest_first ? i : n - i;
      // a hook at level k swaps steps k and k+1 and moves the weight at k by 2
      if (cur.steps[k - 1] == cur.steps[k])
        continue;
      int moved = w[k] - 2 * cur.steps[k - 1];
      if (std::abs(moved - target[k]) < std::abs(w[k] - target[k])) {
        chosen = k;
        break;
      }
    }
    if (chosen < 0)
      throw ConsistencyError("no area-reducing hook from " + cur.str() + " towards " + PascalPath::of(t).str());
    std::swap(cur.steps[chosen - 1], cur.steps[chosen]);
    applied.push_back(chosen);
  }
  Word word(applied.rbegin(), applied.rend());
  if (act_on_entries(word, start) != t)
    throw ConsistencyError("hook word " + word_string(word) + " does not carry t^lambda to " + t.str());
  if (permutation_length(permutation_of(word, n)) != static_cast<int>(word.size()))
    throw ConsistencyError("hook word " + word_string(word) + " is not reduced");
  return word;
}

// ---------------------------------------------------------------------------
// Two-column partitions and the degree-zero cells

struct TwoColPartition {
  int j = 0;     // rows of length two
  int rest = 0;  // rows of length one

  TwoColPartition() = default;
  TwoColPartition(int j_, int rest_) : j(j_), rest(rest_) {
    if (j < 0 || rest < 0)
      throw ValidationError("two-column partition needs j >= 0 and rest >= 0");
  }

  int size() const { return 2 * j + rest; }

  std::string str() const {
    std::string s = "(";
    if (j > 0)
      s += "2^" + std::to_string(j);
    if (rest > 0)
      s += std::string(j > 0 ? "," : "") + "1^" + std::to_string(rest);
    return s + ")";
  }

  friend auto operator<=>(TwoColPartition const&, TwoColPartition const&) = default;
};

/// All two-column partitions of n, by increasing j.
inline std::vector<TwoColPartition> two_col_partitions(int n) {
  if (n < 0)
    throw ValidationError("n must be nonnegative");
  std::vector<TwoColPartition> out;
  for (int j = 0; 2 * j <= n; ++j)
    out.emplace_back(j, n - 2 * j);
  return out;
}

/// Number of standard tableaux of a two-column shape (ballot numbers).
inline Int count_std_two_col(TwoColPartition const& mu) {
  int n = mu.size();
  auto binom = [](int a, int b) -> Int {
    if (b < 0 || b > a)
      return 0;
    Int r = 1;
    for (int i = 1; i <= b; ++i)
      r = r * (a - b + i) / i;
    return r;
  };
  return binom(n, mu.j) - binom(n, mu.j - 1);
}

struct TwoColTableau {
  std::vector<int> first, second;  // column entries, increasing

  bool is_standard() const {
    if (second.size() > first.size())
      return false;
    for (std::size_t i = 0; i < second.size(); ++i)
      if (second[i] < first[i])
        return false;
    return std::is_sorted(first.begin(), first.end()) && std::is_sorted(second.begin(), second.end());
  }

  TwoColPartition shape() const {
    return {static_cast<int>(second.size()), static_cast<int>(first.size() - second.size())};
  }

  std::string str() const { return "[" + join(first) + "|" + join(second) + "]"; }

  friend auto operator<=>(TwoColTableau const&, TwoColTableau const&) = default;
};

struct DegreeZeroCell {
  OneColMultipartition mu;
  AffineElement w;
  TwoColPartition two_col;
  std::vector<ColumnTableau> tableaux;  // degree-zero tableaux of shape mu
  std::vector<TwoColTableau> images;    // tau_t, aligned with tableaux
};

/// P^0(lambda) with its degree-zero tableaux and their two-column images,
/// ordered by decreasing length of w_mu. When w_lambda has length k < 2 the
/// only cell is lambda itself with the single tableau t^lambda.
inline std::vector<DegreeZeroCell> degree_zero_cells(OneColMultipartition const& lambda, BlobParams const& params) {
  detail::require_level_two(params);
  detail::require_regular(lambda, params);
  AffineElement wl = w_of(lambda, params);
  DihedralForm dl = dihedral_form(wl);
  int k = dl.k;
  std::map<OneColMultipartition, DegreeZeroCell> cells;
  for (auto const& t : enumerate_std_same_residue(lambda, params)) {
    if (fast_degree(t, lambda, params) != 0)
      continue;
    auto mu = t.shape(2);
    auto [it, fresh] = cells.try_emplace(mu);
    DegreeZeroCell& cell = it->second;
    if (fresh) {
      cell.mu = mu;
      cell.w = w_of(mu, params);
      DihedralForm dm = dihedral_form(cell.w);
      if (k >= 1 && (dm.side != dl.side || (k - dm.k) % 2 != 0))
        throw ConsistencyError("degree-zero cell " + mu.str() + " of " + lambda.str() + " has w = " + dm.str() +
                               ", not of the form (" + dl.str() + " - 2j)");
      int j = (k - dm.k) / 2;
      cell.two_col = TwoColPartition(j, std::max(k - 1, 0) - 2 * j);
    }
    TwoColTableau tau;
    auto ws = detail::wall_steps(PascalPath::of(t), lambda, params);
    for (std::size_t i = 0; i < ws.dir.size(); ++i)
      (detail::points_to_symmetry_edge(ws.start[i], ws.dir[i]) ? tau.second : tau.first)
          .push_back(static_cast<int>(i) + 1);
    if (!tau.is_standard() || tau.shape() != cell.two_col)
      throw ConsistencyError("image " + tau.str() + " of " + t.str() + " is not a standard tableau of shape " +
                             cell.two_col.str());
    cell.tableaux.push_back(t);
    cell.images.push_back(std::move(tau));
  }
  std::vector<DegreeZeroCell> out;
  for (auto& [mu, cell] : cells) {
    std::set<TwoColTableau> distinct(cell.images.begin(), cell.images.end());
    if (distinct.size() != cell.images.size() || Int(cell.images.size()) != count_std_two_col(cell.two_col))
      throw ConsistencyError("degree-zero tableaux of shape " + mu.str() + " are not in bijection with " +
                             cell.two_col.str());
    out.push_back(std::move(cell));
  }
  std::sort(out.begin(), out.end(),
            [](DegreeZeroCell const& a, DegreeZeroCell const& b) { return length(a.w) > length(b.w); });
  if (static_cast<int>(out.size()) != (k >= 1 ? (k - 1) / 2 + 1 : 1))
    throw ConsistencyError("P^0(" + lambda.str() + ") has " + std::to_string(out.size()) + " elements");
  return out;
}

// ---------------------------------------------------------------------------
// Temperley-Lieb decomposition numbers

struct TLDecompTable {
  int n = 0;
  int p = 0;
  std::map<std::pair<TwoColPartition, TwoColPartition>, int> entries;

  int at(TwoColPartition const& lambda, TwoColPartition const& mu) const {
    auto it = entries.find({lambda, mu});
    if (it == entries.end())
      throw IndexError("no entry for " + lambda.str() + ", " + mu.str() + " at n = " + std::to_string(n));
    return it->second;
  }
};

/// d[(2^j,..), (2^k,..)] = f_p(n - 2k, j - k), and 0 when j < k.
inline TLDecompTable tl_decomposition(int n, int p) {
  if (!is_prime(p))
    throw ValidationError("tl_decomposition: p = " + std::to_string(p) + " is not prime");
  TLDecompTable t;
  t.n = n;
  t.p = p;
  auto parts = two_col_partitions(n);
  for (auto const& a : parts)
    for (auto const& b : parts)
      t.entries[{a, b}] = a.j >= b.j ? f_p(n - 2 * b.j, a.j - b.j, p) : 0;
  return t;
}

// ---------------------------------------------------------------------------
// Graded decomposition numbers

struct BlobDecompEntry {
  OneColMultipartition mu;
  AffineElement w;
  LaurentPoly cell_dim;    // graded dimension of the cell module at mu
  LaurentPoly simple_dim;  // graded dimension of the simple module at mu
  LaurentPoly d;           // d_{mu, lambda}
  Int seed = 0;            // d_{mu, lambda}(0)
};

struct BlobDecomposition {
  OneColMultipartition lambda;
  AffineElement w;
  int p = 0;
  std::vector<BlobDecompEntry> entries;  // by decreasing length of w_mu, lambda first

  BlobDecompEntry const* find(OneColMultipartition const& mu) const {
    for (auto const& e : entries)
      if (e.mu == mu)
        return &e;
    return nullptr;
  }

  LaurentPoly d_of(OneColMultipartition const& mu) const {
    auto const* e = find(mu);
    return e ? e->d : LaurentPoly();
  }
};

/// Runs the top-down recursion for every weight it needs, memoising the
/// table of each one. p = 0 means characteristic zero.
class BlobDecomposer {
public:
  BlobDecomposer(BlobParams params, int p) : params_(std::move(params)), p_(p) {
    detail::require_level_two(params_);
    if (p_ != 0 && !is_prime(p_))
      throw ValidationError("p = " + std::to_string(p_) + " is neither 0 nor prime");
  }

  BlobParams const& params() const { return params_; }
  int p() const { return p_; }

  BlobDecomposition const& get(OneColMultipartition const& lambda) {
    auto it = memo_.find(lambda);
    if (it != memo_.end())
      return it->second;
    BlobDecomposition table = build(lambda);
    return memo_.emplace(lambda, std::move(table)).first->second;
  }

private:
  Int seed(DihedralForm top, DihedralForm x) const {
    if (x == top)
      return 1;
    if (top.side == Side::identity || x.side != top.side || (top.k - x.k) % 2 != 0)
      return 0;
    int j = (top.k - x.k) / 2;
    if (p_ == 0)
      return j == 0 ? 1 : 0;
    return f_p(top.k - 1, j, p_);
  }

  std::string dump(OneColMultipartition const& lambda, OneColMultipartition const& mu) const {
    return "e=" + std::to_string(params_.e) + " kappa=" + join(params_.kappa) + " lambda=" + lambda.str() +
           " mu=" + mu.str() + " p=" + std::to_string(p_);
  }

  BlobDecomposition build(OneColMultipartition const& lambda) {
    detail::require_regular(lambda, params_);
    BlobDecomposition table;
    table.lambda = lambda;
    table.w = w_of(lambda, params_);
    table.p = p_;
    DihedralForm top = dihedral_form(table.w);
    for (auto const& [mu, dim] : graded_cell_dims(lambda, params_)) {
      BlobDecompEntry e;
      e.mu = mu;
      e.w = w_of(mu, params_);
      e.cell_dim = dim;
      table.entries.push_back(std::move(e));
    }
    std::stable_sort(table.entries.begin(), table.entries.end(), [](auto const& a, auto const& b) {
      return length(a.w) > length(b.w);
    });
    if (table.entries.empty() || table.entries.front().mu != lambda)
      throw ConsistencyError("truncation of " + lambda.str() + " does not start at lambda");
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      BlobDecompEntry& e = table.entries[i];
      if (i == 0) {
        if (e.cell_dim != LaurentPoly(1))
          throw DecompositionError("cell module of " + lambda.str() + " at itself has dimension " +
                                   e.cell_dim.to_tex() + " (" + dump(lambda, lambda) + ")");
        e.simple_dim = 1;
        e.d = 1;
        e.seed = 1;
        continue;
      }
      LaurentPoly residual = e.cell_dim;
      for (std::size_t j = 1; j < i; ++j) {
        auto const& nu = table.entries[j];
        if (nu.w == e.w || !bruhat_leq(e.w, nu.w))
          continue;
        residual -= get(nu.mu).d_of(e.mu) * nu.simple_dim;
      }
      e.seed = seed(top, dihedral_form(e.w));
      SelfDualSplit split;
      try {
        split = split_selfdual_seeded(residual, e.seed);
      } catch (DecompositionError const& err) {
        throw DecompositionError(std::string(err.what()) + " (" + dump(lambda, e.mu) + ")");
      }
      if (!split.self_dual.has_nonnegative_coefficients())
        throw DecompositionError("simple module dimension " + split.self_dual.to_tex() +
                                 " has a negative coefficient (" + dump(lambda, e.mu) + ")");
      e.simple_dim = std::move(split.self_dual);
      e.d = std::move(split.remainder);
    }
    return table;
  }

  BlobParams params_;
  int p_;
  std::map<OneColMultipartition, BlobDecomposition> memo_;
};

inline BlobDecomposition blob_graded_decomposition(OneColMultipartition const& lambda, BlobParams const& params,
                                                   int p) {
  BlobDecomposer dec(params, p);
  return dec.get(lambda);
}

struct CrossCheckEntry {
  OneColMultipartition mu;
  AffineElement w;
  LaurentPoly blob;   // d_{mu, lambda}
  LaurentPoly hecke;  // h_{w_mu, w_lambda}
  bool equal = false;
};

/// Compares each d_{mu, lambda} with the (p-)KL polynomial h_{w_mu, w_lambda}.
inline std::vector<CrossCheckEntry> cross_check_pkl(BlobDecomposition const& table) {
  std::vector<CrossCheckEntry> out;
  for (auto const& e : table.entries) {
    CrossCheckEntry c;
    c.mu = e.mu;
    c.w = e.w;
    c.blob = e.d;
    c.hecke = kl_poly(e.w, table.w, table.p);
    c.equal = c.blob == c.hecke;
    out.push_back(std::move(c));
  }
  return out;
}

/// Sum over nu of d_{mu,nu} gdim L(nu), which should give back the cell
/// dimension at mu. The d_{mu,nu} are read from each nu's own table.
inline LaurentPoly resubstitute_cell_dim(BlobDecomposer& dec, BlobDecomposition const& table,
                                         OneColMultipartition const& mu) {
  LaurentPoly sum;
  for (auto const& nu : table.entries)
    sum += dec.get(nu.mu).d_of(mu) * nu.simple_dim;
  return sum;
}

} // namespace blobkl
