#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "laurent.hpp"

namespace blobkl {

inline std::string join(std::vector<int> const& v, char sep = ',') {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? std::string(1, sep) : "") << v[i];
  return os.str();
}

inline int mod(long long a, int e) {
  long long r = a % e;
  return static_cast<int>(r < 0 ? r + e : r);
}

/// Quantum characteristic e, level l and multicharge kappa. kappa holds
/// canonical representatives in [0, e), strictly increasing, and no two
/// entries are equal or adjacent modulo e.
struct BlobParams {
  int e = 0;
  int l = 0;
  std::vector<int> kappa;

  BlobParams() = default;
  BlobParams(int e_, std::vector<int> kappa_) : e(e_), l(static_cast<int>(kappa_.size())), kappa(std::move(kappa_)) {
    validate();
  }

  void validate() const {
    if (e < 2)
      throw ValidationError("e must be >= 2, got " + std::to_string(e));
    if (l < 2 || static_cast<int>(kappa.size()) != l)
      throw LevelMismatch("kappa must have l >= 2 entries, got " + std::to_string(kappa.size()));
    if (e < 2 * l)
      throw ValidationError("e = " + std::to_string(e) + " is too small for an adjacency-free multicharge of level " +
                            std::to_string(l) + " (need e >= 2l)");
    for (int i = 0; i < l; ++i) {
      if (kappa[i] < 0 || kappa[i] >= e)
        throw ValidationError("kappa entries must lie in [0, e), got " + join(kappa));
      if (i > 0 && kappa[i] <= kappa[i - 1])
        throw ValidationError("kappa must be strictly increasing, got " + join(kappa));
    }
    for (int i = 0; i < l; ++i)
      for (int j = i + 1; j < l; ++j) {
        int d = mod(kappa[i] - kappa[j], e);
        if (d == 0 || d == 1 || d == e - 1)
          throw ValidationError("kappa is not adjacency-free: entries " + std::to_string(kappa[i]) + " and " +
                                std::to_string(kappa[j]) + " are adjacent mod " + std::to_string(e));
      }
  }

  friend bool operator==(BlobParams const&, BlobParams const&) = default;
};

/// (1^{a_1}, ..., 1^{a_l}) stored as its column heights.
struct OneColMultipartition {
  std::vector<int> heights;

  OneColMultipartition() = default;
  explicit OneColMultipartition(std::vector<int> h) : heights(std::move(h)) {
    for (int a : heights)
      if (a < 0)
        throw ValidationError("column heights must be >= 0, got " + join(heights));
  }

  int level() const { return static_cast<int>(heights.size()); }
  int size() const {
    int n = 0;
    for (int a : heights)
      n += a;
    return n;
  }
  std::string str() const { return "(" + join(heights) + ")"; }

  friend auto operator<=>(OneColMultipartition const&, OneColMultipartition const&) = default;
};

/// A standard one-column tableau, stored as its component word: entry k sits
/// at the bottom of column components[k-1] (1-based) at the time it is placed.
struct ColumnTableau {
  std::vector<int> components;

  int size() const { return static_cast<int>(components.size()); }

  OneColMultipartition shape(int l) const {
    std::vector<int> h(static_cast<std::size_t>(l), 0);
    for (int c : components) {
      if (c < 1 || c > l)
        throw IndexError("tableau component " + std::to_string(c) + " outside 1.." + std::to_string(l));
      ++h[c - 1];
    }
    return OneColMultipartition(h);
  }

  /// Entries of each column, top to bottom.
  std::vector<std::vector<int>> columns(int l) const {
    std::vector<std::vector<int>> cols(static_cast<std::size_t>(l));
    for (int k = 0; k < size(); ++k)
      cols.at(components[k] - 1).push_back(k + 1);
    return cols;
  }

  std::string str() const { return join(components, ' '); }

  friend auto operator<=>(ColumnTableau const&, ColumnTableau const&) = default;
};

inline void check_level(OneColMultipartition const& lambda, BlobParams const& params) {
  if (lambda.level() != params.l)
    throw LevelMismatch("multipartition " + lambda.str() + " has " + std::to_string(lambda.level()) +
                        " components but l = " + std::to_string(params.l));
}

/// Residue of the box in row r of component m (both 1-based).
inline int residue(int r, int m, BlobParams const& params) {
  if (r < 1 || m < 1 || m > params.l)
    throw IndexError("box (" + std::to_string(r) + "," + std::to_string(m) + ") out of range");
  return mod(static_cast<long long>(params.kappa[m - 1]) + 1 - r, params.e);
}

/// Boxes are filled row by row, left to right across components.
inline ColumnTableau dominant_tableau(OneColMultipartition const& lambda) {
  ColumnTableau t;
  int rows = 0;
  for (int a : lambda.heights)
    rows = std::max(rows, a);
  for (int r = 1; r <= rows; ++r)
    for (int m = 1; m <= lambda.level(); ++m)
      if (lambda.heights[m - 1] >= r)
        t.components.push_back(m);
  return t;
}

inline std::vector<int> residue_sequence(ColumnTableau const& t, BlobParams const& params) {
  std::vector<int> h(static_cast<std::size_t>(params.l), 0);
  std::vector<int> res;
  res.reserve(t.components.size());
  for (int c : t.components) {
    if (c < 1 || c > params.l)
      throw IndexError("tableau component " + std::to_string(c) + " outside 1.." + std::to_string(params.l));
    res.push_back(residue(++h[c - 1], c, params));
  }
  return res;
}

namespace detail {

// (r, m) strictly dominates (r2, m2).
inline bool box_dominates(int r, int m, int r2, int m2) { return r < r2 || (r == r2 && m < m2); }

// Contribution of entry k to the degree: k has just been placed at (r, m) and
// h holds the column heights of Shape(t|k).
inline int degree_step(std::vector<int> const& h, int r, int m, BlobParams const& params) {
  int res = residue(r, m, params);
  int d = 0;
  for (int c = 1; c <= params.l; ++c) {
    int hc = h[c - 1];
    if (mod(static_cast<long long>(params.kappa[c - 1]) - hc, params.e) == res && box_dominates(r, m, hc + 1, c))
      ++d;
    if (hc > 0 && mod(static_cast<long long>(params.kappa[c - 1]) + 1 - hc, params.e) == res &&
        box_dominates(r, m, hc, c))
      --d;
  }
  return d;
}

// Depth-first walk over all standard tableaux whose residue sequence equals
// target, in lexicographic order of component words. visit(word, heights,
// degree) is called at each leaf and returns false to stop the walk.
template <class Visit>
void walk_same_residue(std::vector<int> const& target, BlobParams const& params, Visit&& visit) {
  int n = static_cast<int>(target.size());
  int l = params.l;
  std::vector<int> word(static_cast<std::size_t>(n)), h(static_cast<std::size_t>(l), 0);
  std::vector<int> next(static_cast<std::size_t>(n) + 1, 1), deg(static_cast<std::size_t>(n) + 1, 0);
  int k = 0;
  while (k >= 0) {
    if (k == n) {
      if (!visit(word, h, deg[n]))
        return;
      if (--k >= 0)
        --h[word[k] - 1];
      continue;
    }
    int m = next[k];
    while (m <= l && mod(static_cast<long long>(params.kappa[m - 1]) - h[m - 1], params.e) != target[k])
      ++m;
    if (m > l) {
      next[k] = 1;
      if (--k >= 0)
        --h[word[k] - 1];
      continue;
    }
    next[k] = m + 1;
    word[k] = m;
    int r = ++h[m - 1];
    deg[k + 1] = deg[k] + degree_step(h, r, m, params);
    ++k;
  }
}

} // namespace detail

namespace detail {
// 0 means no override. Process-wide so worker threads see it too.
inline std::atomic<std::size_t> cap_override{0};
} // namespace detail

/// Sets the enumeration cap for its lifetime; wins over BLOBKL_CAP.
class ScopedCap {
public:
  explicit ScopedCap(std::size_t cap) : prev_(detail::cap_override.exchange(cap)) {}
  ~ScopedCap() { detail::cap_override.store(prev_); }
  ScopedCap(ScopedCap const&) = delete;
  ScopedCap& operator=(ScopedCap const&) = delete;

private:
  std::size_t prev_;
};

/// Default enumeration cap, overridable through the BLOBKL_CAP environment
/// variable or a ScopedCap.
inline std::size_t enumeration_cap() {
  if (std::size_t o = detail::cap_override.load())
    return o;
  std::size_t cap = std::size_t{1} << 20;
  if (char const* env = std::getenv("BLOBKL_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0)
      throw ParseError(std::string("BLOBKL_CAP must be a positive integer, got '") + env + "'");
    cap = static_cast<std::size_t>(v);
  }
  return cap;
}

/// All standard tableaux t with i^t = i^lambda, in lexicographic order of
/// their component words. Throws CapExceeded past cap tableaux.
inline std::vector<ColumnTableau> enumerate_std_same_residue(OneColMultipartition const& lambda,
                                                             BlobParams const& params,
                                                             std::size_t cap = enumeration_cap()) {
  check_level(lambda, params);
  std::vector<ColumnTableau> out;
  bool over = false;
  detail::walk_same_residue(residue_sequence(dominant_tableau(lambda), params), params,
                            [&](std::vector<int> const& w, std::vector<int> const&, int) {
                              if (out.size() == cap) {
                                over = true;
                                return false;
                              }
                              out.push_back(ColumnTableau{w});
                              return true;
                            });
  if (over)
    throw CapExceeded("more than " + std::to_string(cap) + " tableaux for lambda = " + lambda.str() +
                      " (raise BLOBKL_CAP or use the counting mode)");
  return out;
}

/// Same set as enumerate_std_same_residue, counted without materializing.
inline std::uint64_t count_std_same_residue(OneColMultipartition const& lambda, BlobParams const& params) {
  check_level(lambda, params);
  std::uint64_t count = 0;
  detail::walk_same_residue(residue_sequence(dominant_tableau(lambda), params), params,
                            [&](auto const&, auto const&, int) {
                              ++count;
                              return true;
                            });
  return count;
}

inline int tableau_degree(ColumnTableau const& t, BlobParams const& params) {
  std::vector<int> h(static_cast<std::size_t>(params.l), 0);
  int deg = 0;
  for (int c : t.components) {
    if (c < 1 || c > params.l)
      throw IndexError("tableau component " + std::to_string(c) + " outside 1.." + std::to_string(params.l));
    int r = ++h[c - 1];
    deg += detail::degree_step(h, r, c, params);
  }
  return deg;
}

/// Graded dimensions of every nonzero cell module of the truncation at
/// lambda, keyed by the shape mu.
inline std::map<OneColMultipartition, LaurentPoly> graded_cell_dims(OneColMultipartition const& lambda,
                                                                    BlobParams const& params) {
  check_level(lambda, params);
  std::map<std::vector<int>, std::map<int, std::uint64_t>> acc;
  detail::walk_same_residue(residue_sequence(dominant_tableau(lambda), params), params,
                            [&](std::vector<int> const&, std::vector<int> const& h, int deg) {
                              ++acc[h][deg];
                              return true;
                            });
  std::map<OneColMultipartition, LaurentPoly> out;
  for (auto const& [h, degs] : acc) {
    LaurentPoly p;
    for (auto const& [d, c] : degs)
      p.add_term(d, Int(c));
    out.emplace(OneColMultipartition(h), std::move(p));
  }
  return out;
}

/// Sum of v^deg(t) over t in Std_lambda(mu). Zero iff that set is empty.
inline LaurentPoly graded_cell_dim(OneColMultipartition const& lambda, OneColMultipartition const& mu,
                                   BlobParams const& params) {
  check_level(mu, params);
  if (mu.size() != lambda.size())
    return {};
  auto all = graded_cell_dims(lambda, params);
  auto it = all.find(mu);
  return it == all.end() ? LaurentPoly() : it->second;
}

namespace detail {

// Number of boxes of mu strictly dominating the box (r, m).
inline int boxes_dominating(std::vector<int> const& mu, int r, int m) {
  int count = 0;
  for (int c = 1; c <= static_cast<int>(mu.size()); ++c) {
    count += std::min(mu[c - 1], r - 1);
    if (c < m && mu[c - 1] >= r)
      ++count;
  }
  return count;
}

} // namespace detail

/// lambda is dominated by mu: at every box position (r, m), at least as many
/// boxes of mu as of lambda strictly dominate it. Positions outside both
/// diagrams are included; restricting to the boxes of lambda alone does not
/// give a partial order.
inline bool dominance_leq(OneColMultipartition const& lambda, OneColMultipartition const& mu) {
  if (lambda.level() != mu.level())
    throw LevelMismatch("dominance needs equal levels: " + lambda.str() + " vs " + mu.str());
  if (lambda.size() != mu.size())
    throw SizeMismatch("dominance needs equal sizes: " + lambda.str() + " vs " + mu.str());
  int rows = 0;
  for (int m = 0; m < lambda.level(); ++m)
    rows = std::max({rows, lambda.heights[m], mu.heights[m]});
  for (int r = 1; r <= rows + 1; ++r)
    for (int m = 1; m <= lambda.level(); ++m)
      if (detail::boxes_dominating(mu.heights, r, m) < detail::boxes_dominating(lambda.heights, r, m))
        return false;
  return true;
}

} // namespace blobkl
