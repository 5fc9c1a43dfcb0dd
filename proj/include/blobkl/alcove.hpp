#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "affine_weyl.hpp"
#include "blob_comb.hpp"
#include "errors.hpp"
#include "hecke.hpp"
#include "laurent.hpp"

namespace blobkl {

/// Point of R^l; only differences x_i - x_j matter for the geometry.
using Point = std::vector<long long>;

/// The hyperplane x_i - x_j = kappa_i - kappa_j + m e, with 1 <= i < j <= l.
struct Hyperplane {
  int i = 1, j = 2;
  long long m = 0;

  long long constant(BlobParams const& p) const {
    return static_cast<long long>(p.kappa[i - 1]) - p.kappa[j - 1] + m * p.e;
  }

  std::string str() const {
    return "h^" + std::to_string(m) + "_{" + std::to_string(i) + "," + std::to_string(j) + "}";
  }

  friend auto operator<=>(Hyperplane const&, Hyperplane const&) = default;
};

struct HyperplaneHit {
  Hyperplane plane;
  int level = 0;

  friend bool operator==(HyperplaneHit const&, HyperplaneHit const&) = default;
};

using HyperplaneSequence = std::vector<HyperplaneHit>;

/// Alcoves a_0, ..., a_r of the reduced alcove path, each given by the element
/// u with a_k = A_u.
struct AlcovePath {
  std::vector<AffineElement> alcoves;
};

inline Point to_point(OneColMultipartition const& lambda) {
  return Point(lambda.heights.begin(), lambda.heights.end());
}

/// Signed offset of x from the hyperplane: zero on it, positive on E(+).
inline long long offset(Point const& x, Hyperplane const& h, BlobParams const& p) {
  return x[h.i - 1] - x[h.j - 1] - h.constant(p);
}

/// All hyperplanes through x.
inline std::vector<Hyperplane> hyperplanes_through(Point const& x, BlobParams const& p) {
  std::vector<Hyperplane> out;
  for (int i = 1; i <= p.l; ++i)
    for (int j = i + 1; j <= p.l; ++j) {
      long long d = x[i - 1] - x[j - 1] - (static_cast<long long>(p.kappa[i - 1]) - p.kappa[j - 1]);
      if (d % p.e == 0)
        out.push_back({i, j, d / p.e});
    }
  return out;
}

inline bool is_regular(OneColMultipartition const& lambda, BlobParams const& params) {
  check_level(lambda, params);
  return hyperplanes_through(to_point(lambda), params).empty();
}

namespace detail {

inline void require_regular(OneColMultipartition const& lambda, BlobParams const& params) {
  if (!is_regular(lambda, params))
    throw NotRegular("lambda = " + lambda.str() + " lies on " +
                     hyperplanes_through(to_point(lambda), params).front().str());
}

// The wall of A_0 fixed by the simple reflection s_i.
inline Hyperplane simple_wall(int i, int l) { return i == 0 ? Hyperplane{1, l, 1} : Hyperplane{i, i + 1, 0}; }

// Index of the simple reflection through h, or -1 if h is not a wall of A_0.
inline int wall_index(Hyperplane const& h, int l) {
  if (h.m == 0 && h.j == h.i + 1)
    return h.i;
  if (h.m == 1 && h.i == 1 && h.j == l)
    return 0;
  return -1;
}

inline void reflect_point(Point& x, Hyperplane const& h, BlobParams const& p) {
  long long d = offset(x, h, p);
  x[h.i - 1] -= d;
  x[h.j - 1] += d;
}

// Image of the hyperplane h under the reflection through r. Writing h as
// beta.x = c with beta = e_i - e_j, the image is beta'.x = c' where
// beta' = beta - (beta.alpha) alpha and c' = c - (beta.alpha) d.
inline Hyperplane reflect_hyperplane(Hyperplane const& h, Hyperplane const& r, BlobParams const& p) {
  std::vector<long long> beta(static_cast<std::size_t>(p.l), 0), alpha(static_cast<std::size_t>(p.l), 0);
  beta[h.i - 1] += 1;
  beta[h.j - 1] -= 1;
  alpha[r.i - 1] += 1;
  alpha[r.j - 1] -= 1;
  long long dot = 0;
  for (int k = 0; k < p.l; ++k)
    dot += beta[k] * alpha[k];
  long long c = h.constant(p) - dot * r.constant(p);
  int plus = -1, minus = -1;
  for (int k = 0; k < p.l; ++k) {
    beta[k] -= dot * alpha[k];
    if (beta[k] == 1)
      plus = k + 1;
    else if (beta[k] == -1)
      minus = k + 1;
    else if (beta[k] != 0)
      throw ConsistencyError("reflected normal is not a root");
  }
  if (plus > minus) {
    std::swap(plus, minus);
    c = -c;
  }
  long long num = c - (static_cast<long long>(p.kappa[plus - 1]) - p.kappa[minus - 1]);
  if (num % p.e != 0)
    throw ConsistencyError("reflected hyperplane has a non-integral level");
  return {plus, minus, num / p.e};
}

// u(h) where u acts through a word: s_{a1}(...(s_{ak}(h))).
inline Hyperplane act_on_hyperplane(Word const& word, Hyperplane h, BlobParams const& p) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    h = reflect_hyperplane(h, simple_wall(*it, p.l), p);
  return h;
}

inline Point act_on_point(Word const& word, Point x, BlobParams const& p) {
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    reflect_point(x, simple_wall(*it, p.l), p);
  return x;
}

// Folds x into the closed fundamental alcove by reflecting through walls it
// lies strictly beyond. Returns the walls used, in order; for regular x the
// element s_{w1} s_{w2} ... carries A_0 to the alcove of x.
inline Word fold(Point& x, BlobParams const& p) {
  Word used;
  while (true) {
    int wall = -1;
    for (int i = 1; i < p.l && wall < 0; ++i)
      if (offset(x, simple_wall(i, p.l), p) < 0)
        wall = i;
    if (wall < 0 && offset(x, simple_wall(0, p.l), p) > 0)
      wall = 0;
    if (wall < 0)
      return used;
    reflect_point(x, simple_wall(wall, p.l), p);
    used.push_back(wall);
  }
}

} // namespace detail

/// New hyperplanes met by the dominant path, with the level of first contact.
inline HyperplaneSequence hyperplane_sequence(OneColMultipartition const& lambda, BlobParams const& params) {
  detail::require_regular(lambda, params);
  HyperplaneSequence seq;
  ColumnTableau t = dominant_tableau(lambda);
  Point x(static_cast<std::size_t>(params.l), 0);
  std::set<Hyperplane> before, seen;
  for (int k = 1; k <= t.size(); ++k) {
    ++x[t.components[k - 1] - 1];
    auto through = hyperplanes_through(x, params);
    std::vector<Hyperplane> fresh;
    for (auto const& h : through)
      if (!before.count(h))
        fresh.push_back(h);
    if (fresh.size() > 1)
      throw MultipleNewHyperplanes("level " + std::to_string(k) + " of " + lambda.str() + " meets " +
                                   fresh[0].str() + " and " + fresh[1].str() + " at once");
    if (!fresh.empty()) {
      if (!seen.insert(fresh[0]).second)
        throw ConsistencyError(fresh[0].str() + " met twice by the dominant path of " + lambda.str());
      seq.push_back({fresh[0], k});
    }
    before = std::set<Hyperplane>(through.begin(), through.end());
  }
  return seq;
}

/// The element whose alcove contains lambda, found by folding.
inline AffineElement w_of(OneColMultipartition const& lambda, BlobParams const& params) {
  detail::require_regular(lambda, params);
  Point x = to_point(lambda);
  return eval_word(detail::fold(x, params), params.l);
}

/// Conjugates each hyperplane of the sequence back to a wall of A_0: letter j
/// is the wall rho_1 ... rho_{j-1}(h_j).
inline Word principal_word(OneColMultipartition const& lambda, BlobParams const& params) {
  HyperplaneSequence seq = hyperplane_sequence(lambda, params);
  Word word;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    Hyperplane h = seq[j].plane;
    for (std::size_t k = j; k-- > 0;)
      h = detail::reflect_hyperplane(h, seq[k].plane, params);
    int i = detail::wall_index(h, params.l);
    if (i < 0)
      throw ConsistencyError("hyperplane " + seq[j].plane.str() + " of " + lambda.str() +
                             " does not conjugate to a wall of A_0 (got " + h.str() + ")");
    word.push_back(i);
  }
  return word;
}

/// a_k = A_{u_k} with u_k the product of the first k letters of the principal
/// word. Checks that consecutive alcoves share the wall h_k, that the path is
/// reduced and that it ends at w_of(lambda).
inline AlcovePath alcove_path(OneColMultipartition const& lambda, BlobParams const& params) {
  HyperplaneSequence seq = hyperplane_sequence(lambda, params);
  Word word = principal_word(lambda, params);
  AlcovePath path;
  Word prefix;
  path.alcoves.push_back(AffineElement(params.l));
  for (std::size_t k = 0; k < word.size(); ++k) {
    Hyperplane shared = detail::act_on_hyperplane(prefix, detail::simple_wall(word[k], params.l), params);
    if (shared != seq[k].plane)
      throw ConsistencyError("alcoves " + std::to_string(k) + " and " + std::to_string(k + 1) + " of " +
                             lambda.str() + " do not share " + seq[k].plane.str());
    prefix.push_back(word[k]);
    path.alcoves.push_back(path.alcoves.back().times_simple(word[k]));
    if (length(path.alcoves.back()) != static_cast<int>(k) + 1)
      throw ConsistencyError("alcove path of " + lambda.str() + " is not reduced at step " + std::to_string(k + 1));
  }
  if (path.alcoves.back() != w_of(lambda, params))
    throw ConsistencyError("alcove path of " + lambda.str() + " does not end at the alcove of lambda");
  return path;
}

/// Representative of the orbit of x in the closed fundamental alcove.
inline Point canonical_point(Point x, BlobParams const& params) {
  detail::fold(x, params);
  return x;
}

inline bool same_orbit(OneColMultipartition const& lambda, OneColMultipartition const& mu, BlobParams const& params) {
  check_level(lambda, params);
  check_level(mu, params);
  if (lambda.size() != mu.size())
    throw SizeMismatch("orbit comparison needs equal sizes: " + lambda.str() + " vs " + mu.str());
  return canonical_point(to_point(lambda), params) == canonical_point(to_point(mu), params);
}

struct GradedDimReport {
  LaurentPoly lhs;  // graded cell dimension
  LaurentPoly rhs;  // coefficient in the Bott-Samelson expansion
  bool equal = false;
};

/// Compares the tableau count with the Hecke side for a single mu.
inline GradedDimReport verify_graded_dim_theorem(OneColMultipartition const& lambda, OneColMultipartition const& mu,
                                                 BlobParams const& params) {
  detail::require_regular(lambda, params);
  check_level(mu, params);
  GradedDimReport r;
  r.lhs = graded_cell_dim(lambda, mu, params);
  if (mu.size() == lambda.size() && same_orbit(lambda, mu, params))
    r.rhs = bott_samelson(principal_word(lambda, params), params.l).coeff(w_of(mu, params));
  r.equal = r.lhs == r.rhs;
  return r;
}

/// The same comparison for every mu where either side can be nonzero: the
/// shapes reached by tableaux, and the multipartitions x.lambda_0 for x in the
/// support of the Bott-Samelson expansion (lambda_0 the folded point).
inline std::map<OneColMultipartition, GradedDimReport> verify_graded_dim_all(OneColMultipartition const& lambda,
                                                                            BlobParams const& params) {
  detail::require_regular(lambda, params);
  std::map<OneColMultipartition, GradedDimReport> out;
  for (auto const& [mu, d] : graded_cell_dims(lambda, params))
    out[mu].lhs = d;
  Point base = canonical_point(to_point(lambda), params);
  HeckeElement bs = bott_samelson(principal_word(lambda, params), params.l);
  for (auto const& [x, c] : bs.support()) {
    Point y = detail::act_on_point(reduced_word(x), base, params);
    if (std::any_of(y.begin(), y.end(), [](long long v) { return v < 0; }))
      continue;
    OneColMultipartition mu(std::vector<int>(y.begin(), y.end()));
    if (w_of(mu, params) != x)
      throw ConsistencyError("orbit point " + mu.str() + " of " + lambda.str() + " is not in the alcove of " +
                             label(x));
    out[mu].rhs = c;
  }
  for (auto& [mu, r] : out)
    r.equal = r.lhs == r.rhs;
  return out;
}

} // namespace blobkl
