#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "affine_weyl.hpp"
#include "errors.hpp"
#include "laurent.hpp"

namespace blobkl {

/// Element of the Hecke algebra of W_l written in the standard basis {H_x}.
class HeckeElement {
public:
  using Support = std::map<AffineElement, LaurentPoly>;

  explicit HeckeElement(int l) : level_(l) {}

  static HeckeElement standard(AffineElement const& x) {
    HeckeElement h(x.level());
    h.add(x, LaurentPoly(1));
    return h;
  }

  int level() const { return level_; }
  Support const& support() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  LaurentPoly coeff(AffineElement const& x) const {
    auto it = terms_.find(x);
    return it == terms_.end() ? LaurentPoly() : it->second;
  }

  void add(AffineElement const& x, LaurentPoly const& c) {
    if (x.level() != level_)
      throw LevelMismatch("Hecke element of level " + std::to_string(level_) +
                          " cannot hold an element of level " + std::to_string(x.level()));
    if (c.is_zero())
      return;
    auto [it, inserted] = terms_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    }
  }

  HeckeElement& operator+=(HeckeElement const& o) {
    for (auto const& [x, c] : o.terms_)
      add(x, c);
    return *this;
  }

  HeckeElement scaled(LaurentPoly const& c) const {
    HeckeElement r(level_);
    for (auto const& [x, a] : terms_)
      r.add(x, a * c);
    return r;
  }

  friend bool operator==(HeckeElement const& a, HeckeElement const& b) {
    return a.level_ == b.level_ && a.terms_ == b.terms_;
  }

private:
  int level_;
  Support terms_;
};

/// h * (H_{s_i} + v), using H_x H_s = H_{xs} if xs > x and
/// H_{xs} + (v^{-1} - v) H_x otherwise.
inline HeckeElement mult_right_barred(HeckeElement const& h, int i) {
  AffineElement::check_index(i, h.level());
  HeckeElement r(h.level());
  for (auto const& [x, c] : h.support()) {
    AffineElement xs = x.times_simple(i);
    r.add(xs, c);
    if (x.has_right_descent(i))
      r.add(x, c.shifted(-1));
    else
      r.add(x, c.shifted(1));
  }
  return r;
}

/// Expansion of H_{s_1} ... H_{s_k} (barred) over the word in the standard basis.
inline HeckeElement bott_samelson(Word const& word, int l) {
  HeckeElement h = HeckeElement::standard(AffineElement(l));
  for (int i : word)
    h = mult_right_barred(h, i);
  return h;
}

// ---------------------------------------------------------------------------
// Base-p containment

/// Base-p digits, least significant first.
inline std::vector<long long> base_p_digits(long long a, long long p) {
  std::vector<long long> d;
  while (a > 0) {
    d.push_back(a % p);
    a /= p;
  }
  return d;
}

inline bool is_prime(long long p) {
  if (p < 2)
    return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0)
      return false;
  return true;
}

/// 1 if a+1 contains b to base p, else 0. The definition needs b != 0; the
/// value used for b = 0 is zero_value.
inline int f_p(long long a, long long b, long long p, int zero_value = 1) {
  if (!is_prime(p))
    throw ValidationError("f_p: p = " + std::to_string(p) + " is not prime");
  if (a < 0 || b < 0)
    throw ValidationError("f_p: arguments must be nonnegative");
  if (b == 0)
    return zero_value;
  auto A = base_p_digits(a + 1, p);
  auto B = base_p_digits(b, p);
  if (B.size() >= A.size())
    return 0;
  for (std::size_t i = 0; i < B.size(); ++i)
    if (B[i] != 0 && B[i] != A[i])
      return 0;
  return 1;
}

// ---------------------------------------------------------------------------
// KL tables

struct KLTable {
  AffineElement w;
  int p = 0;
  Word word;                                // expression used for the expansion
  std::map<AffineElement, LaurentPoly> h;   // x -> h_{x,w}
  std::map<AffineElement, LaurentPoly> aux; // y -> self-dual complement
};

/// Constant terms h^p_{x,w}(0) for w = k_s or k_t in the infinite dihedral group.
inline std::map<AffineElement, Int> pkl_constant_terms(DihedralForm w, int p, int zero_value = 1) {
  std::map<AffineElement, Int> out;
  if (w.side == Side::identity) {
    out[AffineElement(2)] = 1;
    return out;
  }
  for (int j = 0; j <= (w.k - 1) / 2; ++j)
    out[from_dihedral({w.side, w.k - 2 * j})] = f_p(w.k - 1, j, p, zero_value);
  return out;
}

namespace detail {

class KLCache {
public:
  std::shared_ptr<KLTable const> find(AffineElement const& w, int p) const {
    std::shared_lock lock(mu_);
    auto it = tables_.find({w, p});
    return it == tables_.end() ? nullptr : it->second;
  }

  std::shared_ptr<KLTable const> insert(std::shared_ptr<KLTable const> t) {
    std::unique_lock lock(mu_);
    auto [it, inserted] = tables_.try_emplace({t->w, t->p}, t);
    return it->second;
  }

  void clear() {
    std::unique_lock lock(mu_);
    tables_.clear();
  }

private:
  mutable std::shared_mutex mu_;
  std::map<std::pair<AffineElement, int>, std::shared_ptr<KLTable const>> tables_;
};

inline KLCache& kl_cache() {
  static KLCache cache;
  return cache;
}

inline void check_characteristic(int p, int l) {
  if (p < 0 || (p > 0 && !is_prime(p)))
    throw ValidationError("p must be 0 or a prime, got " + std::to_string(p));
  if (p > 0 && l != 2)
    throw UnsupportedError("p-canonical tables are only available for level 2 (got level " +
                           std::to_string(l) + ")");
}

std::shared_ptr<KLTable const> cached_table(AffineElement const& w, int p);

inline KLTable compute_table(AffineElement const& w, int p, Word const& word) {
  int l = w.level();
  if (eval_word(word, l) != w || static_cast<int>(word.size()) != length(w))
    throw ValidationError("word " + word_string(word) + " is not a reduced expression of " +
                          label(w));
  KLTable t{w, p, word, {}, {}};
  HeckeElement bs = bott_samelson(word, l);

  std::map<AffineElement, Int> seeds;
  if (p > 0)
    seeds = pkl_constant_terms(dihedral_form(w), p);

  std::vector<std::pair<int, AffineElement>> order;
  for (auto const& [x, c] : bs.support())
    if (x != w)
      order.emplace_back(length(x), x);
  std::sort(order.begin(), order.end(), [](auto const& a, auto const& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  t.h[w] = LaurentPoly(1);
  t.aux[w] = LaurentPoly(1);
  if (bs.coeff(w) != LaurentPoly(1))
    throw ConsistencyError("expansion of a reduced word has top coefficient " +
                           bs.coeff(w).to_tex());

  // Tables of the intermediate y with nonzero complement, in processing order.
  std::vector<std::pair<AffineElement, std::shared_ptr<KLTable const>>> lower;
  for (auto const& [len, x] : order) {
    LaurentPoly f = bs.coeff(x);
    for (auto const& [y, ty] : lower) {
      auto it = ty->h.find(x);
      if (it != ty->h.end())
        f -= t.aux[y] * it->second;
    }
    SelfDualSplit s;
    try {
      if (p == 0) {
        s = split_selfdual_strict(f);
      } else {
        auto it = seeds.find(x);
        s = split_selfdual_seeded(f, it == seeds.end() ? Int(0) : it->second);
      }
    } catch (DecompositionError const& e) {
      throw DecompositionError(std::string(e.what()) + " [w = " + label(w) + ", x = " + label(x) +
                               ", p = " + std::to_string(p) + "]");
    }
    if (!s.remainder.is_zero())
      t.h[x] = s.remainder;
    if (!s.self_dual.is_zero()) {
      t.aux[x] = s.self_dual;
      lower.emplace_back(x, cached_table(x, p));
    }
  }
  return t;
}

inline std::shared_ptr<KLTable const> cached_table(AffineElement const& w, int p) {
  if (auto t = kl_cache().find(w, p))
    return t;
  auto t = std::make_shared<KLTable const>(compute_table(w, p, reduced_word(w)));
  return kl_cache().insert(std::move(t));
}

} // namespace detail

/// Characteristic-zero KL table of w. If a reduced word is supplied it is used
/// for the expansion (the complements depend on it, the polynomials do not).
inline KLTable kl_char0(AffineElement const& w, Word const* word = nullptr) {
  if (word)
    return detail::compute_table(w, 0, *word);
  return *detail::cached_table(w, 0);
}

/// p-canonical table for the infinite dihedral group.
inline KLTable pkl_dihedral(DihedralForm w, int p) {
  detail::check_characteristic(p, 2);
  if (p == 0)
    throw ValidationError("pkl_dihedral needs a prime p");
  return *detail::cached_table(from_dihedral(w), p);
}

/// Generic entry point: p = 0 for any level, p prime for level 2.
inline KLTable kl_table(AffineElement const& w, int p, Word const* word = nullptr) {
  detail::check_characteristic(p, w.level());
  if (word)
    return detail::compute_table(w, p, *word);
  return *detail::cached_table(w, p);
}

/// h_{x,y} for any pair, zero unless x <= y.
inline LaurentPoly kl_poly(AffineElement const& x, AffineElement const& y, int p) {
  detail::check_characteristic(p, y.level());
  auto t = detail::cached_table(y, p);
  auto it = t->h.find(x);
  return it == t->h.end() ? LaurentPoly() : it->second;
}

/// Sum over y of aux_y * h_{x,y} H_x; equals the Bott-Samelson expansion of
/// the table's word when the table is consistent.
inline HeckeElement resubstitute(KLTable const& t) {
  HeckeElement r(t.w.level());
  for (auto const& [y, a] : t.aux) {
    if (y == t.w) {
      for (auto const& [x, hx] : t.h)
        r.add(x, a * hx);
    } else {
      auto ty = detail::cached_table(y, t.p);
      for (auto const& [x, hx] : ty->h)
        r.add(x, a * hx);
    }
  }
  return r;
}

inline void clear_kl_cache() { detail::kl_cache().clear(); }

} // namespace blobkl
