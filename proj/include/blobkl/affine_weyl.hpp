#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace blobkl {

using Word = std::vector<int>;

/// Element of the affine Weyl group of type A~_{l-1}, stored as the window
/// [w(1), ..., w(l)] of an affine permutation with w(i + l) = w(i) + l and
/// sum w(i) = l(l+1)/2.
class AffineElement {
public:
  AffineElement() : AffineElement(2) {}

  /// Identity of W_l.
  explicit AffineElement(int l) : win_(static_cast<std::size_t>(l)) {
    if (l < 2)
      throw ValidationError("level must be at least 2, got " + std::to_string(l));
    std::iota(win_.begin(), win_.end(), 1);
  }

  /// Validating constructor from a window.
  static AffineElement from_window(std::vector<long long> window) {
    int l = static_cast<int>(window.size());
    if (l < 2)
      throw ValidationError("window must have at least 2 entries");
    long long sum = std::accumulate(window.begin(), window.end(), 0LL);
    if (sum != static_cast<long long>(l) * (l + 1) / 2)
      throw ValidationError("window entries must sum to l(l+1)/2");
    std::vector<bool> seen(static_cast<std::size_t>(l), false);
    for (long long v : window) {
      long long r = ((v % l) + l) % l;
      if (seen[static_cast<std::size_t>(r)])
        throw ValidationError("window residues mod l must be distinct");
      seen[static_cast<std::size_t>(r)] = true;
    }
    AffineElement x(l);
    x.win_ = std::move(window);
    return x;
  }

  int level() const { return static_cast<int>(win_.size()); }
  std::vector<long long> const& window() const { return win_; }

  /// w(i) for any integer i.
  long long operator()(long long i) const {
    long long l = level();
    long long q = i >= 1 ? (i - 1) / l : -((l - i) / l);
    long long r = i - q * l; // 1..l
    return win_[static_cast<std::size_t>(r - 1)] + q * l;
  }

  bool is_identity() const {
    for (std::size_t i = 0; i < win_.size(); ++i)
      if (win_[i] != static_cast<long long>(i) + 1)
        return false;
    return true;
  }

  friend bool operator==(AffineElement const&, AffineElement const&) = default;
  friend auto operator<=>(AffineElement const& a, AffineElement const& b) {
    if (auto c = a.win_.size() <=> b.win_.size(); c != 0)
      return c;
    return a.win_ <=> b.win_;
  }

  /// Right multiplication by s_i: swaps the values at positions i and i+1.
  AffineElement times_simple(int i) const {
    check_index(i, level());
    AffineElement r = *this;
    int l = level();
    if (i >= 1) {
      std::swap(r.win_[static_cast<std::size_t>(i - 1)], r.win_[static_cast<std::size_t>(i)]);
    } else {
      long long w1 = win_.front(), wl = win_.back();
      r.win_.front() = wl - l;
      r.win_.back() = w1 + l;
    }
    return r;
  }

  /// Left multiplication by s_i: swaps the values i and i+1 (mod l).
  AffineElement simple_times(int i) const {
    check_index(i, level());
    AffineElement r = *this;
    long long l = level();
    long long a = i == 0 ? l : i; // exchange a <-> a+1 (and their translates)
    for (auto& v : r.win_) {
      long long m = ((v % l) + l) % l;
      if (m == a % l)
        v += 1;
      else if (m == (a + 1) % l)
        v -= 1;
    }
    return r;
  }

  /// True iff length(x s_i) < length(x).
  bool has_right_descent(int i) const {
    check_index(i, level());
    return (*this)(i) > (*this)(i + 1);
  }

  /// True iff length(s_i x) < length(x).
  bool has_left_descent(int i) const { return inverse().has_right_descent(i); }

  AffineElement inverse() const {
    int l = level();
    AffineElement r(l);
    for (int i = 1; i <= l; ++i) {
      long long v = win_[static_cast<std::size_t>(i - 1)];
      long long q = v >= 1 ? (v - 1) / l : -((l - v) / l);
      long long pos = v - q * l;
      r.win_[static_cast<std::size_t>(pos - 1)] = i - q * l;
    }
    return r;
  }

  static void check_index(int i, int l) {
    if (i < 0 || i >= l)
      throw IndexError("generator index " + std::to_string(i) + " out of range for level " +
                       std::to_string(l));
  }

private:
  std::vector<long long> win_;
};

inline AffineElement identity(int l) { return AffineElement(l); }

inline AffineElement simple(int i, int l) {
  AffineElement::check_index(i, l);
  return AffineElement(l).times_simple(i);
}

inline void check_level(AffineElement const& a, AffineElement const& b) {
  if (a.level() != b.level())
    throw LevelMismatch("level " + std::to_string(a.level()) + " vs level " +
                        std::to_string(b.level()));
}

/// Composition (a b)(i) = a(b(i)).
inline AffineElement mult(AffineElement const& a, AffineElement const& b) {
  check_level(a, b);
  std::vector<long long> w(static_cast<std::size_t>(a.level()));
  for (int i = 1; i <= a.level(); ++i)
    w[static_cast<std::size_t>(i - 1)] = a(b(i));
  return AffineElement::from_window(std::move(w));
}

inline AffineElement eval_word(Word const& word, int l) {
  AffineElement x(l);
  for (int i : word)
    x = x.times_simple(i);
  return x;
}

namespace detail {
inline long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}
} // namespace detail

/// Coxeter length via the inversion count of the affine permutation.
inline int length(AffineElement const& x) {
  int l = x.level();
  auto const& w = x.window();
  long long total = 0;
  for (int i = 0; i < l; ++i)
    for (int j = i + 1; j < l; ++j) {
      long long f = detail::floor_div(w[static_cast<std::size_t>(j)] - w[static_cast<std::size_t>(i)], l);
      total += f < 0 ? -f : f;
    }
  return static_cast<int>(total);
}

/// Reduced word obtained by repeatedly stripping the smallest right descent.
inline Word reduced_word(AffineElement x) {
  Word rev;
  while (!x.is_identity()) {
    int l = x.level();
    for (int i = 0; i < l; ++i) {
      if (x.has_right_descent(i)) {
        rev.push_back(i);
        x = x.times_simple(i);
        break;
      }
    }
  }
  return Word(rev.rbegin(), rev.rend());
}

// Dihedral naming for l = 2: s is the generator s_1, t is s_0.
enum class Side { identity, s, t };

struct DihedralForm {
  Side side = Side::identity;
  int k = 0;

  friend bool operator==(DihedralForm const&, DihedralForm const&) = default;

  std::string str() const {
    if (side == Side::identity)
      return "e";
    return std::to_string(k) + (side == Side::s ? "s" : "t");
  }
};

inline constexpr int kGenS = 1;
inline constexpr int kGenT = 0;

inline int side_generator(Side s) { return s == Side::s ? kGenS : kGenT; }

inline Side other(Side s) { return s == Side::s ? Side::t : Side::s; }

/// The alternating word sts... (side s) or tst... (side t) of length k.
inline Word dihedral_word(DihedralForm d) {
  Word w;
  if (d.side == Side::identity)
    return w;
  int g = side_generator(d.side);
  for (int i = 0; i < d.k; ++i)
    w.push_back(i % 2 == 0 ? g : 1 - g);
  return w;
}

inline AffineElement from_dihedral(DihedralForm d) {
  if ((d.side == Side::identity) != (d.k == 0))
    throw ValidationError("dihedral form: k = 0 exactly for the identity");
  return eval_word(dihedral_word(d), 2);
}

inline DihedralForm dihedral_form(AffineElement const& x) {
  if (x.level() != 2)
    throw LevelMismatch("dihedral form requires level 2, got " + std::to_string(x.level()));
  int k = length(x);
  if (k == 0)
    return {};
  // The left descent is the first letter of the unique reduced word.
  Side side = x.has_left_descent(kGenS) ? Side::s : Side::t;
  return {side, k};
}

inline DihedralForm parse_dihedral(std::string const& s) {
  if (s == "e" || s == "0" || s == "id")
    return {};
  if (s.size() < 2 || (s.back() != 's' && s.back() != 't'))
    throw ParseError("bad dihedral element '" + s + "' (expected e, <k>s or <k>t)");
  int k = 0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("bad dihedral element '" + s + "'");
    k = k * 10 + (s[i] - '0');
  }
  if (k == 0)
    return {};
  return {s.back() == 's' ? Side::s : Side::t, k};
}

/// Bruhat order x <= w, generic algorithm: pick a right descent s of w;
/// then x <= w iff min(x, xs) <= ws.
inline bool bruhat_leq_generic(AffineElement x, AffineElement w) {
  check_level(x, w);
  int lx = length(x), lw = length(w);
  while (true) {
    if (lx > lw)
      return false;
    if (lw == 0)
      return lx == 0;
    if (lx == lw)
      return x == w;
    int s = 0;
    while (!w.has_right_descent(s))
      ++s;
    w = w.times_simple(s);
    --lw;
    if (x.has_right_descent(s)) {
      x = x.times_simple(s);
      --lx;
    }
  }
}

inline bool bruhat_leq(AffineElement const& x, AffineElement const& w) {
  check_level(x, w);
  if (x.level() == 2) {
    DihedralForm a = dihedral_form(x), b = dihedral_form(w);
    return a.k < b.k || (a.k == b.k && a.side == b.side);
  }
  return bruhat_leq_generic(x, w);
}

/// Human label: dihedral form for l = 2, window otherwise.
inline std::string label(AffineElement const& x) {
  if (x.level() == 2)
    return dihedral_form(x).str();
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < x.window().size(); ++i)
    os << (i ? "," : "") << x.window()[i];
  os << "]";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, AffineElement const& x) { return os << label(x); }

inline std::string word_string(Word const& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      s += ' ';
    s += 's' + std::to_string(w[i]);
  }
  return s;
}

/// Parses "s1 s3 s0", compact "130232", or (l = 2) letters "ststs".
inline Word parse_word(std::string const& text, int l) {
  Word w;
  auto push = [&](int g) {
    if (g < 0 || g >= l)
      throw ParseError("generator s" + std::to_string(g) + " out of range for level " +
                       std::to_string(l));
    w.push_back(g);
  };
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '.') {
      ++i;
    } else if (c == 's' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      std::size_t j = i + 1;
      int g = 0;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
        g = g * 10 + (text[j++] - '0');
      push(g);
      i = j;
    } else if ((c == 's' || c == 't') && l == 2) {
      push(c == 's' ? kGenS : kGenT);
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      push(c - '0');
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "' in word '" + text + "'");
    }
  }
  return w;
}

} // namespace blobkl
