#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace blobkl {

using Int = boost::multiprecision::cpp_int;

/// Sparse Laurent polynomial in one variable v with arbitrary-precision
/// integer coefficients. Zero coefficients are never stored, so two
/// polynomials are equal iff their term maps are equal.
class LaurentPoly {
public:
  using Terms = std::map<int, Int>;

  LaurentPoly() = default;

  /// The constant polynomial c.
  LaurentPoly(long long c) { add_term(0, Int(c)); }

  LaurentPoly(std::initializer_list<std::pair<int, long long>> terms) {
    for (auto const& [e, c] : terms)
      add_term(e, Int(c));
  }

  static LaurentPoly monomial(int exponent, Int coefficient = 1) {
    LaurentPoly p;
    p.add_term(exponent, std::move(coefficient));
    return p;
  }

  static LaurentPoly v() { return monomial(1); }
  static LaurentPoly v_inv() { return monomial(-1); }

  Terms const& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Int coeff(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Int(0) : it->second;
  }

  // Callers must check is_zero() first.
  int min_exponent() const { return terms_.begin()->first; }
  int max_exponent() const { return terms_.rbegin()->first; }

  /// Constant term; for polynomials in Z[v] this is the value at v = 0.
  Int constant_term() const { return coeff(0); }

  /// Value at v = 1, i.e. the sum of all coefficients.
  Int at_one() const {
    Int s = 0;
    for (auto const& [e, c] : terms_)
      s += c;
    return s;
  }

  void add_term(int exponent, Int const& c) {
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(exponent, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(LaurentPoly const& o) {
    for (auto const& [e, c] : o.terms_)
      add_term(e, c);
    return *this;
  }

  LaurentPoly& operator-=(LaurentPoly const& o) {
    for (auto const& [e, c] : o.terms_)
      add_term(e, -c);
    return *this;
  }

  LaurentPoly& operator*=(LaurentPoly const& o) {
    *this = *this * o;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, LaurentPoly const& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, LaurentPoly const& b) { return a -= b; }

  friend LaurentPoly operator-(LaurentPoly a) {
    for (auto& [e, c] : a.terms_)
      c = -c;
    return a;
  }

  friend LaurentPoly operator*(LaurentPoly const& a, LaurentPoly const& b) {
    LaurentPoly r;
    for (auto const& [ea, ca] : a.terms_)
      for (auto const& [eb, cb] : b.terms_)
        r.add_term(ea + eb, ca * cb);
    return r;
  }

  /// Multiply by v^shift.
  LaurentPoly shifted(int shift) const {
    LaurentPoly r;
    for (auto const& [e, c] : terms_)
      r.terms_.emplace_hint(r.terms_.end(), e + shift, c);
    return r;
  }

  friend bool operator==(LaurentPoly const& a, LaurentPoly const& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(LaurentPoly const& a, LaurentPoly const& b) { return !(a == b); }

  bool has_nonnegative_coefficients() const {
    for (auto const& [e, c] : terms_)
      if (c < 0)
        return false;
    return true;
  }

  /// True iff every exponent is >= lowest (vacuous for 0).
  bool exponents_at_least(int lowest) const { return is_zero() || min_exponent() >= lowest; }

  bool in_polynomial_ring() const { return exponents_at_least(0); }

  std::string to_tex() const;

private:
  Terms terms_;
};

/// v -> v^{-1}.
inline LaurentPoly bar(LaurentPoly const& a) {
  LaurentPoly r;
  for (auto const& [e, c] : a.terms())
    r.add_term(-e, c);
  return r;
}

inline bool is_self_dual(LaurentPoly const& a) { return bar(a) == a; }

struct SelfDualSplit {
  LaurentPoly self_dual;  // g with bar(g) = g
  LaurentPoly remainder;  // h = f - g
};

namespace detail {

inline std::string describe(LaurentPoly const& f) {
  return f.to_tex();
}

// g read off from the nonpositive part of f: g_i = f_i for i < 0, g_0 = f_0 - c0,
// g_i = f_{-i} for i > 0.
inline LaurentPoly mirror_nonpositive(LaurentPoly const& f, Int const& c0) {
  LaurentPoly g;
  for (auto const& [e, c] : f.terms()) {
    if (e < 0) {
      g.add_term(e, c);
      g.add_term(-e, c);
    } else if (e == 0) {
      g.add_term(0, c - c0);
    }
  }
  if (f.coeff(0) == 0)
    g.add_term(0, -c0);
  return g;
}

} // namespace detail

/// Unique decomposition f = g + h with bar(g) = g and h in vZ[v].
/// Both callers expect h to have nonnegative coefficients, so a negative
/// coefficient in h is reported as a DecompositionError as well.
inline SelfDualSplit split_selfdual_strict(LaurentPoly const& f) {
  SelfDualSplit s;
  s.self_dual = detail::mirror_nonpositive(f, 0);
  s.remainder = f - s.self_dual;
  if (!s.remainder.exponents_at_least(1) || !s.remainder.has_nonnegative_coefficients())
    throw DecompositionError("split_selfdual_strict: f = " + detail::describe(f) +
                             " leaves remainder " + detail::describe(s.remainder) +
                             " outside vZ>=0[v]");
  return s;
}

/// Decomposition f = g + h with bar(g) = g, h in Z[v] and h(0) = c.
/// Same positivity requirement on h as the strict split.
inline SelfDualSplit split_selfdual_seeded(LaurentPoly const& f, Int const& c) {
  SelfDualSplit s;
  s.self_dual = detail::mirror_nonpositive(f, c);
  s.remainder = f - s.self_dual;
  if (!s.remainder.in_polynomial_ring() || s.remainder.constant_term() != c ||
      !s.remainder.has_nonnegative_coefficients())
    throw DecompositionError("split_selfdual_seeded: f = " + detail::describe(f) +
                             " with seed " + c.str() + " leaves remainder " +
                             detail::describe(s.remainder));
  return s;
}

inline std::string LaurentPoly::to_tex() const {
  if (is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (auto const& [e, c] : terms_) {
    Int mag = c < 0 ? Int(-c) : c;
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (mag != 1)
      os << mag;
    os << "v";
    if (e != 1)
      os << "^{" << e << "}";
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, LaurentPoly const& p) {
  return os << p.to_tex();
}

} // namespace blobkl
