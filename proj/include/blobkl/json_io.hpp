#pragma once

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "affine_weyl.hpp"
#include "alcove.hpp"
#include "blob_comb.hpp"
#include "dihedral_blob.hpp"
#include "hecke.hpp"
#include "laurent.hpp"
#include "verify.hpp"

namespace blobkl {

using Json = nlohmann::ordered_json;

// Coefficients that fit in 64 bits are JSON numbers, larger ones decimal strings.
inline Json int_to_json(Int const& c) {
  static Int const lo = std::numeric_limits<long long>::min(), hi = std::numeric_limits<long long>::max();
  if (c >= lo && c <= hi)
    return static_cast<long long>(c);
  return c.str();
}

inline Int int_from_json(Json const& j) {
  if (j.is_number_integer())
    return Int(j.get<long long>());
  if (j.is_string())
    return Int(j.get<std::string>());
  throw ParseError("expected an integer or a decimal string, got " + j.dump());
}

/// [[exponent, coefficient], ...] by increasing exponent.
inline Json to_json(LaurentPoly const& p) {
  Json a = Json::array();
  for (auto const& [e, c] : p.terms())
    a.push_back(Json::array({e, int_to_json(c)}));
  return a;
}

inline LaurentPoly laurent_from_json(Json const& j) {
  if (!j.is_array())
    throw ParseError("Laurent polynomial must be an array of [exponent, coefficient] pairs");
  LaurentPoly p;
  for (auto const& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer())
      throw ParseError("bad Laurent term " + term.dump());
    p.add_term(term[0].get<int>(), int_from_json(term[1]));
  }
  return p;
}

/// Parses a label as printed by label(): "e", "5s", "4t" for level 2, a window
/// "[a,b,c]" otherwise.
inline AffineElement element_from_label(std::string const& s, int l) {
  if (l == 2)
    return from_dihedral(parse_dihedral(s));
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("expected a window like [1,2,3], got '" + s + "'");
  std::vector<long long> win;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    try {
      win.push_back(std::stoll(item, &used));
    } catch (std::exception const&) {
      used = std::string::npos;
    }
    if (used != item.size())
      throw ParseError("bad window entry '" + item + "' in '" + s + "'");
  }
  if (static_cast<int>(win.size()) != l)
    throw LevelMismatch("window '" + s + "' does not have " + std::to_string(l) + " entries");
  return AffineElement::from_window(std::move(win));
}

namespace detail {

// Rows sorted by decreasing length, then by label, so output is stable.
template <class Map>
std::vector<std::pair<AffineElement, LaurentPoly>> sorted_rows(Map const& m) {
  std::vector<std::pair<AffineElement, LaurentPoly>> rows(m.begin(), m.end());
  std::stable_sort(rows.begin(), rows.end(), [](auto const& a, auto const& b) {
    int la = length(a.first), lb = length(b.first);
    return la != lb ? la > lb : label(a.first) < label(b.first);
  });
  return rows;
}

} // namespace detail

inline Json to_json(KLTable const& t) {
  Json j;
  j["w"] = label(t.w);
  j["l"] = t.w.level();
  j["p"] = t.p;
  j["word"] = word_string(t.word);
  j["rows"] = Json::array();
  for (auto const& [x, h] : detail::sorted_rows(t.h))
    j["rows"].push_back({{"x", label(x)}, {"length", length(x)}, {"h", to_json(h)}});
  j["aux"] = Json::array();
  for (auto const& [y, a] : detail::sorted_rows(t.aux))
    j["aux"].push_back({{"y", label(y)}, {"a", to_json(a)}});
  return j;
}

inline KLTable kl_table_from_json(Json const& j) {
  try {
    int l = j.at("l").get<int>();
    KLTable t;
    t.w = element_from_label(j.at("w").get<std::string>(), l);
    t.p = j.at("p").get<int>();
    t.word = parse_word(j.at("word").get<std::string>(), l);
    for (auto const& row : j.at("rows"))
      t.h[element_from_label(row.at("x").get<std::string>(), l)] = laurent_from_json(row.at("h"));
    for (auto const& row : j.at("aux"))
      t.aux[element_from_label(row.at("y").get<std::string>(), l)] = laurent_from_json(row.at("a"));
    return t;
  } catch (Json::exception const& e) {
    throw ParseError(std::string("KL table JSON: ") + e.what());
  }
}

inline Json to_json(HeckeElement const& h, Word const& word) {
  Json j;
  j["l"] = h.level();
  j["word"] = word_string(word);
  j["terms"] = Json::array();
  for (auto const& [x, c] : detail::sorted_rows(h.support()))
    j["terms"].push_back({{"x", label(x)}, {"length", length(x)}, {"c", to_json(c)}});
  return j;
}

inline Json params_json(BlobParams const& p) {
  return {{"e", p.e}, {"l", p.l}, {"kappa", p.kappa}};
}

inline Json to_json(Hyperplane const& h) {
  return {{"i", h.i}, {"j", h.j}, {"m", h.m}, {"name", h.str()}};
}

inline Json element_json(AffineElement const& w) {
  Json j;
  j["window"] = w.window();
  j["length"] = length(w);
  j["reduced_word"] = word_string(reduced_word(w));
  if (w.level() == 2)
    j["dihedral"] = dihedral_form(w).str();
  return j;
}

inline Json to_json(BlobDecomposition const& t, std::vector<CrossCheckEntry> const* cross) {
  Json j;
  j["lambda"] = t.lambda.heights;
  j["w"] = label(t.w);
  j["p"] = t.p;
  j["entries"] = Json::array();
  for (auto const& e : t.entries)
    j["entries"].push_back({{"mu", e.mu.heights},
                            {"w", label(e.w)},
                            {"cell_dim", to_json(e.cell_dim)},
                            {"simple_dim", to_json(e.simple_dim)},
                            {"d", to_json(e.d)},
                            {"seed", int_to_json(e.seed)}});
  if (cross) {
    j["cross_check"] = Json::array();
    for (auto const& c : *cross)
      j["cross_check"].push_back(
          {{"mu", c.mu.heights}, {"w", label(c.w)}, {"blob", to_json(c.blob)}, {"pkl", to_json(c.hecke)}, {"equal", c.equal}});
  }
  return j;
}

inline Json to_json(SuiteReport const& r) {
  Json j;
  j["suite"] = r.suite;
  j["version"] = r.version;
  j["seed"] = r.seed;
  j["instances"] = r.instances;
  j["passed"] = r.passed;
  j["checks"] = r.checks;
  j["summary"] = r.summary();
  j["failures"] = Json::array();
  for (auto const& [i, d] : r.failures)
    j["failures"].push_back({{"instance", i}, {"dump", d}});
  j["findings"] = Json::array();
  for (auto const& [i, d] : r.findings)
    j["findings"].push_back({{"instance", i}, {"detail", d}});
  return j;
}

} // namespace blobkl
