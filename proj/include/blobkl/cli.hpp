#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_io.hpp"

namespace blobkl::cli {

/// Everything the command line can set. Raw list flags are kept as typed so
/// a reproducer dump shows exactly what was passed.
struct RunConfig {
  std::string subcommand;
  std::optional<int> e, l, n, p;
  std::string kappa, lambda, mu, word, w;
  std::uint64_t seed = 42;
  int instances = 200;
  int jobs = 1;
  std::optional<std::size_t> cap;
  std::string suite = "all";
  bool cross_check = false;
  std::string format;  // empty until defaulted per subcommand

  Json to_json() const {
    Json j;
    j["subcommand"] = subcommand;
    auto opt = [&](char const* k, std::optional<int> const& v) { j[k] = v ? Json(*v) : Json(nullptr); };
    opt("e", e);
    opt("l", l);
    opt("n", n);
    opt("p", p);
    j["kappa"] = kappa;
    j["lambda"] = lambda;
    j["mu"] = mu;
    j["word"] = word;
    j["w"] = w;
    j["seed"] = seed;
    j["instances"] = instances;
    j["jobs"] = jobs;
    j["cap"] = cap ? Json(*cap) : Json(nullptr);
    j["suite"] = suite;
    j["cross_check"] = cross_check;
    j["format"] = format;
    return j;
  }
};

namespace detail {

// Runs f, prefixing any validation message with the flag it came from.
template <class F>
auto flagged(std::string const& flag, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (ValidationError const& e) {
    std::string msg = e.what();
    if (msg.rfind("--", 0) == 0)
      throw;
    throw ValidationError(flag + ": " + msg);
  }
}

inline std::vector<int> parse_int_list(std::string const& text, std::string const& flag) {
  if (text.empty())
    throw ValidationError(flag + " is required");
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (std::exception const&) {
      used = std::string::npos;
    }
    if (used != item.size() || item.empty())
      throw ValidationError(flag + ": '" + text + "' is not a comma-separated list of integers");
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',')
    throw ValidationError(flag + ": trailing comma in '" + text + "'");
  return out;
}

inline BlobParams params_of(RunConfig const& c) {
  if (!c.e)
    throw ValidationError("--e is required");
  auto kappa = parse_int_list(c.kappa, "--kappa");
  if (c.l && *c.l != static_cast<int>(kappa.size()))
    throw LevelMismatch("--l: level " + std::to_string(*c.l) + " does not match --kappa with " +
                        std::to_string(kappa.size()) + " entries");
  if (*c.e < 2)
    throw ValidationError("--e: must be >= 2, got " + std::to_string(*c.e));
  return flagged("--kappa", [&] { return BlobParams(*c.e, kappa); });
}

inline OneColMultipartition multipartition_of(std::string const& text, std::string const& flag,
                                              BlobParams const& params, std::optional<int> n) {
  auto h = parse_int_list(text, flag);
  return flagged(flag, [&] {
    OneColMultipartition m(h);
    check_level(m, params);
    if (n && m.size() != *n)
      throw SizeMismatch("size " + std::to_string(m.size()) + " differs from --n " + std::to_string(*n));
    return m;
  });
}

inline int level_of(RunConfig const& c) {
  int l = c.l.value_or(2);
  if (l < 2)
    throw ValidationError("--l: level must be >= 2, got " + std::to_string(l));
  return l;
}

// Element and expression from --w and/or --word.
inline std::pair<AffineElement, Word> element_of(RunConfig const& c, int l) {
  if (c.word.empty() && c.w.empty())
    throw ValidationError("--word or --w is required");
  if (c.word.empty()) {
    AffineElement w = flagged("--w", [&] { return element_from_label(c.w, l); });
    return {w, reduced_word(w)};
  }
  Word word = flagged("--word", [&] { return parse_word(c.word, l); });
  AffineElement w = eval_word(word, l);
  if (static_cast<int>(word.size()) != length(w))
    throw ValidationError("--word: " + word_string(word) + " is not reduced (it evaluates to " + label(w) +
                          " of length " + std::to_string(length(w)) + ")");
  if (!c.w.empty()) {
    AffineElement given = flagged("--w", [&] { return element_from_label(c.w, l); });
    if (given != w)
      throw ValidationError("--w: " + c.w + " differs from the value " + label(w) + " of --word");
  }
  return {w, word};
}

inline std::string csv_field(std::string const& s) {
  if (s.find_first_of(",\"\n") == std::string::npos)
    return s;
  std::string q = "\"";
  for (char ch : s)
    q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

inline std::string text_of(LaurentPoly const& f) { return f.to_tex(); }

inline std::string join_names(std::vector<std::string> const& v) {
  std::string s;
  for (auto const& x : v)
    s += (s.empty() ? "" : ", ") + x;
  return s;
}

inline std::string window_text(AffineElement const& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.window().size(); ++i)
    s += (i ? "," : "") + std::to_string(w.window()[i]);
  return s + "]";
}

[[noreturn]] inline void bad_format(RunConfig const& c) {
  throw ValidationError("--format: " + c.format + " is not available for " + c.subcommand);
}

// ---- subcommands ----

inline int cmd_kl(RunConfig const& c, std::ostream& out, bool p_required) {
  int l = level_of(c);
  int p = c.p.value_or(0);
  if (p_required && !c.p)
    throw ValidationError("--p is required");
  flagged("--p", [&] { blobkl::detail::check_characteristic(p, l); });
  if (p_required && p == 0)
    throw ValidationError("--p: pkl needs a prime, got 0");
  auto [w, word] = element_of(c, l);
  KLTable t = kl_table(w, p, &word);
  if (c.format == "json") {
    out << to_json(t).dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "x,length,h\n";
    for (auto const& [x, h] : blobkl::detail::sorted_rows(t.h))
      out << csv_field(label(x)) << "," << length(x) << "," << csv_field(text_of(h)) << "\n";
  } else if (c.format == "tex") {
    out << "% w = " << label(w) << ", p = " << p << ", word " << word_string(word) << "\n";
    out << "\\begin{tabular}{lll}\n$x$ & $\\ell(x)$ & $h_{x,w}$ \\\\\n\\hline\n";
    for (auto const& [x, h] : blobkl::detail::sorted_rows(t.h))
      out << "$" << label(x) << "$ & " << length(x) << " & $" << text_of(h) << "$ \\\\\n";
    out << "\\end{tabular}\n";
  } else {
    out << "w = " << label(w) << "  p = " << p << "  word = " << word_string(word) << "\n";
    for (auto const& [x, h] : blobkl::detail::sorted_rows(t.h))
      out << "h(" << label(x) << ") = " << text_of(h) << "\n";
    for (auto const& [y, a] : blobkl::detail::sorted_rows(t.aux))
      if (y != w)
        out << "aux(" << label(y) << ") = " << text_of(a) << "\n";
  }
  return 0;
}

inline int cmd_bs(RunConfig const& c, std::ostream& out) {
  int l = level_of(c);
  if (c.word.empty())
    throw ValidationError("--word is required");
  Word word = flagged("--word", [&] { return parse_word(c.word, l); });
  HeckeElement h = bott_samelson(word, l);
  auto rows = blobkl::detail::sorted_rows(h.support());
  if (c.format == "json") {
    out << to_json(h, word).dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "x,length,coefficient\n";
    for (auto const& [x, f] : rows)
      out << csv_field(label(x)) << "," << length(x) << "," << csv_field(text_of(f)) << "\n";
  } else if (c.format == "tex") {
    out << "\\begin{tabular}{ll}\n$x$ & coefficient of $H_x$ \\\\\n\\hline\n";
    for (auto const& [x, f] : rows)
      out << "$" << label(x) << "$ & $" << text_of(f) << "$ \\\\\n";
    out << "\\end{tabular}\n";
  } else {
    for (auto const& [x, f] : rows)
      out << label(x) << ": " << text_of(f) << "\n";
  }
  return 0;
}

inline int cmd_tableaux(RunConfig const& c, std::ostream& out) {
  BlobParams params = params_of(c);
  auto lambda = multipartition_of(c.lambda, "--lambda", params, c.n);
  auto ts = flagged("--cap", [&] { return enumerate_std_same_residue(lambda, params); });
  auto residues = residue_sequence(dominant_tableau(lambda), params);
  if (c.format == "json") {
    Json j;
    j["params"] = params_json(params);
    j["lambda"] = lambda.heights;
    j["residues"] = residues;
    j["count"] = ts.size();
    j["tableaux"] = Json::array();
    for (auto const& t : ts)
      j["tableaux"].push_back(
          {{"shape", t.shape(params.l).heights}, {"components", t.components}, {"degree", tableau_degree(t, params)}});
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "index,shape,components,degree\n";
    for (std::size_t i = 0; i < ts.size(); ++i)
      out << i << "," << csv_field(ts[i].shape(params.l).str()) << "," << csv_field(ts[i].str()) << ","
          << tableau_degree(ts[i], params) << "\n";
  } else if (c.format == "plain") {
    out << "residues " << join(residues, ' ') << "\n";
    out << ts.size() << " tableaux\n";
    for (auto const& t : ts)
      out << t.shape(params.l).str() << "  " << t.str() << "  deg " << tableau_degree(t, params) << "\n";
  } else {
    bad_format(c);
  }
  return 0;
}

inline int cmd_celldim(RunConfig const& c, std::ostream& out) {
  BlobParams params = params_of(c);
  auto lambda = multipartition_of(c.lambda, "--lambda", params, c.n);
  std::vector<std::pair<OneColMultipartition, LaurentPoly>> rows;
  if (!c.mu.empty()) {
    auto mu = multipartition_of(c.mu, "--mu", params, std::nullopt);
    if (mu.size() != lambda.size())
      throw SizeMismatch("--mu: size " + std::to_string(mu.size()) + " differs from --lambda size " +
                         std::to_string(lambda.size()));
    rows.emplace_back(mu, flagged("--cap", [&] { return graded_cell_dim(lambda, mu, params); }));
  } else {
    for (auto const& [mu, f] : flagged("--cap", [&] { return graded_cell_dims(lambda, params); }))
      rows.emplace_back(mu, f);
  }
  if (c.format == "json") {
    Json j;
    j["params"] = params_json(params);
    j["lambda"] = lambda.heights;
    j["cells"] = Json::array();
    for (auto const& [mu, f] : rows)
      j["cells"].push_back({{"mu", mu.heights}, {"dim", to_json(f)}});
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "mu,dim\n";
    for (auto const& [mu, f] : rows)
      out << csv_field(mu.str()) << "," << csv_field(text_of(f)) << "\n";
  } else if (c.format == "plain") {
    for (auto const& [mu, f] : rows)
      out << mu.str() << ": " << text_of(f) << "\n";
  } else {
    bad_format(c);
  }
  return 0;
}

inline int cmd_alcove(RunConfig const& c, std::ostream& out) {
  BlobParams params = params_of(c);
  auto lambda = multipartition_of(c.lambda, "--lambda", params, c.n);
  auto seq = flagged("--lambda", [&] { return hyperplane_sequence(lambda, params); });
  AffineElement w = w_of(lambda, params);
  Word word = principal_word(lambda, params);
  if (c.format == "json") {
    Json j;
    j["params"] = params_json(params);
    j["lambda"] = lambda.heights;
    j["hyperplanes"] = Json::array();
    j["hit_levels"] = Json::array();
    for (auto const& hit : seq) {
      Json h = to_json(hit.plane);
      h["level"] = hit.level;
      j["hyperplanes"].push_back(h);
      j["hit_levels"].push_back(hit.level);
    }
    j["w"] = element_json(w);
    j["principal_word"] = word_string(word);
    out << j.dump(2) << "\n";
  } else if (c.format == "plain") {
    out << "hyperplanes";
    for (auto const& hit : seq)
      out << " " << hit.plane.str();
    out << "\nhit levels";
    for (auto const& hit : seq)
      out << " " << hit.level;
    out << "\nwindow = " << window_text(w) << "\n";
    if (params.l == 2)
      out << "dihedral = " << dihedral_form(w).str() << "\n";
    out << "w = " << word_string(word) << "\n";
    out << "length = " << length(w) << "\n";
  } else {
    bad_format(c);
  }
  return 0;
}

inline int cmd_decomp(RunConfig const& c, std::ostream& out) {
  BlobParams params = params_of(c);
  if (params.l != 2)
    throw UnsupportedError("--kappa: decomp needs level 2, got " + std::to_string(params.l) + " entries");
  if (!c.p)
    throw ValidationError("--p is required");
  int p = *c.p;
  if (p < 0 || (p > 0 && !is_prime(p)))
    throw ValidationError("--p: must be 0 or a prime, got " + std::to_string(p));
  auto lambda = multipartition_of(c.lambda, "--lambda", params, c.n);
  auto table = flagged("--lambda", [&] { return blob_graded_decomposition(lambda, params, p); });
  std::optional<std::vector<CrossCheckEntry>> cross;
  if (c.cross_check)
    cross = cross_check_pkl(table);
  if (c.format == "json") {
    Json j = to_json(table, cross ? &*cross : nullptr);
    j["params"] = params_json(params);
    out << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    out << "mu,w,cell_dim,simple_dim,d" << (cross ? ",pkl,equal" : "") << "\n";
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      auto const& e = table.entries[i];
      out << csv_field(e.mu.str()) << "," << label(e.w) << "," << csv_field(text_of(e.cell_dim)) << ","
          << csv_field(text_of(e.simple_dim)) << "," << csv_field(text_of(e.d));
      if (cross)
        out << "," << csv_field(text_of((*cross)[i].hecke)) << "," << ((*cross)[i].equal ? "yes" : "no");
      out << "\n";
    }
  } else if (c.format == "tex") {
    out << "% lambda = " << table.lambda.str() << ", w = " << label(table.w) << ", p = " << p << "\n";
    out << "\\begin{tabular}{ll" << (cross ? "lll" : "l") << "}\n$\\mu$ & $w_\\mu$ & $d_{\\mu,\\lambda}$";
    if (cross)
      out << " & $h_{w_\\mu,w_\\lambda}$ & equal";
    out << " \\\\\n\\hline\n";
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      auto const& e = table.entries[i];
      out << "$" << e.mu.str() << "$ & $" << label(e.w) << "$ & $" << text_of(e.d) << "$";
      if (cross)
        out << " & $" << text_of((*cross)[i].hecke) << "$ & " << ((*cross)[i].equal ? "yes" : "no");
      out << " \\\\\n";
    }
    out << "\\end{tabular}\n";
  } else {
    out << "lambda = " << table.lambda.str() << "  w = " << label(table.w) << "  p = " << p << "\n";
    for (std::size_t i = 0; i < table.entries.size(); ++i) {
      auto const& e = table.entries[i];
      out << e.mu.str() << " " << label(e.w) << ": d = " << text_of(e.d);
      if (cross)
        out << "  pkl = " << text_of((*cross)[i].hecke) << ((*cross)[i].equal ? "  equal" : "  DIFFERENT");
      out << "\n";
    }
  }
  if (cross)
    for (auto const& x : *cross)
      if (!x.equal && p != 2)
        throw ConsistencyError("cross-check failed at mu = " + x.mu.str() + ": blob " + text_of(x.blob) +
                               " vs p-KL " + text_of(x.hecke));
  return 0;
}

inline int cmd_verify(RunConfig const& c, std::ostream& out) {
  SuiteOptions opt;
  opt.seed = c.seed;
  opt.instances = c.instances;
  opt.jobs = c.jobs;
  std::vector<std::string> names;
  if (c.suite == "all") {
    names = suite_names();
  } else {
    auto known = suite_names();
    if (std::find(known.begin(), known.end(), c.suite) == known.end())
      throw ValidationError("--suite: unknown suite '" + c.suite + "' (known: all, " + join_names(known) + ")");
    names = {c.suite};
  }
  bool ok = true;
  Json all = Json::array();
  for (auto const& name : names) {
    SuiteReport r = run_suite(name, opt);
    ok = ok && r.ok();
    if (c.format == "json") {
      all.push_back(to_json(r));
      continue;
    }
    out << r.suite << " v" << r.version << " seed " << r.seed << ": " << r.summary() << " (" << r.checks
        << " checks)" << (r.ok() ? "" : " FAILED") << "\n";
    for (auto const& [i, d] : r.failures)
      out << "  counterexample #" << i << ": " << d << "\n";
    for (auto const& [i, d] : r.findings)
      out << "  finding #" << i << ": " << d << "\n";
  }
  if (c.format == "json")
    out << all.dump(2) << "\n";
  if (!ok)
    throw ConsistencyError("verify found counterexamples");
  return 0;
}

} // namespace detail

/// Maps exceptions from `body` to exit codes: 2 with a one-line diagnostic
/// for bad input, 3 with a reproducer dump of the config for an internal
/// consistency failure. Nothing reaches `out` on bad input; a consistency
/// failure still shows what was computed before it.
inline int guarded(RunConfig const& c, std::ostream& out, std::ostream& err,
                   std::function<int(std::ostream&)> const& body) {
  std::ostringstream buf;
  try {
    std::optional<ScopedCap> scoped;
    if (c.cap)
      scoped.emplace(*c.cap);
    int code = body(buf);
    out << buf.str();
    return code;
  } catch (ValidationError const& e) {
    std::string msg = e.what();
    if (msg.rfind("--", 0) != 0)
      msg = c.subcommand + ": " + msg;
    err << "error: " << msg << "\n";
    return 2;
  } catch (Error const& e) {
    out << buf.str();
    err << "internal consistency failure: " << e.what() << "\n";
    err << "reproducer: " << c.to_json().dump() << "\n";
    return 3;
  }
}

/// Runs one command line (without the program name). Output goes to `out`,
/// diagnostics to `err`. Returns 0, 2 on bad input, 3 on an internal
/// consistency failure.
inline int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Exact Kazhdan-Lusztig and blob algebra computations", "blobkl"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  std::vector<std::string> const formats{"json", "csv", "tex", "plain"};
  auto sub = [&](char const* name, char const* desc) {
    auto* s = app.add_subcommand(name, desc);
    s->add_option("--format", c.format, "json, csv, tex or plain")->check(CLI::IsMember(formats));
    return s;
  };
  auto blob_flags = [&](CLI::App* s) {
    s->add_option("--e", c.e, "quantum characteristic e");
    s->add_option("--l", c.l, "level (defaults to the length of --kappa)");
    s->add_option("--kappa", c.kappa, "multicharge, comma separated");
    s->add_option("--n", c.n, "size of --lambda, checked if given");
    s->add_option("--lambda", c.lambda, "column heights, comma separated");
  };
  auto word_flags = [&](CLI::App* s, bool with_p) {
    s->add_option("--l", c.l, "level, default 2");
    s->add_option("--word", c.word, "expression, e.g. \"s1 s0 s1\", \"101\" or \"sts\"");
    s->add_option("--w", c.w, "element: 5s / 4t / e for level 2, else a window [a,b,...]");
    if (with_p)
      s->add_option("--p", c.p, "characteristic: 0 or a prime (primes need level 2)");
  };
  auto cap_flag = [&](CLI::App* s) {
    s->add_option("--cap", c.cap, "enumeration cap, overrides BLOBKL_CAP")->check(CLI::PositiveNumber);
  };

  word_flags(sub("kl", "KL table of an element (p = 0 unless --p)"), true);
  word_flags(sub("pkl", "p-canonical table in level 2"), true);
  word_flags(sub("bs", "Bott-Samelson expansion of a word"), false);
  auto* tab = sub("tableaux", "standard tableaux with the residue sequence of lambda");
  blob_flags(tab);
  cap_flag(tab);
  auto* cd = sub("celldim", "graded cell module dimensions");
  blob_flags(cd);
  cd->add_option("--mu", c.mu, "restrict to this cell");
  cap_flag(cd);
  blob_flags(sub("alcove", "hyperplane sequence and principal word of lambda"));
  auto* dec = sub("decomp", "graded decomposition numbers in level 2");
  blob_flags(dec);
  dec->add_option("--p", c.p, "characteristic: 0 or a prime");
  dec->add_flag("--cross-check", c.cross_check, "compare with p-KL polynomials");
  cap_flag(dec);
  auto* ver = sub("verify", "run a named verification suite over a seeded corpus");
  ver->add_option("--suite", c.suite, "suite name or all");
  ver->add_option("--seed", c.seed, "corpus seed");
  ver->add_option("--instances", c.instances, "corpus size")->check(CLI::PositiveNumber);
  ver->add_option("--jobs", c.jobs, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  cap_flag(ver);

  if (!args.empty() && args.front().rfind("-", 0) != 0 && !app.get_subcommand_no_throw(args.front())) {
    err << "error: unknown subcommand '" << args.front() << "' (expected kl, pkl, bs, tableaux, celldim, alcove, decomp or verify)\n";
    return 2;
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (CLI::CallForHelp const&) {
    auto subs = app.get_subcommands();
    out << (subs.empty() ? app.help() : subs.front()->help());
    return 0;
  } catch (CLI::CallForAllHelp const&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (CLI::ParseError const& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  if (c.format.empty())
    c.format = c.subcommand == "verify" ? "plain" : "json";

  return guarded(c, out, err, [&c](std::ostream& buf) {
    auto const& s = c.subcommand;
    if (s == "kl")
      return detail::cmd_kl(c, buf, false);
    if (s == "pkl")
      return detail::cmd_kl(c, buf, true);
    if (s == "bs")
      return detail::cmd_bs(c, buf);
    if (s == "tableaux")
      return detail::cmd_tableaux(c, buf);
    if (s == "celldim")
      return detail::cmd_celldim(c, buf);
    if (s == "alcove")
      return detail::cmd_alcove(c, buf);
    if (s == "decomp")
      return detail::cmd_decomp(c, buf);
    return detail::cmd_verify(c, buf);
  });
}

} // namespace blobkl::cli
