#ifndef CLOCKTHM_CORPUS_HPP
#define CLOCKTHM_CORPUS_HPP

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "alexander.hpp"
#include "diagram.hpp"
#include "dynamics.hpp"
#include "export.hpp"
#include "states.hpp"

namespace clockthm {

/// Expected values read from "#@ key: value" lines of a corpus file.
struct Expected {
  std::optional<std::size_t> states;
  std::optional<LaurentPoly> poly;  // under the entry's own table, else the standard one
  std::optional<std::string> clocked;
  std::optional<std::string> counterclocked;
  std::optional<std::vector<int>> signs;
  std::optional<LinkoidKind> kind;
};

struct CorpusEntry {
  std::string name;
  std::string source;
  std::string origin;                  // transcribed | computed | trivial
  std::optional<std::string> eq_class;  // Reidemeister equivalence class
  Expected expected;
};

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// "none" stands for the empty state of a diagram without crossings
inline std::string fingerprint_field(const std::string& v) { return v == "none" ? "" : v; }

}  // namespace detail

inline CorpusEntry parse_corpus_entry(std::string name, std::string source) {
  CorpusEntry e;
  e.name = std::move(name);
  e.source = std::move(source);
  std::istringstream in(e.source);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.rfind("#@", 0) != 0) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, 1, "metadata line needs 'key: value'");
    std::string key = detail::trim(std::string_view(line).substr(2, colon - 2));
    std::string value = detail::trim(std::string_view(line).substr(colon + 1));
    try {
      if (key == "origin") {
        e.origin = value;
      } else if (key == "class") {
        e.eq_class = value;
      } else if (key == "states") {
        e.expected.states = std::stoull(value);
      } else if (key == "poly") {
        e.expected.poly = parse_poly(value);
      } else if (key == "clocked") {
        e.expected.clocked = detail::fingerprint_field(value);
      } else if (key == "counterclocked") {
        e.expected.counterclocked = detail::fingerprint_field(value);
      } else if (key == "kind") {
        if (value != "knot-type" && value != "proper") throw InvalidArgument("kind must be knot-type or proper");
        e.expected.kind = value == "knot-type" ? LinkoidKind::knot_type : LinkoidKind::proper;
      } else if (key == "signs") {
        std::vector<int> signs;
        if (value != "none") {
          std::istringstream ss(value);
          std::string tok;
          while (ss >> tok) {
            if (tok != "+" && tok != "-") throw InvalidArgument("signs are '+' or '-'");
            signs.push_back(tok == "+" ? 1 : -1);
          }
        }
        e.expected.signs = signs;
      } else {
        throw InvalidArgument("unknown metadata key '" + key + "'");
      }
    } catch (const std::logic_error& err) {
      throw ParseError(line_no, colon + 2, std::string(key) + ": " + err.what());
    } catch (const InvalidArgument& err) {
      throw ParseError(line_no, colon + 2, err.what());
    }
  }
  return e;
}

/// Every *.kdf file of a directory, ordered by name (the file stem).
inline std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) throw InvalidArgument("not a directory: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& f : std::filesystem::directory_iterator(dir))
    if (f.is_regular_file() && f.path().extension() == ".kdf") files.push_back(f.path());
  std::sort(files.begin(), files.end());
  std::vector<CorpusEntry> out;
  for (const auto& p : files) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InvalidArgument("cannot read " + p.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
      out.push_back(parse_corpus_entry(p.stem().string(), buf.str()));
    } catch (const ParseError& err) {
      throw ParseError(err.line(), err.column(), p.filename().string() + ": " + err.what());
    }
  }
  return out;
}

// ----------------------------------------------------------------- report

enum class CheckStatus { pass, fail, skip };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
  }
  return "fail";
}

struct CheckResult {
  std::string check;
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct EntryReport {
  std::string name;
  std::string origin;
  int crossings = 0;
  std::size_t states = 0;
  std::string poly;
  std::string matrix_tree;
  std::vector<CheckResult> checks;
  double millis = 0;
};

struct ClassReport {
  std::string name;
  std::vector<std::string> members;
  std::vector<std::string> skipped;  // not starred at the tail
  CheckStatus status = CheckStatus::pass;
  std::string detail;
};

struct RunReport {
  std::vector<EntryReport> entries;
  std::vector<ClassReport> classes;

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& e : entries)
      for (const auto& c : e.checks) n += c.status == CheckStatus::fail;
    for (const auto& c : classes) n += c.status == CheckStatus::fail;
    return n;
  }
  int exit_status() const { return failures() == 0 ? 0 : 1; }
};

struct RunOptions {
  bool all_checks = false;
  std::size_t cap = default_state_cap;
  int seeds = 20;
  int random_tables = 10;
};

/// Table with entries +-W^e, e in [-3, 3], and the odd zero, from a seed.
inline WeightTable random_weight_table(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&]() {
    auto r = rng();
    if (r % 9 == 0) return LaurentPoly{};
    int e = static_cast<int>((r >> 8) % 7) - 3;
    return LaurentPoly::monomial((r >> 16) % 2 ? 1 : -1, e);
  };
  WeightTable t;
  for (auto& m : t.positive) m = pick();
  for (auto& m : t.negative) m = pick();
  return t;
}

namespace detail {

class EntryChecker {
 public:
  EntryChecker(const CorpusEntry& e, const RunOptions& opt, EntryReport& rep) : e_(e), opt_(opt), rep_(rep) {}

  void run() {
    try {
      d_ = parse_kdf(e_.source, e_.name);
    } catch (const Error& err) {
      add("parse", false, err.what());
      return;
    }
    add("parse", true);
    const auto& u = d_.universe();
    rep_.crossings = d_.crossing_count();
    guarded("expected", [&] { expected(); });
    guarded("count-permanent", [&] {
      auto perm = count_states_permanent(u);
      add("count-permanent", perm == BigInt(rep_.states), "permanent " + perm.str() + ", enumerated " + std::to_string(rep_.states));
    });
    guarded("poly-permanent", [&] {
      auto w = d_.weights().value_or(WeightTable::standard());
      add("poly-permanent", permanent_polynomial(d_, w) == mock_alexander(d_, w));
    });
    rep_.matrix_tree = count_states_matrixtree(u).str();
    add("tree-count", true,
        "matrix-tree " + rep_.matrix_tree + (rep_.matrix_tree == std::to_string(rep_.states) ? " == " : " != ") + "states " +
            std::to_string(rep_.states));
    if (!opt_.all_checks) return;
    if (rep_.states > opt_.cap) {
      add_skip("state-space", "more than " + std::to_string(opt_.cap) + " states");
      return;
    }
    states_ = enumerate_states(u, opt_.cap);
    // trails need the starred region to hold an endpoint; an arc star elsewhere can leave closed loops
    const bool standard = u.starred_region() == u.tail_region() || u.starred_region() == u.head_region();
    if (standard)
      guarded("bijection", [&] { bijection(); });
    else
      add_skip("bijection", "starred region holds no endpoint");
    guarded("extremal", [&] { extremal(); });
    guarded("lattice", [&] { lattice(); });
    guarded("removal", [&] { removal(); });
    if (standard)
      guarded("exchange", [&] { exchanges(); });
    else
      add_skip("exchange", "starred region holds no endpoint");
    guarded("poly-tables", [&] { tables(); });
  }

  const LinkoidDiagram& diagram() const { return d_; }

 private:
  void add(const std::string& check, bool ok, std::string detail = "") {
    rep_.checks.push_back({check, ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
  }
  void add_skip(const std::string& check, std::string detail) {
    rep_.checks.push_back({check, CheckStatus::skip, std::move(detail)});
  }
  template <class F>
  void guarded(const std::string& check, F&& f) {
    try {
      f();
    } catch (const CapExceeded& err) {
      add_skip(check, err.what());
    } catch (const Error& err) {
      add(check, false, err.what());
    }
  }

  void expected() {
    const auto& u = d_.universe();
    const auto& x = e_.expected;
    rep_.states = count_states(u);
    auto w = d_.weights().value_or(WeightTable::standard());
    rep_.poly = mock_alexander(d_, w).to_string();
    if (x.states) add("states", *x.states == rep_.states, "expected " + std::to_string(*x.states) + ", got " + std::to_string(rep_.states));
    if (x.signs) add("signs", *x.signs == d_.signs());
    if (x.kind) add("kind", *x.kind == d_.kind(), std::string("got ") + to_string(d_.kind()));
    if (x.poly) add("poly", *x.poly == parse_poly(rep_.poly), "expected " + x.poly->to_string() + ", got " + rep_.poly);
    if (x.clocked) {
      auto top = clocked_state(u).fingerprint();
      add("clocked", *x.clocked == top, "expected " + *x.clocked + ", got " + top);
    }
    if (x.counterclocked) {
      auto bot = counterclocked_state(u).fingerprint();
      add("counterclocked", *x.counterclocked == bot, "expected " + *x.counterclocked + ", got " + bot);
    }
  }

  void bijection() {
    const auto& u = d_.universe();
    std::size_t bad = 0;
    for (const auto& s : states_) {
      auto t = state_to_trail(u, s);
      if (static_cast<int>(t.walk.size()) != u.edge_count() || trail_to_state(u, t) != s) ++bad;
      if (static_cast<int>(trail_to_tree(u, t).edges.size()) != u.crossing_count()) ++bad;
    }
    add("bijection", bad == 0, std::to_string(states_.size()) + " states, " + std::to_string(bad) + " failures");
  }

  void extremal() {
    const auto& u = d_.universe();
    std::set<ClockState> tops, bottoms;
    for (const auto& s : states_) {
      tops.insert(clocked_state(u, {s, std::nullopt, std::nullopt}));
      bottoms.insert(counterclocked_state(u, {s, std::nullopt, std::nullopt}));
    }
    for (int seed = 1; seed <= opt_.seeds; ++seed) {
      const auto& s = states_[static_cast<std::size_t>(seed) % states_.size()];
      tops.insert(clocked_state(u, {s, static_cast<std::uint64_t>(seed), std::nullopt}));
      bottoms.insert(counterclocked_state(u, {s, static_cast<std::uint64_t>(seed), std::nullopt}));
    }
    bool ok = tops.size() == 1 && bottoms.size() == 1;
    if (ok) ok = (states_.size() == 1) == (*tops.begin() == *bottoms.begin());
    add("extremal", ok, std::to_string(tops.size()) + " clocked, " + std::to_string(bottoms.size()) + " counter-clocked");
    if (ok) {
      // moves at the top are all clockwise
      add("clocked-moves", legal_moves(u, *tops.begin(), Sense::counterclockwise).empty());
    }
  }

  void lattice() {
    auto g = state_graph(d_.universe(), opt_.cap);
    auto rep = verify_lattice(g);
    std::string detail = std::to_string(rep.violations.size()) + " violations";
    if (!rep.violations.empty()) detail += ", first: " + rep.violations[0].kind;
    add("lattice", rep.ok(), detail);
    add("reachability", rep.reachable_from_top && rep.connected);
  }

  void removal() {
    std::size_t bad = 0;
    std::string first;
    for (const auto& r : removal_lemma(d_.universe()))
      if (!r.holds) {
        if (!bad) first = "crossing " + std::to_string(r.crossing) + ": " + r.note;
        ++bad;
      }
    add("removal", bad == 0, bad ? first : std::to_string(d_.crossing_count()) + " crossings");
  }

  void exchanges() {
    const auto& u = d_.universe();
    const int n = u.crossing_count();
    const bool knot_type = d_.kind() == LinkoidKind::knot_type;
    std::size_t odd = 0, ok = 0, mixed = 0, failed = 0;
    std::string first_failure;
    std::vector<Trail> trails;
    for (const auto& s : states_) trails.push_back(state_to_trail(u, s));
    if (knot_type)
      for (std::size_t a = 0; a < trails.size(); ++a)
        for (std::size_t b = a + 1; b < trails.size(); ++b) odd += exchange_diff(trails[a], trails[b]).size() % 2;
    for (std::size_t i = 0; i < states_.size(); ++i) {
      std::vector<std::set<int>> site_sets;
      for (int c = 0; c < n; ++c) {
        site_sets.push_back({c});
        for (int c2 = c + 1; c2 < n; ++c2) site_sets.push_back({c, c2});
      }
      for (const auto& sites : site_sets) {
        auto out = apply_resmoothing(u, trails[i], sites);
        const auto* t = std::get_if<Trail>(&out);
        if (!t) continue;
        if (knot_type && sites.size() == 1) ++odd;
        auto s2 = trail_to_state(u, *t);
        if (!exchange_sense(states_[i], s2, exchange_diff(trails[i], *t))) {
          ++mixed;
          continue;
        }
        try {
          factorize_exchange(u, states_[i], s2, opt_.cap);
          ++ok;
        } catch (const TheoryDiscrepancy& err) {
          if (!failed) first_failure = err.what();
          ++failed;
        }
      }
    }
    if (knot_type) add("exchange-parity", odd == 0, std::to_string(odd) + " odd differences");
    add("exchange-factorization", failed == 0,
        std::to_string(ok) + " factorized, " + std::to_string(mixed) + " without definite sense" +
            (failed ? ", " + std::to_string(failed) + " failed: " + first_failure : ""));
  }

  void tables() {
    std::size_t bad = 0;
    for (int k = 1; k <= opt_.random_tables; ++k) {
      auto w = random_weight_table(static_cast<std::uint64_t>(k));
      if (mock_alexander(d_, w) != permanent_polynomial(d_, w)) ++bad;
    }
    add("poly-random-tables", bad == 0, std::to_string(opt_.random_tables) + " tables, " + std::to_string(bad) + " mismatches");
    add("poly-ones", mock_alexander(d_, WeightTable::ones()) == LaurentPoly(BigInt(states_.size())));
  }

  const CorpusEntry& e_;
  const RunOptions& opt_;
  EntryReport& rep_;
  LinkoidDiagram d_;
  std::vector<ClockState> states_;
};

}  // namespace detail

inline RunReport run_corpus(const std::vector<CorpusEntry>& entries, const RunOptions& opt = {}) {
  RunReport report;
  std::map<std::string, ClassReport> classes;
  std::map<std::string, std::optional<std::string>> class_poly;
  for (const auto& e : entries) {
    EntryReport rep;
    rep.name = e.name;
    rep.origin = e.origin;
    auto t0 = std::chrono::steady_clock::now();
    detail::EntryChecker checker(e, opt, rep);
    checker.run();
    rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (e.eq_class) {
      auto& cls = classes[*e.eq_class];
      cls.name = *e.eq_class;
      const bool parsed = !rep.checks.empty() && rep.checks.front().status == CheckStatus::pass;
      const auto& d = checker.diagram();
      if (!parsed || d.star().mode != StarPlacement::Mode::tail || d.weights()) {
        cls.skipped.push_back(e.name);
      } else {
        cls.members.push_back(e.name);
        auto& p = class_poly[cls.name];
        if (!p) {
          p = rep.poly;
        } else if (*p != rep.poly && cls.status != CheckStatus::fail) {
          cls.status = CheckStatus::fail;
          cls.detail = e.name + " gives " + rep.poly + ", " + cls.members.front() + " gives " + *p;
        }
      }
    }
    report.entries.push_back(std::move(rep));
  }
  for (auto& [name, cls] : classes) {
    if (cls.status == CheckStatus::pass) cls.detail = "polynomial " + class_poly[name].value_or("none");
    report.classes.push_back(std::move(cls));
  }
  return report;
}

inline Json to_json(const RunReport& r, bool timing = false) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json checks = Json::array();
    for (const auto& c : e.checks) checks.push_back({{"check", c.check}, {"status", to_string(c.status)}, {"detail", c.detail}});
    Json j = {{"name", e.name},       {"origin", e.origin},           {"crossings", e.crossings}, {"states", e.states},
              {"poly", e.poly},       {"matrix_tree", e.matrix_tree}, {"checks", checks}};
    if (timing) j["millis"] = e.millis;
    entries.push_back(j);
  }
  Json classes = Json::array();
  for (const auto& c : r.classes)
    classes.push_back({{"class", c.name}, {"members", c.members}, {"skipped", c.skipped}, {"status", to_string(c.status)}, {"detail", c.detail}});
  return {{"entries", entries},
          {"classes", classes},
          {"summary", {{"entries", r.entries.size()}, {"failures", r.failures()}, {"exit", r.exit_status()}}}};
}

}  // namespace clockthm

#endif  // CLOCKTHM_CORPUS_HPP
