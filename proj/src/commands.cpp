#include "commands.hpp"

#include <clockthm/alexander.hpp>
#include <clockthm/corpus.hpp>
#include <clockthm/diagram.hpp>
#include <clockthm/dynamics.hpp>
#include <clockthm/export.hpp>
#include <clockthm/states.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace clockthm::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LinkoidDiagram load(const std::string& path) {
  auto stem = std::filesystem::path(path).stem().string();
  return parse_kdf(read_file(path), stem);
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}


std::string fp_text(const ClockState& s) { return s.size() ? s.fingerprint() : "none"; }

}  // namespace

std::size_t cap_from_env() {
  const char* env = std::getenv("CLOCKTHM_STATE_CAP");
  if (!env || !*env) return default_state_cap;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw InputError(std::string("CLOCKTHM_STATE_CAP is not a number: ") + env);
  }
}

int cmd_validate(const std::string& path, bool json) {
  auto d = load(path);
  const auto& u = d.universe();
  if (json) {
    auto j = to_json(d);
    j["dual_graph"] = to_json(dual_graph(u));
    std::cout << j.dump(2) << '\n';
    return exit_ok;
  }
  std::cout << "valid: " << d.name() << ", " << d.crossing_count() << " crossings, " << u.region_count()
            << " regions (starred " << u.starred_region() << "), " << to_string(d.kind()) << '\n';
  return exit_ok;
}


int cmd_states(const std::string& path, StatesFlags f, std::size_t cap) {
  auto d = load(path);
  const auto& u = d.universe();
  if (!f.enumerate && !f.count && !f.extremal) f.count = true;
  Json j;
  std::vector<ClockState> states;
  if (f.enumerate) states = enumerate_states(u, cap);
  std::size_t count = f.enumerate ? states.size() : count_states(u, cap);
  if (count > cap) throw CapExceeded(cap, "too many clock states");
  if (f.count || f.enumerate) j["count"] = count;
  ClockState top, bottom;
  if (f.extremal) {
    top = clocked_state(u);
    bottom = counterclocked_state(u);
    j["clocked"] = to_json(u, top);
    j["counterclocked"] = to_json(u, bottom);
  }
  if (f.enumerate) {
    Json arr = Json::array();
    for (const auto& s : states) arr.push_back(to_json(u, s));
    j["states"] = arr;
  }
  if (f.json) {
    std::cout << j.dump(2) << '\n';
    return exit_ok;
  }
  if (j.contains("count")) std::cout << "count: " << count << '\n';
  if (f.extremal) std::cout << "clocked: " << fp_text(top) << "\ncounterclocked: " << fp_text(bottom) << '\n';
  for (std::size_t i = 0; i < states.size(); ++i) std::cout << "s" << i << ' ' << fp_text(states[i]) << '\n';
  return exit_ok;
}

int cmd_lattice(const std::string& path, const std::string& dot, bool json, bool tables, std::size_t cap) {
  auto d = load(path);
  auto g = state_graph(d.universe(), cap);
  auto rep = verify_lattice(g);
  if (!dot.empty()) write_output(dot, to_dot(g, rep));
  if (json) {
    std::cout << to_json(rep, tables).dump(2) << '\n';
  } else {
    std::cout << "states: " << rep.state_count << '\n';
    if (rep.top) std::cout << "top: s" << *rep.top << ' ' << fp_text(g.states[static_cast<std::size_t>(*rep.top)]) << '\n';
    if (rep.bottom)
      std::cout << "bottom: s" << *rep.bottom << ' ' << fp_text(g.states[static_cast<std::size_t>(*rep.bottom)]) << '\n';
    std::cout << "covering edges: " << rep.hasse.size() << '\n';
    std::cout << "violations: " << rep.violations.size() << '\n';
    for (const auto& v : rep.violations) std::cout << "  " << v.kind << " s" << v.a << " s" << v.b << '\n';
  }
  return rep.ok() ? exit_ok : exit_check;
}

int cmd_poly(const std::string& path, const std::string& weights, const std::string& method) {
  auto d = load(path);
  WeightTable w;
  if (weights == "default") w = d.weights().value_or(WeightTable::standard());
  else if (weights == "standard") w = WeightTable::standard();
  else if (weights == "ones") w = WeightTable::ones();
  else w = parse_weight_table(read_file(weights));
  if (method == "sum") {
    std::cout << mock_alexander(d, w).to_string() << '\n';
    return exit_ok;
  }
  if (method == "permanent") {
    std::cout << permanent_polynomial(d, w).to_string() << '\n';
    return exit_ok;
  }
  auto a = mock_alexander(d, w), b = permanent_polynomial(d, w);
  std::cout << "sum: " << a.to_string() << "\npermanent: " << b.to_string() << '\n';
  if (a != b) {
    std::cerr << "state sum and permanent disagree\n";
    return exit_check;
  }
  return exit_ok;
}

int cmd_trails(const std::string& path, bool json, bool trees, std::size_t cap) {
  auto d = load(path);
  const auto& u = d.universe();
  auto states = enumerate_states(u, cap);
  Json arr = Json::array();
  for (std::size_t i = 0; i < states.size(); ++i) {
    auto t = state_to_trail(u, states[i]);
    if (json) {
      Json j = {{"state", i}, {"fingerprint", states[i].fingerprint()}, {"trail", to_json(t)}};
      if (trees) j["tree"] = to_json(trail_to_tree(u, t));
      arr.push_back(j);
      continue;
    }
    std::cout << "s" << i << ' ' << fp_text(states[i]) << "  smoothing ";
    for (auto ch : t.channel) std::cout << int(ch);
    if (t.channel.empty()) std::cout << '-';
    std::cout << "  walk";
    for (int e : t.walk) std::cout << ' ' << e;
    std::cout << '\n';
    if (trees)
      for (const auto& e : trail_to_tree(u, t).edges)
        std::cout << "    r" << e.from << " -> r" << e.to << " via x" << e.crossing << '\n';
  }
  if (json) std::cout << arr.dump(2) << '\n';
  return exit_ok;
}

int cmd_classify(const std::string& path) {
  auto d = load(path);
  const auto& u = d.universe();
  std::cout << to_string(d.kind()) << " (tail region " << u.tail_region() << ", head region " << u.head_region() << ")\n";
  return exit_ok;
}

int cmd_corpus(const std::string& dir, bool all, const std::string& json, bool timing, std::size_t cap) {
  RunOptions opt;
  opt.all_checks = all;
  opt.cap = cap;
  auto report = run_corpus(load_corpus(dir), opt);
  for (const auto& e : report.entries) {
    std::size_t failed = 0, skipped = 0;
    for (const auto& c : e.checks) {
      failed += c.status == CheckStatus::fail;
      skipped += c.status == CheckStatus::skip;
    }
    std::cout << e.name << ": " << (failed ? "FAIL" : "ok") << " (" << e.checks.size() << " checks";
    if (skipped) std::cout << ", " << skipped << " skipped";
    std::cout << ", " << e.states << " states, tree count " << e.matrix_tree << ")";
    if (timing) std::cout << " " << static_cast<long long>(e.millis) << " ms";
    std::cout << '\n';
    for (const auto& c : e.checks)
      if (c.status != CheckStatus::pass) std::cout << "  " << to_string(c.status) << ' ' << c.check << ": " << c.detail << '\n';
  }
  for (const auto& c : report.classes) {
    std::cout << "class " << c.name << ": " << (c.status == CheckStatus::fail ? "FAIL" : "ok") << " (" << c.members.size()
              << " members) " << c.detail << '\n';
  }
  std::cout << report.entries.size() << " entries, " << report.failures() << " failures\n";
  if (!json.empty()) write_output(json, to_json(report, timing).dump(2) + "\n");
  return report.exit_status();
}

}  // namespace clockthm::cli
