#ifndef CLOCKTHM_WEIGHTS_HPP
#define CLOCKTHM_WEIGHTS_HPP

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"
#include "laurent.hpp"

namespace clockthm {

/// Corner weights for the state sum: one monomial (or zero) per corner index
/// 0..3 of a positive and of a negative crossing. Corner k is the angle
/// between slots k and k+1 (counterclockwise).
struct WeightTable {
  std::array<LaurentPoly, 4> positive;
  std::array<LaurentPoly, 4> negative;

  const LaurentPoly& at(int sign, int corner) const {
    return sign > 0 ? positive.at(static_cast<std::size_t>(corner)) : negative.at(static_cast<std::size_t>(corner));
  }

  /// The shipped table. At a positive crossing the corner between the two
  /// outgoing strands carries W and the one between the incoming strands
  /// -W^-1; at a negative crossing these become W^-1 and -W. Side corners
  /// carry 1.
  static WeightTable standard() {
    WeightTable t;
    t.positive = {LaurentPoly(1), LaurentPoly::W(1), LaurentPoly(1), LaurentPoly::monomial(-1, -1)};
    t.negative = {LaurentPoly::monomial(-1, 1), LaurentPoly(1), LaurentPoly::W(-1), LaurentPoly(1)};
    return t;
  }

  static WeightTable ones() {
    WeightTable t;
    t.positive.fill(LaurentPoly(1));
    t.negative.fill(LaurentPoly(1));
    return t;
  }

  /// Two KDF lines, "weights + m0 m1 m2 m3" then "weights - ...".
  std::string to_kdf() const {
    std::string out = "weights +";
    for (const auto& m : positive) out += ' ' + monomial_token(m);
    out += "\nweights -";
    for (const auto& m : negative) out += ' ' + monomial_token(m);
    out += '\n';
    return out;
  }

  friend bool operator==(const WeightTable&, const WeightTable&) = default;

  static std::string monomial_token(const LaurentPoly& m) {
    // canonical text of a monomial never contains spaces
    return m.to_string();
  }
};

/// Validates that a parsed entry is a monomial (or zero).
inline LaurentPoly parse_weight_entry(std::string_view token) {
  LaurentPoly m = parse_monomial(token);
  if (m.term_count() > 1) throw InvalidArgument("weight entry must be a monomial: " + std::string(token));
  return m;
}

/// Reads a table from "weights + ..." and "weights - ..." lines; blank
/// lines and '#' comments are ignored.
inline WeightTable parse_weight_table(std::string_view text) {
  std::optional<std::array<LaurentPoly, 4>> pos, neg;
  std::size_t line_no = 0, start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(start, nl - start));
    start = nl + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream in(line);
    std::vector<std::string> tok;
    for (std::string t; in >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 6 || tok[0] != "weights" || (tok[1] != "+" && tok[1] != "-"))
      throw ParseError(line_no, 1, "expected 'weights <+|-> m0 m1 m2 m3'");
    auto& row = tok[1] == "+" ? pos : neg;
    if (row) throw ParseError(line_no, 1, "weights " + tok[1] + " given twice");
    row.emplace();
    for (std::size_t i = 0; i < 4; ++i) {
      try {
        (*row)[i] = parse_weight_entry(tok[i + 2]);
      } catch (const InvalidArgument& e) {
        throw ParseError(line_no, line.find(tok[i + 2]) + 1, e.what());
      }
    }
  }
  if (!pos || !neg) throw ParseError(line_no, 1, "weight table needs both '+' and '-' lines");
  return WeightTable{*pos, *neg};
}

}  // namespace clockthm

#endif  // CLOCKTHM_WEIGHTS_HPP
