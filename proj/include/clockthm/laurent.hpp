#ifndef CLOCKTHM_LAURENT_HPP
#define CLOCKTHM_LAURENT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "error.hpp"

namespace clockthm {

using BigInt = boost::multiprecision::cpp_int;

// Laurent polynomial in one variable W with arbitrary-precision integer
// coefficients. Zero coefficients are never stored, so two polynomials are
// equal iff their term maps are equal.
class LaurentPoly {
 public:
  using Terms = std::map<int, BigInt>;

  LaurentPoly() = default;
  LaurentPoly(BigInt constant) { add_term(0, std::move(constant)); }  // NOLINT: implicit by design of ring literals
  LaurentPoly(int constant) : LaurentPoly(BigInt(constant)) {}        // NOLINT

  static LaurentPoly monomial(BigInt coefficient, int exponent) {
    LaurentPoly p;
    p.add_term(exponent, std::move(coefficient));
    return p;
  }
  static LaurentPoly W(int exponent = 1) { return monomial(1, exponent); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  BigInt coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? BigInt(0) : it->second;
  }

  bool is_monomial() const noexcept { return terms_.size() == 1; }

  int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }
  int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }

  /// Sum of coefficients, i.e. the value at W = 1.
  BigInt at_one() const {
    BigInt s = 0;
    for (const auto& [e, c] : terms_) s += c;
    return s;
  }

  void add_term(int exponent, const BigInt& coefficient) {
    if (coefficient == 0) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coefficient);
    if (!inserted) {
      it->second += coefficient;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) {
    *this = *this * o;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator-(const LaurentPoly& a) { return LaurentPoly{} - a; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

  /// Canonical text: terms by descending exponent, e.g. "W^2 + W - W^-1".
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const bool negative = c < 0;
      const BigInt mag = negative ? BigInt(-c) : c;
      if (first) {
        if (negative) out += '-';
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      if (e == 0) {
        out += mag.str();
        continue;
      }
      if (mag != 1) out += mag.str();
      out += 'W';
      if (e != 1) out += '^' + std::to_string(e);
    }
    return out;
  }

 private:
  Terms terms_;
};

namespace detail {

inline bool parse_int(std::string_view s, long long& out) {
  if (s.empty()) return false;
  std::size_t i = 0;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) return false;
  long long v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    v = v * 10 + (s[i] - '0');
    if (v > (1LL << 40)) return false;
  }
  out = neg ? -v : v;
  return true;
}

}  // namespace detail

/// Parses one monomial token: optional sign, optional integer coefficient,
/// optional "W" or "W^e" (an optional '*' may join coefficient and W).
/// Examples: "W", "-W", "1", "-1", "W^-1", "3W^2", "0".
inline LaurentPoly parse_monomial(std::string_view token) {
  auto fail = [&]() -> LaurentPoly { throw InvalidArgument("bad monomial '" + std::string(token) + "'"); };
  if (token.empty()) return fail();
  std::size_t i = 0;
  int sign = 1;
  if (token[i] == '+' || token[i] == '-') {
    sign = token[i] == '-' ? -1 : 1;
    ++i;
  }
  std::size_t digits_begin = i;
  while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) ++i;
  BigInt coefficient = 1;
  const bool has_digits = i > digits_begin;
  if (has_digits) coefficient = BigInt(std::string(token.substr(digits_begin, i - digits_begin)));
  if (i < token.size() && token[i] == '*') {
    if (!has_digits) return fail();
    ++i;
    if (i == token.size() || token[i] != 'W') return fail();
  }
  int exponent = 0;
  if (i < token.size()) {
    if (token[i] != 'W') return fail();
    ++i;
    exponent = 1;
    if (i < token.size()) {
      if (token[i] != '^') return fail();
      long long e = 0;
      if (!detail::parse_int(token.substr(i + 1), e)) return fail();
      exponent = static_cast<int>(e);
      i = token.size();
    }
  } else if (!has_digits) {
    return fail();
  }
  return LaurentPoly::monomial(sign * coefficient, exponent);
}

/// Parses a polynomial written as monomials joined by '+' / '-', whitespace
/// ignored: "W^2 - W^-1 + W".
inline LaurentPoly parse_poly(std::string_view text) {
  std::string compact;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) compact += ch;
  if (compact.empty()) throw InvalidArgument("empty polynomial");
  LaurentPoly result;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= compact.size(); ++i) {
    const bool at_end = i == compact.size();
    const bool split = !at_end && (compact[i] == '+' || compact[i] == '-') && compact[i - 1] != '^';
    if (at_end || split) {
      result += parse_monomial(std::string_view(compact).substr(start, i - start));
      start = i;
    }
  }
  return result;
}

}  // namespace clockthm

#endif  // CLOCKTHM_LAURENT_HPP
