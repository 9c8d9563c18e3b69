#pragma once

// Polynomials with rational coefficients in the catalog parameters
// h, f, g, m, p, q and the auxiliary square root s.

#include <array>
#include <map>
#include <string>
#include <string_view>

#include "dext/exactnum.hpp"

namespace dext {

inline constexpr std::string_view kParamLetters = "hfgmpqs";

class ParamExpr {
 public:
  using Exponents = std::array<uint8_t, 7>;

  ParamExpr() = default;
  static ParamExpr constant(const mpq_class& c) {
    ParamExpr e;
    if (c != 0) e.terms_[Exponents{}] = c;
    return e;
  }
  static ParamExpr variable(char v) {
    ParamExpr e;
    Exponents x{};
    x[index(v)] = 1;
    e.terms_[x] = 1;
    return e;
  }
  static ParamExpr parse(std::string_view text);

  static int index(char v) {
    size_t i = kParamLetters.find(v);
    if (i == std::string_view::npos) throw ParseError(std::string("unknown parameter '") + v + "'");
    return static_cast<int>(i);
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, mpq_class>& terms() const { return terms_; }
  bool uses(char v) const {
    int i = index(v);
    for (const auto& [x, c] : terms_)
      if (x[i]) return true;
    return false;
  }

  ParamExpr& operator+=(const ParamExpr& o) {
    for (const auto& [x, c] : o.terms_) add(x, c);
    return *this;
  }
  friend ParamExpr operator+(ParamExpr a, const ParamExpr& b) { return a += b; }
  friend ParamExpr operator-(const ParamExpr& a) {
    ParamExpr r;
    for (const auto& [x, c] : a.terms_) r.terms_[x] = -c;
    return r;
  }
  friend ParamExpr operator-(ParamExpr a, const ParamExpr& b) { return a += -b; }
  friend ParamExpr operator*(const ParamExpr& a, const ParamExpr& b) {
    ParamExpr r;
    for (const auto& [x, c] : a.terms_)
      for (const auto& [y, d] : b.terms_) {
        Exponents z;
        for (size_t i = 0; i < z.size(); ++i) z[i] = static_cast<uint8_t>(x[i] + y[i]);
        r.add(z, c * d);
      }
    return r;
  }

  // values[i] is the value of kParamLetters[i]; unused entries may be null.
  Scalar evaluate(const FieldSpec& f, const std::array<const Scalar*, 7>& values) const {
    Scalar r = f.zero();
    for (const auto& [x, c] : terms_) {
      Scalar t = f.from_rational(c);
      for (size_t i = 0; i < x.size(); ++i)
        if (x[i]) {
          if (!values[i]) throw std::invalid_argument(std::string("missing parameter ") + kParamLetters[i]);
          t *= values[i]->pow(x[i]);
        }
      r += t;
    }
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [x, c] = *it;
      mpq_class a = abs(c);
      s += sgn(c) < 0 ? (s.empty() ? "-" : " - ") : (s.empty() ? "" : " + ");
      std::string mono;
      for (size_t i = 0; i < x.size(); ++i)
        if (x[i]) {
          if (!mono.empty()) mono += "*";
          mono += kParamLetters[i];
          if (x[i] > 1) mono += "^" + std::to_string(x[i]);
        }
      if (mono.empty())
        s += a.get_str();
      else if (a == 1)
        s += mono;
      else
        s += a.get_str() + "*" + mono;
    }
    return s;
  }

 private:
  void add(const Exponents& x, const mpq_class& c) {
    auto [it, ins] = terms_.try_emplace(x, c);
    if (!ins) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    } else if (c == 0) {
      terms_.erase(it);
    }
  }
  std::map<Exponents, mpq_class> terms_;
};

namespace detail {

class ParamParser {
 public:
  explicit ParamParser(std::string_view t) : s_(strip_spaces(t)), text_(t) {}
  ParamExpr run() {
    if (s_.empty()) throw ParseError("empty expression");
    ParamExpr e = expr();
    if (pos_ != s_.size()) fail();
    return e;
  }

 private:
  [[noreturn]] void fail() const { throw ParseError("cannot parse parameter expression '" + std::string(text_) + "'"); }
  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  ParamExpr expr() {
    ParamExpr r;
    bool first = true;
    while (true) {
      int sign = 1;
      if (at('+') || at('-')) {
        sign = at('-') ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      first = false;
      ParamExpr t = term();
      r += sign < 0 ? -t : t;
      if (!(at('+') || at('-'))) break;
    }
    return r;
  }
  ParamExpr term() {
    ParamExpr r = factor();
    while (pos_ < s_.size()) {
      if (at('*')) {
        ++pos_;
      } else if (!(at('(') || std::isalnum(static_cast<unsigned char>(s_[pos_])))) {
        break;
      }
      r = r * factor();
    }
    return r;
  }
  ParamExpr factor() {
    ParamExpr b = primary();
    if (at('^')) {
      ++pos_;
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail();
      int e = std::stoi(s_.substr(st, pos_ - st));
      ParamExpr r = ParamExpr::constant(1);
      for (int i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return b;
  }
  ParamExpr primary() {
    if (pos_ >= s_.size()) fail();
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      ParamExpr r = expr();
      if (!at(')')) fail();
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class q;
      read_rational(s_, pos_, q);
      return ParamExpr::constant(q);
    }
    if (kParamLetters.find(c) != std::string_view::npos) {
      ++pos_;
      return ParamExpr::variable(c);
    }
    fail();
  }
  std::string s_;
  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace detail

inline ParamExpr ParamExpr::parse(std::string_view text) { return detail::ParamParser(text).run(); }

namespace detail {

// Direct evaluation of rational expressions in the parameters, with '/' and
// the field generator 'a'.
class ScalarParser {
 public:
  ScalarParser(std::string_view t, const FieldSpec& f, const std::array<const Scalar*, 7>& v)
      : s_(strip_spaces(t)), text_(t), f_(f), v_(v) {}
  Scalar run() {
    if (s_.empty()) throw ParseError("empty expression");
    Scalar e = expr();
    if (pos_ != s_.size()) fail();
    return e;
  }

 private:
  [[noreturn]] void fail() const { throw ParseError("cannot parse expression '" + std::string(text_) + "'"); }
  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  Scalar expr() {
    Scalar r = f_.zero();
    bool first = true;
    while (first || at('+') || at('-')) {
      int sign = 1;
      if (at('+') || at('-')) {
        sign = at('-') ? -1 : 1;
        ++pos_;
      }
      first = false;
      Scalar t = term();
      r += sign < 0 ? -t : t;
    }
    return r;
  }
  Scalar term() {
    Scalar r = factor();
    while (pos_ < s_.size()) {
      if (at('/')) {
        ++pos_;
        r /= factor();
        continue;
      }
      if (at('*'))
        ++pos_;
      else if (!(at('(') || std::isalnum(static_cast<unsigned char>(s_[pos_]))))
        break;
      r *= factor();
    }
    return r;
  }
  Scalar factor() {
    Scalar b = primary();
    if (!at('^')) return b;
    ++pos_;
    size_t st = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (st == pos_) fail();
    return b.pow(std::stoi(s_.substr(st, pos_ - st)));
  }
  Scalar primary() {
    if (pos_ >= s_.size()) fail();
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Scalar r = expr();
      if (!at(')')) fail();
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return f_.from_rational(mpq_class(s_.substr(st, pos_ - st)));
    }
    ++pos_;
    if (c == 'a') return f_.alpha();
    size_t i = kParamLetters.find(c);
    if (i == std::string_view::npos) fail();
    if (!v_[i]) throw std::invalid_argument(std::string("missing parameter ") + c);
    return *v_[i];
  }
  std::string s_;
  std::string_view text_;
  const FieldSpec& f_;
  const std::array<const Scalar*, 7>& v_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Scalar evaluate_expression(std::string_view text, const FieldSpec& f, const std::array<const Scalar*, 7>& v) {
  return detail::ScalarParser(text, f, v).run();
}

}  // namespace dext
