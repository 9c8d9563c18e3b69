#pragma once

// Words and noncommutative polynomials in the generators x1 < x2 < y1 < y2.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dext/exactnum.hpp"

namespace dext {

inline constexpr int kNumGenerators = 4;
inline constexpr int kMaxWordLength = 28;
inline const std::array<const char*, kNumGenerators> kGeneratorNames = {"x1", "x2", "y1", "y2"};

enum Generator : int { X1 = 0, X2 = 1, Y1 = 2, Y2 = 3 };

// Two bits per letter, first letter most significant.
class Word {
 public:
  Word() = default;
  static Word letter(int g) { return Word(static_cast<uint64_t>(g), 1); }
  static Word from_letters(const std::vector<int>& letters) {
    Word w;
    for (int g : letters) w = w * letter(g);
    return w;
  }
  static Word from_key(uint64_t key) { return Word(key & kBitsMask, static_cast<int>(key >> 56)); }

  int size() const { return len_; }
  bool empty() const { return len_ == 0; }
  uint64_t bits() const { return bits_; }
  uint64_t key() const { return bits_ | (static_cast<uint64_t>(len_) << 56); }

  int operator[](int i) const { return static_cast<int>((bits_ >> (2 * (len_ - 1 - i))) & 3u); }

  Word subword(int pos, int n) const {
    uint64_t b = (bits_ >> (2 * (len_ - pos - n))) & mask(n);
    return Word(b, n);
  }
  Word prefix(int n) const { return subword(0, n); }
  Word suffix(int n) const { return subword(len_ - n, n); }

  Word reversed() const {
    Word r;
    for (int i = len_ - 1; i >= 0; --i) r = r * letter((*this)[i]);
    return r;
  }

  int count_if(const std::function<bool(int)>& pred) const {
    int c = 0;
    for (int i = 0; i < len_; ++i) c += pred((*this)[i]) ? 1 : 0;
    return c;
  }

  friend Word operator*(const Word& u, const Word& v) {
    if (u.len_ + v.len_ > kMaxWordLength) throw std::length_error("word too long");
    return Word((u.bits_ << (2 * v.len_)) | v.bits_, u.len_ + v.len_);
  }

  // Degree-lexicographic order.
  friend bool operator<(const Word& a, const Word& b) {
    return a.len_ != b.len_ ? a.len_ < b.len_ : a.bits_ < b.bits_;
  }
  friend bool operator>(const Word& a, const Word& b) { return b < a; }
  friend bool operator==(const Word& a, const Word& b) { return a.len_ == b.len_ && a.bits_ == b.bits_; }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }

  std::string to_string() const {
    if (len_ == 0) return "1";
    std::string s;
    int i = 0;
    while (i < len_) {
      int g = (*this)[i];
      int run = 1;
      while (i + run < len_ && (*this)[i + run] == g) ++run;
      if (!s.empty()) s += "*";
      s += kGeneratorNames[g];
      if (run > 1) s += "^" + std::to_string(run);
      i += run;
    }
    return s;
  }

 private:
  static constexpr uint64_t kBitsMask = (uint64_t(1) << 56) - 1;
  static uint64_t mask(int n) { return n >= 32 ? ~uint64_t(0) : ((uint64_t(1) << (2 * n)) - 1); }
  Word(uint64_t b, int n) : bits_(b), len_(static_cast<uint8_t>(n)) {}
  uint64_t bits_ = 0;
  uint8_t len_ = 0;
};

struct WordHash {
  size_t operator()(const Word& w) const { return std::hash<uint64_t>()(w.key()); }
};

class NcPoly {
 public:
  using Terms = std::map<Word, Scalar>;

  NcPoly() : field_(&FieldSpec::rationals()) {}
  explicit NcPoly(const FieldSpec& f) : field_(&f) {}
  static NcPoly monomial(const Word& w, const Scalar& c) {
    NcPoly p(c.field());
    p.add_term(w, c);
    return p;
  }
  static NcPoly constant(const Scalar& c) { return monomial(Word(), c); }
  static NcPoly generator(const FieldSpec& f, int g) { return monomial(Word::letter(g), f.one()); }

  const FieldSpec& field() const { return *field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Scalar coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? field_->zero() : it->second;
  }

  void add_term(const Word& w, const Scalar& c) {
    if (&c.field() != field_) throw FieldMismatch("coefficient field differs from polynomial field");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::pair<Word, Scalar> leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of the zero polynomial");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }
  Word leading_word() const { return leading_term().first; }

  int degree() const { return terms_.empty() ? -1 : std::prev(terms_.end())->first.size(); }
  int min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.size(); }
  bool is_homogeneous() const { return terms_.empty() || degree() == min_degree(); }

  NcPoly& operator+=(const NcPoly& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  NcPoly& operator-=(const NcPoly& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  NcPoly operator-() const {
    NcPoly r(*field_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
  }
  NcPoly scaled(const Scalar& s) const {
    NcPoly r(*field_);
    if (s.is_zero()) return r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
    return r;
  }
  // u * this * v
  NcPoly sandwiched(const Word& u, const Word& v) const {
    NcPoly r(*field_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(u * w * v, c);
    return r;
  }
  NcPoly reversed() const {
    NcPoly r(*field_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w.reversed(), c);
    return r;
  }

  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b) {
    a.check(b);
    NcPoly r(*a.field_);
    for (const auto& [u, cu] : a.terms_)
      for (const auto& [v, cv] : b.terms_) r.add_term(u * v, cu * cv);
    return r;
  }
  friend NcPoly operator*(const Scalar& s, const NcPoly& p) { return p.scaled(s); }

  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    if (a.field_ != b.field_ || a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [w, c] : a.terms_) {
      if (it->first != w || it->second != c) return false;
      ++it;
    }
    return true;
  }
  friend bool operator!=(const NcPoly& a, const NcPoly& b) { return !(a == b); }

  // Leading term first.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Word& w = it->first;
      Scalar c = it->second;
      bool neg = c.is_negative_rational();
      if (neg) c = -c;
      if (first)
        s += neg ? "-" : "";
      else
        s += neg ? " - " : " + ";
      first = false;
      std::string cs = c.to_plain_string();
      bool compound = cs.find_first_of("+-", 1) != std::string::npos || cs[0] == '-';
      if (compound) cs = "(" + cs + ")";
      if (w.empty())
        s += cs;
      else if (c.is_one())
        s += w.to_string();
      else
        s += cs + "*" + w.to_string();
    }
    return s;
  }

  static NcPoly parse(const FieldSpec& f, std::string_view text);

 private:
  void check(const NcPoly& o) const {
    if (field_ != o.field_)
      throw FieldMismatch("mixed fields: " + field_->to_string() + " and " + o.field_->to_string());
  }
  const FieldSpec* field_;
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const NcPoly& p) { return os << p.to_string(); }

// Algebra map sending generator g to images[g].
inline NcPoly substitute(const NcPoly& p, const std::array<NcPoly, kNumGenerators>& images) {
  NcPoly r(p.field());
  for (const auto& [w, c] : p.terms()) {
    NcPoly t = NcPoly::constant(c);
    for (int i = 0; i < w.size(); ++i) t = t * images[w[i]];
    r += t;
  }
  return r;
}

namespace detail {

// expr := term (('+'|'-') term)*
// term := factor ('*'? factor)*
// factor := primary ('^' int)?
// primary := number | 'a' | x1 | x2 | y1 | y2 | '(' expr ')'
class PolyParser {
 public:
  PolyParser(const FieldSpec& f, std::string_view text) : f_(f), s_(strip_spaces(text)), text_(text) {}

  NcPoly run() {
    if (s_.empty()) throw ParseError("empty polynomial");
    NcPoly p = expr();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  bool at(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  NcPoly expr() {
    NcPoly r(f_);
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
      NcPoly t = term();
      r += sign < 0 ? -t : t;
      if (!(at('+') || at('-'))) break;
    }
    return r;
  }

  bool starts_primary() const {
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'a' || c == 'x' || c == 'y' || c == '(';
  }

  NcPoly term() {
    NcPoly r = factor();
    while (true) {
      if (at('*')) {
        ++pos_;
        r = r * factor();
      } else if (starts_primary()) {
        r = r * factor();
      } else {
        break;
      }
    }
    return r;
  }

  NcPoly factor() {
    NcPoly b = primary();
    if (at('^')) {
      ++pos_;
      size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("missing exponent");
      int e = std::stoi(s_.substr(st, pos_ - st));
      if (e > kMaxWordLength) fail("exponent too large");
      NcPoly r = NcPoly::constant(f_.one());
      for (int i = 0; i < e; ++i) r = r * b;
      return r;
    }
    return b;
  }

  NcPoly primary() {
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NcPoly r = expr();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'x' || c == 'y') {
      if (pos_ + 1 >= s_.size() || (s_[pos_ + 1] != '1' && s_[pos_ + 1] != '2')) fail("unknown generator");
      int g = (c == 'x' ? 0 : 2) + (s_[pos_ + 1] - '1');
      pos_ += 2;
      return NcPoly::generator(f_, g);
    }
    if (c == 'a') {
      if (!f_.is_quadratic()) fail("'a' is not defined over " + f_.to_string());
      ++pos_;
      return NcPoly::constant(f_.alpha());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpq_class q;
      read_rational(s_, pos_, q);
      if (f_.is_prime()) {
        mpz_class den = q.get_den();
        if (den % f_.modulus() == 0) throw DivisionByZero();
        return NcPoly::constant(Scalar(f_, mpq_class(q.get_num())) / Scalar(f_, mpq_class(den)));
      }
      return NcPoly::constant(f_.from_rational(q));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const FieldSpec& f_;
  std::string s_;
  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace detail

inline NcPoly NcPoly::parse(const FieldSpec& f, std::string_view text) { return detail::PolyParser(f, text).run(); }

}  // namespace dext
