#include "conelab/parser.hpp"

#include <cctype>

namespace conelab {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Polynomial run() {
    Polynomial f = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return f.extended(max_var_);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int max_var_ = 0;  // highest 1-based variable index seen

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(msg, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek_is(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek_is(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected ") + what);
  }

  Polynomial expr() {
    Polynomial f = term();
    for (;;) {
      if (accept('+'))
        f += term();
      else if (accept('-'))
        f -= term();
      else
        return f;
    }
  }

  Polynomial term() {
    Polynomial f = factor();
    while (accept('*')) f *= factor();
    return f;
  }

  Polynomial factor() {
    Polynomial b = base();
    if (accept('^')) {
      skip_ws();
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
        fail("exponent must be an unsigned integer");
      unsigned long e = uint_lit("exponent");
      if (pos_ < text_.size() && text_[pos_] == '.') fail("non-integer exponent");
      if (e > 4096) fail("exponent too large");
      return b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  Polynomial base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -base();
    }
    if (c == '(') {
      ++pos_;
      Polynomial f = expr();
      expect(')', "')'");
      return f;
    }
    if (c == 'x' || c == 'y' || c == 'z') return ident();
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    fail("expected a variable, number, or '('");
  }

  Polynomial ident() {
    char c = text_[pos_++];
    int var;  // 1-based
    if (c == 'y')
      var = 2;
    else if (c == 'z')
      var = 3;
    else if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      unsigned long k = uint_lit("variable index");
      if (k == 0) fail("variable index must be positive");
      if (k > kMaxVars) fail("unsupported variable count (> 8)");
      var = static_cast<int>(k);
    } else {
      var = 1;
    }
    max_var_ = std::max(max_var_, var);
    return Polynomial::variable(kMaxVars, var - 1).extended(kMaxVars);
  }

  Polynomial number() {
    std::string digits = digit_run();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
        fail("expected digits after decimal point");
      std::string frac = digit_run();
      return Polynomial::constant(kMaxVars, rational_from_decimal(digits, frac));
    }
    if (pos_ < text_.size() && text_[pos_] == '/') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        // "/" belongs to an outer context only in numbers; grammar has no
        // division operator, so this is an error either way.
        pos_ = save + 1;
        fail("expected denominator digits");
      }
      std::string den = digit_run();
      Rational d{mpz_class(den)};
      if (sign(d) == 0) {
        pos_ = save;
        fail("zero denominator");
      }
      Rational q{mpz_class(digits)};
      q /= d;
      return Polynomial::constant(kMaxVars, q);
    }
    return Polynomial::constant(kMaxVars, Rational{mpz_class(digits)});
  }

  std::string digit_run() {
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
      s.push_back(text_[pos_++]);
    return s;
  }

  unsigned long uint_lit(const char* what) {
    skip_ws();
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail(std::string("expected ") + what);
    std::string s = digit_run();
    if (s.size() > 9) fail(std::string(what) + " too large");
    return std::stoul(s);
  }
};

}  // namespace

Polynomial parse_polynomial(std::string_view text) {
  Parser p(text);
  return p.run();
}

}  // namespace conelab
