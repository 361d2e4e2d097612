#pragma once

// Complex arithmetic expressions for exact values in data files, e.g.
// "(1+sqrt(-3))/2" or "1+(1-sqrt(5))/2". Grammar: integers and decimals,
// + - * / ^, parentheses, sqrt(...), the imaginary unit i, and named
// variables (z12, Astar, ...) when the caller supplies a table.

#include <cctype>
#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace pgl3glue {

class ExpressionParser {
 public:
  using Variables = std::map<std::string, std::complex<double>, std::less<>>;

  explicit ExpressionParser(std::string_view text, const Variables* vars = nullptr) : s_(text), vars_(vars) {}

  std::complex<double> parse() {
    auto v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

 private:
  using C = std::complex<double>;

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("expression error at position " + std::to_string(pos_) + ": " + what +
                     " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  C expr() {
    C v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }

  C term() {
    C v = power();
    for (;;) {
      if (accept('*')) v *= power();
      else if (accept('/')) {
        C d = power();
        if (d == C(0)) fail("division by zero");
        v /= d;
      } else return v;
    }
  }

  C power() {
    C base = unary();
    if (!accept('^')) return base;
    C e = power();
    if (e.imag() == 0 && e.real() == std::round(e.real())) {
      const long n = std::lround(e.real());
      C out = 1;
      C b = n >= 0 ? base : C(1) / base;
      for (long k = 0; k < std::labs(n); ++k) out *= b;
      return out;
    }
    return std::pow(base, e);
  }

  C unary() {
    // 0 - v rather than -v keeps a +0 imaginary part, so sqrt(-3) = +i sqrt(3).
    if (accept('-')) return C(0) - unary();
    if (accept('+')) return unary();
    return primary();
  }

  C primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      C v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) fail("expected '(' after sqrt");
      C v = expr();
      if (!accept(')')) fail("expected ')'");
      return std::sqrt(v);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string_view name = s_.substr(start, pos_ - start);
      if (name == "i") return C(0, 1);
      if (vars_) {
        auto it = vars_->find(name);
        if (it != vars_->end()) return it->second;
      }
      pos_ = start;
      fail("unknown identifier '" + std::string(name) + "'");
    }
    fail("unexpected character");
  }

  C number() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      ++pos_;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < s_.size() && (s_[p] == '+' || s_[p] == '-')) ++p;
      if (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) {
        pos_ = p;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      }
    }
    const std::string tok(s_.substr(start, pos_ - start));
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      if (used != tok.size()) fail("malformed number");
      return v;
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
  }

  std::string_view s_;
  const Variables* vars_;
  std::size_t pos_ = 0;
};

inline std::complex<double> evaluateExpression(std::string_view text,
                                               const ExpressionParser::Variables* vars = nullptr) {
  return ExpressionParser(text, vars).parse();
}

}  // namespace pgl3glue
