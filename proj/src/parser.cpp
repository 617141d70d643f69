#include <cctype>
#include <cmath>
#include <string>

#include "twistorkit/fieldexpr.hpp"

namespace twk {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  FieldExpr parse() {
    FieldExpr e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  FieldExpr expr() {
    FieldExpr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = lhs + term();
      } else if (accept('-')) {
        lhs = lhs - term();
      } else {
        return lhs;
      }
    }
  }

  FieldExpr term() {
    FieldExpr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = lhs * unary();
      } else if (accept('/')) {
        lhs = lhs / unary();
      } else {
        return lhs;
      }
    }
  }

  FieldExpr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  FieldExpr power() {
    FieldExpr base = primary();
    if (!accept('^')) return base;
    const std::size_t at = pos_;
    int sign = 1;
    bool paren = accept('(');
    if (accept('-')) sign = -1;
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) {
      pos_ = at;
      fail("exponent must be an integer literal");
    }
    const int n = sign * std::stoi(std::string(s_.substr(start, pos_ - start)));
    if (paren) expect(')');
    return pow(base, n);
  }

  FieldExpr primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      FieldExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  FieldExpr number() {
    const char* begin = s_.data() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - begin);
    // Imaginary literal such as 2i or 0.5i.
    if (pos_ < s_.size() && s_[pos_] == 'i' &&
        (pos_ + 1 == s_.size() ||
         !(std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '_'))) {
      ++pos_;
      return FieldExpr(cplx(0.0, v));
    }
    return FieldExpr(v);
  }

  FieldExpr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(s_.substr(start, pos_ - start));
    if (name == "sqrt" || name == "log" || name == "exp" || name == "conj") {
      expect('(');
      FieldExpr a = expr();
      expect(')');
      if (name == "sqrt") return sqrt(a);
      if (name == "log") return log(a);
      if (name == "exp") return exp(a);
      return conj(a);
    }
    if (name == "i") return FieldExpr(I);
    if (name == "pi") return FieldExpr(M_PI);
    if (name.size() == 2 && name[0] == 'x' && name[1] >= '0' && name[1] <= '3') {
      return sym::x(name[1] - '0');
    }
    if (name == "t") return sym::t();
    if (name == "v") return sym::v();
    if (name == "w") return sym::w();
    if (name == "q1") return sym::q1();
    if (name == "qt1") return sym::qt1();
    if (name == "q2") return sym::q2();
    if (name == "qt2") return sym::qt2();
    pos_ = start;
    fail("unknown identifier '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

FieldExpr parse_expr(std::string_view text) { return Parser(text).parse(); }

cplx parse_complex(std::string_view text) {
  const FieldExpr e = parse_expr(text);
  for (int i = 0; i < 4; ++i) {
    if (depends_on(e, i) || contains_conj(e)) throw ParseError("expected a constant", 0);
  }
  return eval(e, Point4C{});
}

}  // namespace twk
