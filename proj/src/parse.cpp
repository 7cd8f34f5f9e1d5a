#include "pdmv/parse.hpp"

#include <cctype>

namespace pdmv {

namespace {

Expr sq(const Expr& e) { return pow(e, 2); }

// derived quantities shared by the grammar and the dataset
struct Derived {
  Expr x1 = coord(0), x2 = coord(1), x3 = coord(2);
  Expr r2 = add({sq(x1), sq(x2), sq(x3)});
  Expr rt2 = add(sq(x1), sq(x2));
  Expr r = pdmv::sqrt(r2);
  Expr rt = pdmv::sqrt(rt2);
  Expr phi = arctan(div(x2, x1));
  Expr theta = arctan(div(rt, x3));
  Expr n = param("n");

  Expr rp(int s) const { return add(r2, integer(s)); }  // r^2 +- 1

  Expr F(int s) const { return sub(sq(rp(s)), mul(integer(4 * s), sq(x3))); }
  Expr Ft(int s) const { return add(sq(rp(s)), mul(integer(4 * s), sq(x3))); }
  Expr G(int s) const {
    return add(mul(sub(rt2, mul(integer(2), sq(x3))), sq(rp(s))),
               mul({integer(4), sq(x3), rt2}));
  }
  Expr z(int s) const {
    Expr num = add({pow(r2, 2), integer(s), mul({integer(2), n, sub(rt2, sq(x3))})});
    Expr den = mul(integer(2), pdmv::sqrt(mul(integer(2), sub(sq(n), integer(s)))));
    return div(num, den);
  }
  Expr zt(int s) const {
    Expr num = add({pow(r2, 2), integer(s), mul({integer(2), n, sub(rt2, sq(x3))})});
    Expr den = mul(integer(2), pdmv::sqrt(mul(integer(2), sub(integer(1), mul(integer(s), sq(n))))));
    return div(num, den);
  }
  Expr y(int s, int sign) const {
    Expr rad = pdmv::sqrt(add(sq(z(s)), mul({integer(2), sq(x3), rt2})));
    return div(add(rad, mul(integer(sign), z(s))), rt2);
  }
  Expr sh(int s, int sign) const {
    Expr rad = pdmv::sqrt(sub(sq(zt(s)), mul({integer(2 * s), sq(x3), rt2})));
    return div(add(rad, mul(integer(sign), zt(s))), rt2);
  }
  Expr xw(int s, int sign, int weight) const {
    Expr rad = pdmv::sqrt(sub(sq(rp(s)), mul(integer(weight * s), sq(x3))));
    return add(rad, mul(integer(sign), rp(s)));
  }
};

Symbols build_standard() {
  Derived d;
  Symbols s;
  auto& a = s.atoms;
  a["x1"] = d.x1;
  a["x2"] = d.x2;
  a["x3"] = d.x3;
  a["i"] = imag_unit();
  a["r"] = d.r;
  a["rt"] = d.rt;
  a["phi"] = d.phi;
  a["theta"] = d.theta;
  for (int k = 1; k <= 8; ++k) a["c" + std::to_string(k)] = param("c" + std::to_string(k));
  a["n"] = param("n");
  a["nu"] = param("nu");
  a["omega"] = param("omega");
  // dataset abbreviations (docs/grammar.md)
  a["Fp"] = d.F(+1);
  a["Fm"] = d.F(-1);
  a["Ftp"] = d.Ft(+1);
  a["Ftm"] = d.Ft(-1);
  a["Gp"] = d.G(+1);
  a["Gm"] = d.G(-1);
  a["etahat"] = mul(integer(3), sub(d.r2, mul(integer(5), sq(d.x3))));
  a["zp"] = d.z(+1);
  a["zm"] = d.z(-1);
  a["ztp"] = d.zt(+1);
  a["ztm"] = d.zt(-1);
  a["yp"] = d.y(+1, +1);
  a["ym"] = d.y(-1, +1);
  a["ytp"] = d.y(+1, -1);
  a["ytm"] = d.y(-1, -1);
  a["sp"] = d.sh(+1, +1);
  a["sm"] = d.sh(-1, +1);
  a["stp"] = d.sh(+1, -1);
  a["stm"] = d.sh(-1, -1);
  a["xp"] = d.xw(+1, +1, 1);
  a["xm"] = d.xw(-1, +1, 1);
  a["xtp"] = d.xw(+1, -1, 1);
  a["xtm"] = d.xw(-1, -1, 1);
  a["xp4"] = d.xw(+1, +1, 4);
  a["xm4"] = d.xw(-1, +1, 4);
  a["xtp4"] = d.xw(+1, -1, 4);
  a["xtm4"] = d.xw(-1, -1, 4);
  s.functions = {"F", "G", "Ft", "Gt"};
  return s;
}

class Parser {
 public:
  Parser(const std::string& text, const Symbols& sym) : t_(text), sym_(sym) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != t_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  const std::string& t_;
  const Symbols& sym_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& m) const { throw ParseError(pos_, m); }

  void skip_ws() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < t_.size() ? t_[pos_] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expr() {
    std::vector<Expr> terms;
    bool negate = eat('-');
    Expr first = term();
    terms.push_back(negate ? neg(first) : first);
    for (;;) {
      if (eat('+'))
        terms.push_back(term());
      else if (eat('-'))
        terms.push_back(neg(term()));
      else
        break;
    }
    return add(std::move(terms));
  }

  Expr term() {
    Expr acc = factor();
    for (;;) {
      if (eat('*'))
        acc = mul(acc, factor());
      else if (eat('/'))
        acc = div(acc, factor());
      else
        break;
    }
    return acc;
  }

  Expr factor() {
    if (eat('-')) return neg(factor());
    Expr base = atom();
    if (eat('^')) {
      bool negexp = eat('-');
      bool paren = false;
      if (!negexp && eat('(')) {
        paren = true;
        negexp = eat('-');
      }
      long long e = integer_literal();
      if (paren && !eat(')')) fail("expected ')' after exponent");
      if (e == 0) fail("zero exponent not allowed");
      return pow(base, negexp ? -e : e);
    }
    return base;
  }

  long long integer_literal() {
    skip_ws();
    if (pos_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[pos_])))
      fail("expected integer");
    long long v = 0;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
      v = v * 10 + (t_[pos_] - '0');
      if (v > (1ll << 40)) fail("integer literal too large");
      ++pos_;
    }
    if (pos_ < t_.size() && t_[pos_] == '.') fail("floating literals are not part of the grammar");
    return v;
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= t_.size()) fail("unexpected end of input");
    char c = t_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return integer(integer_literal());
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < t_.size() &&
           (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_'))
      ++pos_;
    std::string name = t_.substr(start, pos_ - start);
    int primes = 0;
    while (pos_ < t_.size() && t_[pos_] == '\'') {
      ++primes;
      ++pos_;
    }
    if (name == "sqrt" || name == "ln" || name == "arctan" || name == "arctanh") {
      if (primes) fail("builtin functions take no derivative marks");
      if (!eat('(')) fail("expected '(' after " + name);
      Expr arg = expr();
      if (!eat(')')) fail("expected ')'");
      if (name == "sqrt") return pdmv::sqrt(arg);
      if (name == "ln") return ln(arg);
      if (name == "arctan") return arctan(arg);
      return arctanh(arg);
    }
    if (sym_.functions.count(name)) {
      if (!eat('(')) fail("expected '(' after function " + name);
      Expr arg = expr();
      if (!eat(')')) fail("expected ')'");
      return func(name, primes, arg);
    }
    if (primes) fail("'" + name + "' is not a function");
    auto it = sym_.atoms.find(name);
    if (it == sym_.atoms.end()) {
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    if (peek() == '(') fail("'" + name + "' is not a function");
    return it->second;
  }
};

}  // namespace

const Symbols& Symbols::standard() {
  static const Symbols s = build_standard();
  return s;
}

Symbols Symbols::extended_with(const std::vector<std::string>& more_functions,
                               const std::vector<std::string>& more_params) const {
  Symbols s = *this;
  for (const auto& f : more_functions) s.functions.insert(f);
  for (const auto& p : more_params)
    if (!s.atoms.count(p)) s.atoms[p] = param(p);
  return s;
}

Expr parse(const std::string& text) { return parse(text, Symbols::standard()); }

Expr parse(const std::string& text, const Symbols& symbols) {
  return Parser(text, symbols).run();
}

}  // namespace pdmv
