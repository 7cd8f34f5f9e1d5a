#include "pdmv/expr.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pdmv {

namespace {

Expr make(Node n) { return std::make_shared<const Node>(std::move(n)); }

int kind_rank(Kind k) { return static_cast<int>(k); }

int cmp_rat(const Rat& a, const Rat& b) {
  if (a < b) return -1;
  if (b < a) return 1;
  return 0;
}

int cmp_gauss(const GaussRat& a, const GaussRat& b) {
  if (int c = cmp_rat(a.re, b.re)) return c;
  return cmp_rat(a.im, b.im);
}

const GaussRat& const_of(const Expr& e) { return e->value; }

// Split a term into (numeric coefficient, core) for sum merging.
std::pair<GaussRat, Expr> coeff_core(const Expr& e);

}  // namespace

int compare(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return kind_rank(a->kind) < kind_rank(b->kind) ? -1 : 1;
  switch (a->kind) {
    case Kind::Const: return cmp_gauss(a->value, b->value);
    case Kind::Coord: return a->axis < b->axis ? -1 : a->axis > b->axis ? 1 : 0;
    case Kind::Param: return a->name.compare(b->name) < 0 ? -1 : a->name == b->name ? 0 : 1;
    case Kind::Func: {
      if (int c = a->name.compare(b->name)) return c < 0 ? -1 : 1;
      if (a->order != b->order) return a->order < b->order ? -1 : 1;
      return compare(a->kids[0], b->kids[0]);
    }
    case Kind::Pow: {
      if (int c = compare(a->kids[0], b->kids[0])) return c;
      return a->expo < b->expo ? -1 : a->expo > b->expo ? 1 : 0;
    }
    default: {
      if (a->kids.size() != b->kids.size())
        return a->kids.size() < b->kids.size() ? -1 : 1;
      for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (int c = compare(a->kids[i], b->kids[i])) return c;
      return 0;
    }
  }
}

bool is_zero(const Expr& e) { return e->kind == Kind::Const && e->value.is_zero(); }
bool is_one(const Expr& e) { return e->kind == Kind::Const && e->value.is_one(); }
bool is_const(const Expr& e) { return e->kind == Kind::Const; }

Expr constant(GaussRat v) {
  Node n{Kind::Const};
  n.value = std::move(v);
  return make(std::move(n));
}

Expr integer(long long v) { return constant(GaussRat(v)); }
Expr rational(long long num, long long den) { return constant(GaussRat(make_rat(num, den))); }
Expr imag_unit() { return constant(GaussRat::i()); }

Expr coord(int axis) {
  if (axis < 0 || axis > 2) throw ExprError("coordinate axis out of range");
  Node n{Kind::Coord};
  n.axis = axis;
  return make(std::move(n));
}

Expr param(std::string name) {
  Node n{Kind::Param};
  n.name = std::move(name);
  return make(std::move(n));
}

Expr func(std::string name, int deriv_order, Expr arg) {
  if (deriv_order < 0 || deriv_order > kMaxFuncDerivOrder)
    throw ExprError("opaque function derivative order out of range: " + name);
  Node n{Kind::Func};
  n.name = std::move(name);
  n.order = deriv_order;
  n.kids = {std::move(arg)};
  return make(std::move(n));
}

namespace {

std::pair<GaussRat, Expr> coeff_core(const Expr& e) {
  if (e->kind == Kind::Const) return {e->value, one()};
  if (e->kind == Kind::Prod && !e->kids.empty() && e->kids[0]->kind == Kind::Const) {
    GaussRat c = e->kids[0]->value;
    if (e->kids.size() == 2) return {c, e->kids[1]};
    Node n{Kind::Prod};
    n.kids.assign(e->kids.begin() + 1, e->kids.end());
    return {c, make(std::move(n))};
  }
  return {GaussRat::one(), e};
}

Expr with_coeff(const GaussRat& c, const Expr& core) {
  if (c.is_zero()) return zero();
  if (is_one(core)) return constant(c);
  if (c.is_one()) return core;
  Node n{Kind::Prod};
  if (core->kind == Kind::Prod) {
    n.kids.reserve(core->kids.size() + 1);
    n.kids.push_back(constant(c));
    n.kids.insert(n.kids.end(), core->kids.begin(), core->kids.end());
  } else {
    n.kids = {constant(c), core};
  }
  return make(std::move(n));
}

}  // namespace

Expr add(std::vector<Expr> terms) {
  // flatten, fold constants, merge equal cores
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  for (auto& t : terms) {
    if (!t) throw ExprError("null expression in sum");
    if (t->kind == Kind::Sum)
      flat.insert(flat.end(), t->kids.begin(), t->kids.end());
    else
      flat.push_back(std::move(t));
  }
  std::vector<std::pair<GaussRat, Expr>> parts;
  for (auto& t : flat) {
    if (is_zero(t)) continue;
    auto [c, core] = coeff_core(t);
    bool merged = false;
    for (auto& p : parts) {
      if (equal(p.second, core)) {
        p.first += c;
        merged = true;
        break;
      }
    }
    if (!merged) parts.emplace_back(std::move(c), std::move(core));
  }
  std::vector<Expr> out;
  for (auto& p : parts) {
    if (p.first.is_zero()) continue;
    out.push_back(with_coeff(p.first, p.second));
  }
  if (out.empty()) return zero();
  if (out.size() == 1) return out[0];
  std::sort(out.begin(), out.end(),
            [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  Node n{Kind::Sum};
  n.kids = std::move(out);
  return make(std::move(n));
}

Expr add(const Expr& a, const Expr& b) { return add(std::vector<Expr>{a, b}); }
Expr sub(const Expr& a, const Expr& b) { return add(a, neg(b)); }
Expr neg(const Expr& a) { return mul(integer(-1), a); }

Expr mul(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  for (auto& f : factors) {
    if (!f) throw ExprError("null expression in product");
    if (f->kind == Kind::Prod)
      flat.insert(flat.end(), f->kids.begin(), f->kids.end());
    else
      flat.push_back(std::move(f));
  }
  GaussRat c = GaussRat::one();
  // base -> exponent accumulation (x * x^2 -> x^3)
  std::vector<std::pair<Expr, long long>> bases;
  for (auto& f : flat) {
    if (f->kind == Kind::Const) {
      c *= f->value;
      continue;
    }
    Expr base = f;
    long long e = 1;
    if (f->kind == Kind::Pow) {
      base = f->kids[0];
      e = f->expo;
    }
    bool merged = false;
    for (auto& p : bases) {
      if (equal(p.first, base)) {
        p.second += e;
        merged = true;
        break;
      }
    }
    if (!merged) bases.emplace_back(std::move(base), e);
  }
  if (c.is_zero()) return zero();
  std::vector<Expr> out;
  for (auto& p : bases) {
    if (p.second == 0) continue;  // x^0 -> 1 (x assumed nonzero where evaluated)
    out.push_back(p.second == 1 ? p.first : pow(p.first, p.second));
  }
  std::sort(out.begin(), out.end(),
            [](const Expr& a, const Expr& b) { return compare(a, b) < 0; });
  if (out.empty()) return constant(c);
  if (!c.is_one()) out.insert(out.begin(), constant(c));
  if (out.size() == 1) return out[0];
  Node n{Kind::Prod};
  n.kids = std::move(out);
  return make(std::move(n));
}

Expr mul(const Expr& a, const Expr& b) { return mul(std::vector<Expr>{a, b}); }

Expr pow(const Expr& base, long long e) {
  if (!base) throw ExprError("null expression in power");
  if (e == 0) return one();
  if (e == 1) return base;
  if (base->kind == Kind::Const) {
    if (base->value.is_zero() && e < 0) throw ExprError("zero to negative power");
    return constant(base->value.pow(e));
  }
  if (base->kind == Kind::Pow) return pow(base->kids[0], base->expo * e);
  if (base->kind == Kind::Quot) return div(pow(base->kids[0], e), pow(base->kids[1], e));
  Node n{Kind::Pow};
  n.expo = e;
  n.kids = {base};
  return make(std::move(n));
}

Expr div(const Expr& num, const Expr& den) {
  if (!num || !den) throw ExprError("null expression in quotient");
  if (den->kind == Kind::Const) {
    if (den->value.is_zero()) throw ExprError("division by constant zero");
    return mul(constant(den->value.inverse()), num);
  }
  if (is_zero(num)) return zero();
  Expr n = num, d = den;
  if (num->kind == Kind::Quot && den->kind == Kind::Quot) {
    n = mul(num->kids[0], den->kids[1]);
    d = mul(num->kids[1], den->kids[0]);
  } else if (num->kind == Kind::Quot) {
    n = num->kids[0];
    d = mul(num->kids[1], den);
  } else if (den->kind == Kind::Quot) {
    n = mul(num, den->kids[1]);
    d = den->kids[0];
  }
  if (d->kind == Kind::Const) return div(n, d);
  if (equal(n, d)) return one();
  Node q{Kind::Quot};
  q.kids = {n, d};
  return make(std::move(q));
}

namespace {
Expr unary(Kind k, const Expr& a) {
  if (!a) throw ExprError("null expression in unary function");
  Node n{k};
  n.kids = {a};
  return make(std::move(n));
}
}  // namespace

Expr sqrt(const Expr& a) { return unary(Kind::Sqrt, a); }
Expr ln(const Expr& a) { return unary(Kind::Ln, a); }
Expr arctan(const Expr& a) { return unary(Kind::Arctan, a); }
Expr arctanh(const Expr& a) { return unary(Kind::Arctanh, a); }

// ---- printing -----------------------------------------------------------

namespace {

// precedence: sum=1, product=2, unary-prefix handled at 2, power/atom=3
void print(std::ostringstream& os, const Expr& e, int parent_prec);

void print_const(std::ostringstream& os, const GaussRat& v, int parent_prec) {
  const bool neg_re = v.re < 0;
  if (v.im == 0) {
    bool frac = boost::multiprecision::denominator(v.re) != 1;
    bool need = (parent_prec >= 3 && (neg_re || frac)) || (parent_prec == 2 && frac);
    if (parent_prec >= 2 && neg_re && !frac) need = true;
    if (need) os << '(';
    os << v.re;
    if (need) os << ')';
    return;
  }
  bool need = parent_prec >= 2;
  if (need) os << '(';
  if (v.re != 0) os << v.re << (v.im > 0 ? "+" : "");
  if (v.im == 1)
    os << "i";
  else if (v.im == -1)
    os << "-i";
  else {
    bool frac = boost::multiprecision::denominator(v.im) != 1;
    if (frac) os << '(';
    os << v.im;
    if (frac) os << ')';
    os << "*i";
  }
  if (need) os << ')';
}

void print(std::ostringstream& os, const Expr& e, int parent_prec) {
  switch (e->kind) {
    case Kind::Const:
      print_const(os, e->value, parent_prec);
      return;
    case Kind::Coord:
      os << 'x' << (e->axis + 1);
      return;
    case Kind::Param:
      os << e->name;
      return;
    case Kind::Func: {
      os << e->name;
      for (int k = 0; k < e->order; ++k) os << '\'';
      os << '(';
      print(os, e->kids[0], 0);
      os << ')';
      return;
    }
    case Kind::Sum: {
      bool need = parent_prec >= 2;
      if (need) os << '(';
      bool first = true;
      for (const auto& t : e->kids) {
        auto [c, core] = coeff_core(t);
        bool neg = c.is_real() && c.re < 0;
        if (!first) os << (neg ? "-" : "+");
        else if (neg) os << "-";
        first = false;
        if (neg) {
          GaussRat cpos = -c;
          if (cpos.is_one())
            print(os, core, 2);
          else if (is_one(core))
            print_const(os, cpos, 1);
          else {
            print_const(os, cpos, 2);
            os << '*';
            print(os, core, 2);
          }
        } else {
          print(os, t, 1);
        }
      }
      if (need) os << ')';
      return;
    }
    case Kind::Prod: {
      bool need = parent_prec >= 3;
      if (need) os << '(';
      bool first = true;
      for (const auto& f : e->kids) {
        if (!first) os << '*';
        first = false;
        print(os, f, 2);
      }
      if (need) os << ')';
      return;
    }
    case Kind::Pow: {
      print(os, e->kids[0], 3);
      os << '^' << e->expo;
      return;
    }
    case Kind::Quot: {
      bool need = parent_prec >= 3;
      if (need) os << '(';
      print(os, e->kids[0], 2);
      os << '/';
      print(os, e->kids[1], 3);
      if (need) os << ')';
      return;
    }
    case Kind::Sqrt: os << "sqrt("; print(os, e->kids[0], 0); os << ')'; return;
    case Kind::Ln: os << "ln("; print(os, e->kids[0], 0); os << ')'; return;
    case Kind::Arctan: os << "arctan("; print(os, e->kids[0], 0); os << ')'; return;
    case Kind::Arctanh: os << "arctanh("; print(os, e->kids[0], 0); os << ')'; return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print(os, e, 0);
  return os.str();
}

std::size_t tree_size(const Expr& e) {
  std::size_t n = 1;
  for (const auto& k : e->kids) n += tree_size(k);
  return n;
}

// ---- calculus -----------------------------------------------------------

Expr differentiate(const Expr& e, int axis) {
  switch (e->kind) {
    case Kind::Const:
    case Kind::Param:
      return zero();
    case Kind::Coord:
      return e->axis == axis ? one() : zero();
    case Kind::Func: {
      Expr darg = differentiate(e->kids[0], axis);
      if (is_zero(darg)) return zero();
      return mul(func(e->name, e->order + 1, e->kids[0]), darg);
    }
    case Kind::Sum: {
      std::vector<Expr> out;
      out.reserve(e->kids.size());
      for (const auto& t : e->kids) out.push_back(differentiate(t, axis));
      return add(std::move(out));
    }
    case Kind::Prod: {
      std::vector<Expr> out;
      for (std::size_t i = 0; i < e->kids.size(); ++i) {
        Expr di = differentiate(e->kids[i], axis);
        if (is_zero(di)) continue;
        std::vector<Expr> fac;
        fac.reserve(e->kids.size());
        for (std::size_t j = 0; j < e->kids.size(); ++j)
          fac.push_back(j == i ? di : e->kids[j]);
        out.push_back(mul(std::move(fac)));
      }
      return add(std::move(out));
    }
    case Kind::Pow: {
      Expr db = differentiate(e->kids[0], axis);
      if (is_zero(db)) return zero();
      return mul({integer(e->expo), pow(e->kids[0], e->expo - 1), db});
    }
    case Kind::Quot: {
      const Expr& n = e->kids[0];
      const Expr& d = e->kids[1];
      Expr dn = differentiate(n, axis);
      Expr dd = differentiate(d, axis);
      if (is_zero(dd)) return div(dn, d);
      return div(sub(mul(dn, d), mul(n, dd)), pow(d, 2));
    }
    case Kind::Sqrt: {
      Expr du = differentiate(e->kids[0], axis);
      if (is_zero(du)) return zero();
      return div(du, mul(integer(2), e));
    }
    case Kind::Ln: {
      Expr du = differentiate(e->kids[0], axis);
      if (is_zero(du)) return zero();
      return div(du, e->kids[0]);
    }
    case Kind::Arctan: {
      Expr du = differentiate(e->kids[0], axis);
      if (is_zero(du)) return zero();
      return div(du, add(one(), pow(e->kids[0], 2)));
    }
    case Kind::Arctanh: {
      Expr du = differentiate(e->kids[0], axis);
      if (is_zero(du)) return zero();
      return div(du, sub(one(), pow(e->kids[0], 2)));
    }
  }
  throw ExprError("unreachable node kind");
}

Expr replace_coord(const Expr& e, int axis, const Expr& repl) {
  switch (e->kind) {
    case Kind::Const:
    case Kind::Param:
      return e;
    case Kind::Coord:
      return e->axis == axis ? repl : e;
    default: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      bool changed = false;
      for (const auto& k : e->kids) {
        Expr nk = replace_coord(k, axis, repl);
        changed = changed || nk.get() != k.get();
        kids.push_back(std::move(nk));
      }
      if (!changed) return e;
      switch (e->kind) {
        case Kind::Func: return func(e->name, e->order, kids[0]);
        case Kind::Sum: return add(std::move(kids));
        case Kind::Prod: return mul(std::move(kids));
        case Kind::Pow: return pow(kids[0], e->expo);
        case Kind::Quot: return div(kids[0], kids[1]);
        case Kind::Sqrt: return sqrt(kids[0]);
        case Kind::Ln: return ln(kids[0]);
        case Kind::Arctan: return arctan(kids[0]);
        case Kind::Arctanh: return arctanh(kids[0]);
        default: throw ExprError("unreachable");
      }
    }
  }
}

bool any_node(const Expr& e, const std::function<bool(const Node&)>& pred) {
  if (pred(*e)) return true;
  for (const auto& k : e->kids)
    if (any_node(k, pred)) return true;
  return false;
}

bool needs_float(const Expr& e) {
  return any_node(e, [](const Node& n) {
    return n.kind == Kind::Sqrt || n.kind == Kind::Ln || n.kind == Kind::Arctan ||
           n.kind == Kind::Arctanh;
  });
}

namespace {
void collect_singular(const Expr& e, std::vector<Expr>& out) {
  switch (e->kind) {
    case Kind::Quot:
      out.push_back(e->kids[1]);
      break;
    case Kind::Pow:
      if (e->expo < 0) out.push_back(e->kids[0]);
      break;
    case Kind::Sqrt:
    case Kind::Ln:
      out.push_back(e->kids[0]);
      break;
    case Kind::Arctanh: {
      // singular where arg^2 = 1
      out.push_back(sub(one(), pow(e->kids[0], 2)));
      break;
    }
    default:
      break;
  }
  for (const auto& k : e->kids) collect_singular(k, out);
}
}  // namespace

std::vector<Expr> singular_subterms(const Expr& e) {
  std::vector<Expr> out;
  collect_singular(e, out);
  // dedupe
  std::vector<Expr> uniq;
  for (auto& s : out) {
    bool seen = false;
    for (auto& u : uniq)
      if (equal(u, s)) { seen = true; break; }
    if (!seen) uniq.push_back(s);
  }
  return uniq;
}

}  // namespace pdmv
