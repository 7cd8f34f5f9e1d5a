#include "pdmv/jet.hpp"

#include <cmath>

namespace pdmv {

namespace {

JetTables build_tables() {
  JetTables T{};
  int s = 0;
  for (int d = 0; d <= kMaxJetOrder; ++d) {
    for (int i = d; i >= 0; --i)
      for (int j = d - i; j >= 0; --j) {
        int l = d - i - j;
        T.idx[s] = MIdx{static_cast<int8_t>(i), static_cast<int8_t>(j),
                        static_cast<int8_t>(l)};
        ++s;
      }
    T.count[d + 1] = s;
  }
  T.count[0] = 0;  // unused; count[k+1] = slots for order k
  for (auto& plane : T.id)
    for (auto& row : plane)
      for (auto& v : row) v = -1;
  for (int t = 0; t < kJetSlots; ++t) T.id[T.idx[t].i][T.idx[t].j][T.idx[t].l] = t;
  for (int a = 0; a < kJetSlots; ++a)
    for (int b = 0; b < kJetSlots; ++b) {
      MIdx m{static_cast<int8_t>(T.idx[a].i + T.idx[b].i),
             static_cast<int8_t>(T.idx[a].j + T.idx[b].j),
             static_cast<int8_t>(T.idx[a].l + T.idx[b].l)};
      T.prod[a][b] = static_cast<int16_t>(m.total() > kMaxJetOrder ? -1 : T.id[m.i][m.j][m.l]);
    }
  return T;
}

}  // namespace

const JetTables& JetTables::get() {
  static const JetTables T = build_tables();
  return T;
}

namespace {

template <class F>
F from_gauss(const GaussRat& g);
template <>
GaussRat from_gauss<GaussRat>(const GaussRat& g) { return g; }
template <>
Complex50 from_gauss<Complex50>(const GaussRat& g) { return Complex50::from(g); }

template <class F>
F from_rat(const Rat& q);
template <>
GaussRat from_rat<GaussRat>(const Rat& q) { return GaussRat(q); }
template <>
Complex50 from_rat<Complex50>(const Rat& q) { return Complex50::from(q); }

template <class F>
void note_magnitude(EvalState<F>&, const Jet<F>&) {}

template <>
void note_magnitude<Complex50>(EvalState<Complex50>& st, const Jet<Complex50>& j) {
  for (int s = 0; s < j.slots(); ++s) {
    if (j.c[s].is_zero()) continue;
    double m = j.c[s].abs().convert_to<double>();
    if (m > st.max_mag) st.max_mag = m;
  }
}

// Univariate Taylor coefficients (in the first slot group) of the reciprocal
// of A + B t + C t^2, used for the arctan / arctanh derivative series.
template <class F>
std::array<F, kMaxJetOrder + 1> reciprocal_quadratic(int k, const F& A, const F& B, const F& C) {
  Jet<F> D = Jet<F>::constant(k, A);
  const auto& T = JetTables::get();
  if (k >= 1) D.c[T.slot({1, 0, 0})] = B;
  if (k >= 2) D.c[T.slot({2, 0, 0})] = C;
  Jet<F> w = D.inverse();
  std::array<F, kMaxJetOrder + 1> out{};
  for (int m = 0; m <= k; ++m) out[m] = w.c[T.slot({static_cast<int8_t>(m), 0, 0})];
  return out;
}

template <class F>
Jet<F> eval_func(const Expr& e, EvalState<F>& st) {
  Jet<F> inner = eval_node(e->kids[0], st);
  Expr body = st.ctx ? st.ctx->function_derivative(e->name, e->order) : nullptr;
  if (!body)
    throw EvalError("opaque function " + e->name + " is not instantiated");
  Expr closed = substitute(body, *st.ctx);
  // univariate expansion of the instantiation at the inner value
  EvalState<F> sub;
  sub.at = {inner.c[0], F(0), F(0)};
  sub.k = st.k;
  sub.ctx = st.ctx;
  Jet<F> u = eval_node(closed, sub);
  if constexpr (std::is_same_v<F, Complex50>) {
    if (sub.max_mag > st.max_mag) st.max_mag = sub.max_mag;
  }
  const auto& T = JetTables::get();
  std::array<F, kMaxJetOrder + 1> a{};
  for (int m = 0; m <= st.k; ++m) a[m] = u.c[T.slot({static_cast<int8_t>(m), 0, 0})];
  return Jet<F>::compose(inner, a);
}

template <class F>
Jet<F> eval_sqrt(const Jet<F>& inner) {
  if constexpr (std::is_same_v<F, GaussRat>) {
    throw EvalError("sqrt requires the float backend");
  } else {
    if (inner.c[0].is_zero()) throw EvalError("sqrt branch point at evaluation point");
    std::array<F, kMaxJetOrder + 1> a{};
    F inv0 = inner.c[0].inverse();
    a[0] = sqrt(inner.c[0]);
    for (int m = 1; m <= inner.k; ++m) {
      Rat f(3 - 2 * m, 2 * m);  // (1/2 - (m-1)) / m
      a[m] = a[m - 1] * inv0 * from_rat<F>(f);
    }
    return Jet<F>::compose(inner, a);
  }
}

template <class F>
Jet<F> eval_ln(const Jet<F>& inner) {
  if constexpr (std::is_same_v<F, GaussRat>) {
    throw EvalError("ln requires the float backend");
  } else {
    if (inner.c[0].is_zero()) throw EvalError("log branch point at evaluation point");
    std::array<F, kMaxJetOrder + 1> a{};
    F inv0 = inner.c[0].inverse();
    a[0] = log(inner.c[0]);
    if (inner.k >= 1) a[1] = inv0;
    for (int m = 2; m <= inner.k; ++m)
      a[m] = -(a[m - 1] * inv0) * from_rat<F>(Rat(m - 1, m));
    return Jet<F>::compose(inner, a);
  }
}

template <class F>
Jet<F> eval_arctan(const Jet<F>& inner) {
  if constexpr (std::is_same_v<F, GaussRat>) {
    throw EvalError("arctan requires the float backend");
  } else {
    const F& c0 = inner.c[0];
    F A = F(1) + c0 * c0;
    if (A.is_zero()) throw EvalError("arctan pole at evaluation point");
    auto w = reciprocal_quadratic(std::max(inner.k - 1, 0), A, c0 + c0, F(1));
    std::array<F, kMaxJetOrder + 1> a{};
    a[0] = atan(c0);
    for (int m = 1; m <= inner.k; ++m) a[m] = w[m - 1] * from_rat<F>(Rat(1, m));
    return Jet<F>::compose(inner, a);
  }
}

template <class F>
Jet<F> eval_arctanh(const Jet<F>& inner) {
  if constexpr (std::is_same_v<F, GaussRat>) {
    throw EvalError("arctanh requires the float backend");
  } else {
    const F& c0 = inner.c[0];
    F A = F(1) - c0 * c0;
    if (A.is_zero()) throw EvalError("arctanh branch point at evaluation point");
    auto w = reciprocal_quadratic(std::max(inner.k - 1, 0), A, -(c0 + c0), F(-1));
    std::array<F, kMaxJetOrder + 1> a{};
    a[0] = atanh(c0);
    for (int m = 1; m <= inner.k; ++m) a[m] = w[m - 1] * from_rat<F>(Rat(1, m));
    return Jet<F>::compose(inner, a);
  }
}

}  // namespace

template <class F>
Jet<F> eval_node(const Expr& e, EvalState<F>& st) {
  auto hit = st.cache.find(e.get());
  if (hit != st.cache.end()) return hit->second;
  Jet<F> r;
  switch (e->kind) {
    case Kind::Const:
      r = Jet<F>::constant(st.k, from_gauss<F>(e->value));
      break;
    case Kind::Coord:
      r = Jet<F>::variable(st.k, e->axis, st.at[e->axis]);
      break;
    case Kind::Param: {
      const GaussRat* v = st.ctx ? st.ctx->param(e->name) : nullptr;
      if (!v) throw EvalError("unbound parameter " + e->name);
      r = Jet<F>::constant(st.k, from_gauss<F>(*v));
      break;
    }
    case Kind::Func:
      r = eval_func(e, st);
      break;
    case Kind::Sum: {
      r = Jet<F>::constant(st.k, F(0));
      for (const auto& t : e->kids) r += eval_node(t, st);
      break;
    }
    case Kind::Prod: {
      r = Jet<F>::constant(st.k, F(1));
      for (const auto& t : e->kids) r *= eval_node(t, st);
      break;
    }
    case Kind::Pow:
      r = eval_node(e->kids[0], st).ipow(e->expo);
      break;
    case Kind::Quot:
      r = eval_node(e->kids[0], st) * eval_node(e->kids[1], st).inverse();
      break;
    case Kind::Sqrt:
      r = eval_sqrt(eval_node(e->kids[0], st));
      break;
    case Kind::Ln:
      r = eval_ln(eval_node(e->kids[0], st));
      break;
    case Kind::Arctan:
      r = eval_arctan(eval_node(e->kids[0], st));
      break;
    case Kind::Arctanh:
      r = eval_arctanh(eval_node(e->kids[0], st));
      break;
  }
  note_magnitude(st, r);
  st.cache.emplace(e.get(), r);
  return r;
}

template Jet<GaussRat> eval_node<GaussRat>(const Expr&, EvalState<GaussRat>&);
template Jet<Complex50> eval_node<Complex50>(const Expr&, EvalState<Complex50>&);

JetQ eval_jet_exact(const Expr& e, const Point& p, int k, const Context& ctx) {
  if (k < 0 || k > kMaxJetOrder) throw EvalError("jet order out of range");
  EvalState<GaussRat> st;
  st.at = {GaussRat(p.x1), GaussRat(p.x2), GaussRat(p.x3)};
  st.k = k;
  st.ctx = &ctx;
  return eval_node(e, st);
}

JetC eval_jet_float(const Expr& e, const Point& p, int k, const Context& ctx,
                    double* max_mag) {
  if (k < 0 || k > kMaxJetOrder) throw EvalError("jet order out of range");
  EvalState<Complex50> st;
  st.at = {Complex50::from(p.x1), Complex50::from(p.x2), Complex50::from(p.x3)};
  st.k = k;
  st.ctx = &ctx;
  JetC r = eval_node(e, st);
  if (max_mag && st.max_mag > *max_mag) *max_mag = st.max_mag;
  return r;
}

namespace {
Rat factorial_of(MIdx a) {
  auto fact = [](int n) {
    Rat f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
  };
  return fact(a.i) * fact(a.j) * fact(a.l);
}
}  // namespace

GaussRat partial(const JetQ& j, MIdx alpha) {
  int s = JetTables::get().slot(alpha);
  if (s < 0 || alpha.total() > j.k) throw EvalError("multi-index beyond jet order");
  return j.c[s] * GaussRat(factorial_of(alpha));
}

Complex50 partial(const JetC& j, MIdx alpha) {
  int s = JetTables::get().slot(alpha);
  if (s < 0 || alpha.total() > j.k) throw EvalError("multi-index beyond jet order");
  return j.c[s] * Complex50::from(factorial_of(alpha));
}

namespace {
bool eval_double_rec(const Expr& e, const std::array<double, 3>& at, const Context& ctx,
                     double& out) {
  switch (e->kind) {
    case Kind::Const:
      if (e->value.im != 0) return false;
      out = e->value.re.convert_to<double>();
      return true;
    case Kind::Coord:
      out = at[e->axis];
      return true;
    case Kind::Param: {
      const GaussRat* v = ctx.param(e->name);
      if (!v || v->im != 0) return false;
      out = v->re.convert_to<double>();
      return true;
    }
    case Kind::Func: {
      double u;
      if (!eval_double_rec(e->kids[0], at, ctx, u)) return false;
      Expr body = ctx.function_derivative(e->name, e->order);
      if (!body) return false;
      return eval_double_rec(body, {u, 0.0, 0.0}, ctx, out);
    }
    case Kind::Sum: {
      out = 0;
      for (const auto& t : e->kids) {
        double v;
        if (!eval_double_rec(t, at, ctx, v)) return false;
        out += v;
      }
      return true;
    }
    case Kind::Prod: {
      out = 1;
      for (const auto& t : e->kids) {
        double v;
        if (!eval_double_rec(t, at, ctx, v)) return false;
        out *= v;
      }
      return true;
    }
    case Kind::Pow: {
      double b;
      if (!eval_double_rec(e->kids[0], at, ctx, b)) return false;
      if (b == 0 && e->expo < 0) return false;
      out = std::pow(b, static_cast<double>(e->expo));
      return std::isfinite(out);
    }
    case Kind::Quot: {
      double n, d;
      if (!eval_double_rec(e->kids[0], at, ctx, n)) return false;
      if (!eval_double_rec(e->kids[1], at, ctx, d)) return false;
      if (d == 0) return false;
      out = n / d;
      return std::isfinite(out);
    }
    case Kind::Sqrt: {
      double u;
      if (!eval_double_rec(e->kids[0], at, ctx, u)) return false;
      if (u < 0) return false;
      out = std::sqrt(u);
      return true;
    }
    case Kind::Ln: {
      double u;
      if (!eval_double_rec(e->kids[0], at, ctx, u)) return false;
      if (u <= 0) return false;
      out = std::log(u);
      return true;
    }
    case Kind::Arctan: {
      double u;
      if (!eval_double_rec(e->kids[0], at, ctx, u)) return false;
      out = std::atan(u);
      return true;
    }
    case Kind::Arctanh: {
      double u;
      if (!eval_double_rec(e->kids[0], at, ctx, u)) return false;
      if (u <= -1 || u >= 1) return false;
      out = std::atanh(u);
      return true;
    }
  }
  return false;
}
}  // namespace

bool eval_double(const Expr& e, double x1, double x2, double x3, const Context& ctx,
                 double& out) {
  return eval_double_rec(e, {x1, x2, x3}, ctx, out);
}

}  // namespace pdmv
