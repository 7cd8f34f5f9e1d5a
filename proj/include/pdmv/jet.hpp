#pragma once

#include "pdmv/context.hpp"
#include "pdmv/expr.hpp"
#include "pdmv/field.hpp"

#include <array>
#include <unordered_map>

namespace pdmv {

constexpr int kMaxJetOrder = 4;
constexpr int kJetSlots = 35;  // multi-indices with |a| <= 4 in 3 variables

struct MIdx {
  int8_t i = 0, j = 0, l = 0;
  int total() const { return i + j + l; }
  friend bool operator==(MIdx a, MIdx b) { return a.i == b.i && a.j == b.j && a.l == b.l; }
  friend bool operator<(MIdx a, MIdx b) {
    if (a.total() != b.total()) return a.total() < b.total();
    if (a.i != b.i) return a.i > b.i;  // graded lexicographic, x1 first
    if (a.j != b.j) return a.j > b.j;
    return a.l > b.l;
  }
};

/// Global index tables for the truncated polynomial algebra.
struct JetTables {
  std::array<MIdx, kJetSlots> idx;          // slot -> multi-index
  int id[kMaxJetOrder + 1][kMaxJetOrder + 1][kMaxJetOrder + 1];  // multi-index -> slot (-1 invalid)
  int16_t prod[kJetSlots][kJetSlots];       // slot product (or -1 if beyond order 4)
  std::array<int, kMaxJetOrder + 2> count;  // #slots with |a| <= k

  static const JetTables& get();
  int slot(MIdx m) const {
    if (m.i < 0 || m.j < 0 || m.l < 0 || m.total() > kMaxJetOrder) return -1;
    return id[m.i][m.j][m.l];
  }
};

struct EvalError : std::runtime_error {
  explicit EvalError(const std::string& m) : std::runtime_error(m) {}
};

/// Truncated Taylor expansion at a point: coefficient c[s] multiplies
/// dx1^i dx2^j dx3^l for idx[s]=(i,j,l).  Arithmetic is exact truncation at
/// order k.
template <class F>
struct Jet {
  int k = 0;
  std::array<F, kJetSlots> c{};

  int slots() const { return JetTables::get().count[k]; }

  static Jet constant(int k, const F& v) {
    Jet j;
    j.k = k;
    j.c[0] = v;
    return j;
  }
  static Jet variable(int k, int axis, const F& value) {
    Jet j = constant(k, value);
    if (k >= 1) j.c[1 + axis] = F(1);
    return j;
  }

  Jet operator-() const {
    Jet r = *this;
    for (int s = 0; s < slots(); ++s) r.c[s] = -r.c[s];
    return r;
  }
  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int s = 0; s < r.slots(); ++s) r.c[s] += b.c[s];
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    for (int s = 0; s < r.slots(); ++s) r.c[s] -= b.c[s];
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    const auto& T = JetTables::get();
    Jet r;
    r.k = a.k;
    const int n = a.slots();
    for (int s = 0; s < n; ++s) {
      if (a.c[s].is_zero()) continue;
      for (int t = 0; t < n; ++t) {
        int target = T.prod[s][t];
        if (target < 0 || target >= n) continue;
        if (b.c[t].is_zero()) continue;
        r.c[target] += a.c[s] * b.c[t];
      }
    }
    return r;
  }
  Jet& operator+=(const Jet& o) { *this = *this + o; return *this; }
  Jet& operator*=(const Jet& o) { *this = *this * o; return *this; }

  Jet scaled(const F& v) const {
    Jet r = *this;
    for (int s = 0; s < slots(); ++s) r.c[s] = r.c[s] * v;
    return r;
  }

  /// Nilpotent part (constant coefficient removed).
  Jet delta() const {
    Jet r = *this;
    r.c[0] = F(0);
    return r;
  }

  /// Horner composition sum_m a[m] * delta^m for outer Taylor coefficients a.
  static Jet compose(const Jet& inner, const std::array<F, kMaxJetOrder + 1>& a) {
    Jet d = inner.delta();
    Jet r = Jet::constant(inner.k, a[inner.k]);
    for (int m = inner.k - 1; m >= 0; --m) {
      r = r * d;
      r.c[0] += a[m];
    }
    return r;
  }

  Jet inverse() const {
    if (c[0].is_zero()) throw EvalError("division by zero at evaluation point");
    std::array<F, kMaxJetOrder + 1> a{};
    F inv0 = c[0].inverse();
    F cur = inv0;
    for (int m = 0; m <= k; ++m) {
      a[m] = cur;
      cur = -(cur * inv0);
    }
    return compose(*this, a);
  }

  Jet ipow(long long e) const {
    if (e < 0) return inverse().ipow(-e);
    Jet acc = Jet::constant(k, F(1));
    Jet base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }
};

using JetQ = Jet<GaussRat>;
using JetC = Jet<Complex50>;

/// Per-run evaluation state: node cache and (float backend) the largest
/// intermediate magnitude, which calibrates the relative zero tolerance.
template <class F>
struct EvalState {
  std::array<F, 3> at;
  int k = 0;
  const Context* ctx = nullptr;
  std::unordered_map<const Node*, Jet<F>> cache;
  double max_mag = 1.0;
};

template <class F>
Jet<F> eval_node(const Expr& e, EvalState<F>& st);

struct Point {
  Rat x1, x2, x3;
  Rat coord(int axis) const { return axis == 0 ? x1 : axis == 1 ? x2 : x3; }
};

/// Evaluate e as an order-k jet at p with the exact backend.  Throws
/// EvalError on radical/transcendental nodes, poles, or uninstantiated
/// opaque functions.
JetQ eval_jet_exact(const Expr& e, const Point& p, int k, const Context& ctx);

/// Float backend (50 decimal digits).  max_mag, when given, accumulates the
/// largest coefficient magnitude seen during evaluation.
JetC eval_jet_float(const Expr& e, const Point& p, int k, const Context& ctx,
                    double* max_mag = nullptr);

/// partial derivative value: alpha! * coefficient(alpha)
GaussRat partial(const JetQ& j, MIdx alpha);
Complex50 partial(const JetC& j, MIdx alpha);

/// Fast screening evaluation on doubles (sampling only, not verdicts).
/// Returns false on any singularity.
bool eval_double(const Expr& e, double x1, double x2, double x3, const Context& ctx,
                 double& out);

}  // namespace pdmv
