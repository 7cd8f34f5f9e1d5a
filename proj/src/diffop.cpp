#include "pdmv/diffop.hpp"

#include <sstream>

namespace pdmv {

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int t = 1; t <= k; ++t) r = r * (n - k + t) / t;
  return r;
}

Expr partial_expr(const Expr& e, MIdx m) {
  Expr r = e;
  for (int t = 0; t < m.i; ++t) r = differentiate(r, 0);
  for (int t = 0; t < m.j; ++t) r = differentiate(r, 1);
  for (int t = 0; t < m.l; ++t) r = differentiate(r, 2);
  return r;
}

}  // namespace

DiffOp compose(const DiffOp& a, const DiffOp& b) {
  DiffOp r;
  for (const auto& [al, ca] : a.terms()) {
    for (const auto& [be, cb] : b.terms()) {
      if (al.total() + be.total() > kMaxJetOrder)
        throw DiffOpError("operator composition exceeds order 4");
      // a d^al (b d^be .) = a * sum_{g<=al} C(al,g) d^g(b) d^{al-g+be}
      for (int gi = 0; gi <= al.i; ++gi)
        for (int gj = 0; gj <= al.j; ++gj)
          for (int gl = 0; gl <= al.l; ++gl) {
            MIdx g{static_cast<int8_t>(gi), static_cast<int8_t>(gj),
                   static_cast<int8_t>(gl)};
            Expr db = partial_expr(cb, g);
            if (is_zero(db)) continue;
            long long c = binom(al.i, gi) * binom(al.j, gj) * binom(al.l, gl);
            MIdx tgt{static_cast<int8_t>(al.i - gi + be.i),
                     static_cast<int8_t>(al.j - gj + be.j),
                     static_cast<int8_t>(al.l - gl + be.l)};
            Expr term = mul({integer(c), ca, db});
            r.accumulate(tgt, term);
          }
    }
  }
  return r;
}

DiffOp commutator(const DiffOp& a, const DiffOp& b) {
  int oa = a.order(), ob = b.order();
  if (oa + ob > kMaxJetOrder) throw DiffOpError("commutator operands exceed order 4");
  DiffOp r = compose(a, b) - compose(b, a);
  // Leibniz consistency: the top order must cancel identically.
  for (const auto& [m, c] : r.terms()) {
    if (m.total() >= oa + ob && !is_zero(c))
      throw DiffOpError("top-order coefficient failed to cancel in commutator: " +
                        pdmv::to_string(c));
  }
  return r;
}

DiffOp anticommutator(const DiffOp& a, const DiffOp& b) {
  return compose(a, b) + compose(b, a);
}

Expr apply(const DiffOp& op, const Expr& psi) {
  std::vector<Expr> parts;
  parts.reserve(op.terms().size());
  for (const auto& [m, c] : op.terms()) parts.push_back(mul(c, partial_expr(psi, m)));
  return add(std::move(parts));
}

DivergenceForm divergence_form(const DiffOp& q) {
  if (q.order() > 2) throw DiffOpError("divergence form requires order <= 2");
  DivergenceForm f;
  for (auto& row : f.mu)
    for (auto& e : row) e = zero();
  auto idx = [](int a) {
    MIdx m{};
    (a == 0 ? m.i : a == 1 ? m.j : m.l) = 1;
    return m;
  };
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      MIdx m{};
      m.i = static_cast<int8_t>((a == 0) + (b == 0));
      m.j = static_cast<int8_t>((a == 1) + (b == 1));
      m.l = static_cast<int8_t>((a == 2) + (b == 2));
      Expr c = q.coeff(m);
      if (a == b) {
        f.mu[a][a] = c;
      } else {
        Expr half = mul(rational(1, 2), c);
        f.mu[a][b] = half;
        f.mu[b][a] = half;
      }
    }
  f.eta = q.coeff({0, 0, 0});
  for (int b = 0; b < 3; ++b) {
    Expr div = zero();
    for (int a = 0; a < 3; ++a) div = add(div, differentiate(f.mu[a][b], a));
    f.defect[b] = sub(q.coeff(idx(b)), div);
  }
  return f;
}

DiffOp momentum_sandwich(const Expr& g) {
  // P_a g P_a = -d_a g d_a = -(g Lap + g_a d_a)
  DiffOp r;
  for (int a = 0; a < 3; ++a) {
    MIdx m2{};
    (a == 0 ? m2.i : a == 1 ? m2.j : m2.l) = 2;
    r.accumulate(m2, neg(g));
    MIdx m1{};
    (a == 0 ? m1.i : a == 1 ? m1.j : m1.l) = 1;
    r.accumulate(m1, neg(differentiate(g, a)));
  }
  return r;
}

std::string to_string(const DiffOp& op) {
  if (op.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : op.terms()) {
    if (!first) os << "  +  ";
    first = false;
    os << "[" << pdmv::to_string(c) << "]";
    for (int t = 0; t < m.i; ++t) os << " d1";
    for (int t = 0; t < m.j; ++t) os << " d2";
    for (int t = 0; t < m.l; ++t) os << " d3";
  }
  return os.str();
}

}  // namespace pdmv
