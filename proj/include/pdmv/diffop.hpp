#pragma once

#include "pdmv/expr.hpp"
#include "pdmv/jet.hpp"

#include <map>

namespace pdmv {

/// Finite sum of coefficient * d^alpha terms in normal form (coefficients to
/// the left of all derivatives).  Order capped at 4: enough for products of
/// two second-order operators.
class DiffOp {
 public:
  DiffOp() = default;

  static DiffOp zero() { return DiffOp(); }
  static DiffOp multiplication(Expr coeff) {
    DiffOp d;
    d.set({0, 0, 0}, std::move(coeff));
    return d;
  }
  static DiffOp derivative(int axis, Expr coeff = one()) {
    DiffOp d;
    MIdx m{};
    (axis == 0 ? m.i : axis == 1 ? m.j : m.l) = 1;
    d.set(m, std::move(coeff));
    return d;
  }

  bool empty() const { return terms_.empty(); }
  int order() const {
    int o = 0;
    for (auto& [m, c] : terms_) o = std::max(o, m.total());
    return o;
  }
  const std::map<MIdx, Expr>& terms() const { return terms_; }

  Expr coeff(MIdx m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? pdmv::zero() : it->second;
  }

  void set(MIdx m, Expr c) {
    if (is_zero(c)) terms_.erase(m);
    else terms_[m] = std::move(c);
  }
  void accumulate(MIdx m, const Expr& c) { set(m, add(coeff(m), c)); }

  friend DiffOp operator+(const DiffOp& a, const DiffOp& b) {
    DiffOp r = a;
    for (auto& [m, c] : b.terms_) r.accumulate(m, c);
    return r;
  }
  friend DiffOp operator-(const DiffOp& a, const DiffOp& b) {
    DiffOp r = a;
    for (auto& [m, c] : b.terms_) r.accumulate(m, neg(c));
    return r;
  }
  DiffOp& operator+=(const DiffOp& o) { *this = *this + o; return *this; }
  DiffOp& operator-=(const DiffOp& o) { *this = *this - o; return *this; }

  DiffOp scaled(const Expr& s) const {
    DiffOp r;
    for (auto& [m, c] : terms_) r.set(m, mul(s, c));
    return r;
  }
  DiffOp scaled(const GaussRat& s) const { return scaled(constant(s)); }
  DiffOp operator-() const { return scaled(GaussRat(-1)); }
};

struct DiffOpError : std::runtime_error {
  explicit DiffOpError(const std::string& m) : std::runtime_error(m) {}
};

/// Operator composition A o B via Leibniz expansion; throws on order overflow.
DiffOp compose(const DiffOp& a, const DiffOp& b);

/// AB - BA.  Requires combined order <= 4; the top-order coefficients must
/// cancel structurally (internal consistency of the Leibniz expansion) and an
/// exception is raised if they do not.
DiffOp commutator(const DiffOp& a, const DiffOp& b);

/// Anticommutator AB + BA.
DiffOp anticommutator(const DiffOp& a, const DiffOp& b);

/// Apply the operator to a function symbolically.
Expr apply(const DiffOp& op, const Expr& psi);

/// Divergence-form view of a second-order operator Q = d_a mu^{ab} d_b + eta:
/// mu from the second-order coefficients, eta the multiplication part, and
/// the first-order defect c_b - d_a mu^{ab} (zero exactly when Q is formally
/// hermitian in the divergence sense).
struct DivergenceForm {
  Expr mu[3][3];
  Expr eta;
  Expr defect[3];
};

DivergenceForm divergence_form(const DiffOp& q);

/// P_a g P_a as a divergence-form operator (= -d_a g d_a).
DiffOp momentum_sandwich(const Expr& g);

std::string to_string(const DiffOp& op);

}  // namespace pdmv
