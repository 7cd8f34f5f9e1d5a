#pragma once

#include "pdmv/diffop.hpp"
#include "pdmv/rng.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace pdmv {

/// First-order generators of the conformal algebra of 3-space, realized as
/// differential operators with Gaussian-rational constants (p_a = -i d_a).
DiffOp gen_P(int a);
DiffOp gen_L(int a);
DiffOp gen_D();
DiffOp gen_K(int a);

/// so(1,4) basis built from the conformal generators: indices 0..4, with
/// S_ab = eps_abc L_c (a,b=1..3), S_4a = (K_a - P_a)/2, S_0a = (K_a + P_a)/2,
/// S_04 = D.  Antisymmetric in its indices.
DiffOp gen_S(int mu, int nu);

/// Lookup by the names used in dataset files: P1..P3, L1..L3, D, K1..K3,
/// S01..S04, S12, ... ; returns nullopt for unknown names.
std::optional<DiffOp> generator_by_name(const std::string& name);

/// Names accepted by generator_by_name, in a stable order.
const std::vector<std::string>& generator_names();

/// max |value| of (op psi)(p) over the given test functions and points,
/// exact backend.  L1 magnitude of the Gaussian-rational value.
Rat action_residual(const DiffOp& op, const std::vector<Expr>& test_fns,
                    const std::vector<Point>& points);

/// Random polynomial of total degree <= deg with small rational coefficients.
Expr random_polynomial(Rng& rng, int deg);
std::vector<Expr> random_test_functions(Rng& rng, int count, int deg);
std::vector<Point> random_points(Rng& rng, int count);

// ---- enveloping-algebra identities --------------------------------------

/// One identity: `delta` builds LHS - RHS in the operator-exact reading used
/// by the engine; `tabulated_delta` is present when the catalogued form
/// differs (ordering constants, coefficient swaps) and builds that literal
/// reading instead.
struct Identity {
  std::string id;
  std::string description;
  std::function<DiffOp()> delta;
  std::function<DiffOp()> tabulated_delta;  // null when identical
  std::string note;
};

const std::vector<Identity>& identity_table();
const Identity* find_identity(const std::string& id);

struct IdentityReport {
  std::string id;
  bool holds = false;            // operator-exact reading annihilates test jets
  Rat max_residual;              // exact L1 magnitude over all samples
  bool tabulated_differs = false;
  Rat tabulated_residual;        // residual of the literal catalogued form
  std::string note;
};

IdentityReport check_identity(const Identity& ident, int degree = 5, int n_test = 10,
                              int n_points = 10, uint64_t seed = 0);

/// Decompose a first-order operator in the span of the eleven conformal
/// generators plus the identity operator; returns nullopt if it is not in
/// the span.  Used by the structure-constant closure test.
std::optional<std::vector<GaussRat>> expand_in_conformal_basis(const DiffOp& op,
                                                               uint64_t seed = 7);

}  // namespace pdmv
