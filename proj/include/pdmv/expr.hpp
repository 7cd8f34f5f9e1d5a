#pragma once

#include "pdmv/field.hpp"

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace pdmv {

enum class Kind : uint8_t {
  Const, Coord, Param, Func, Sum, Prod, Pow, Quot, Sqrt, Ln, Arctan, Arctanh
};

struct Node;
using Expr = std::shared_ptr<const Node>;

/// Immutable expression node.  Trees are built exclusively through the
/// constructor helpers below, which flatten nested sums/products, fold
/// constants and merge syntactically equal terms.  Nothing stronger: no
/// distribution, no factoring, no radical rewriting.
struct Node {
  Kind kind;
  GaussRat value;         // Const
  int axis = 0;           // Coord: 0,1,2 for x1,x2,x3
  int order = 0;          // Func: derivative order
  long long expo = 0;     // Pow
  std::string name;       // Param, Func
  std::vector<Expr> kids;
};

struct ExprError : std::runtime_error {
  explicit ExprError(const std::string& m) : std::runtime_error(m) {}
};

// ---- constructors -------------------------------------------------------

Expr constant(GaussRat v);
Expr integer(long long n);
Expr rational(long long num, long long den);
Expr imag_unit();
Expr coord(int axis);
Expr param(std::string name);
Expr func(std::string name, int deriv_order, Expr arg);

Expr add(std::vector<Expr> terms);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr neg(const Expr& a);
Expr mul(std::vector<Expr> factors);
Expr mul(const Expr& a, const Expr& b);
Expr pow(const Expr& base, long long e);
Expr div(const Expr& num, const Expr& den);
Expr sqrt(const Expr& a);
Expr ln(const Expr& a);
Expr arctan(const Expr& a);
Expr arctanh(const Expr& a);

inline Expr zero() { return integer(0); }
inline Expr one() { return integer(1); }

// ---- inspection ---------------------------------------------------------

bool is_zero(const Expr& e);
bool is_one(const Expr& e);
bool is_const(const Expr& e);

/// Total order: 0 if structurally equal.  Commutative layers are kept sorted
/// by this order, so equal values built along different routes usually
/// compare equal.
int compare(const Expr& a, const Expr& b);
inline bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

std::string to_string(const Expr& e);

/// Number of nodes (diagnostics only).
std::size_t tree_size(const Expr& e);

// ---- calculus -----------------------------------------------------------

constexpr int kMaxFuncDerivOrder = 5;

/// Exact partial derivative with respect to coordinate `axis` (0..2).
Expr differentiate(const Expr& e, int axis);

/// Replace every occurrence of coordinate `axis` by `repl`.
Expr replace_coord(const Expr& e, int axis, const Expr& repl);

/// Walk the tree; return true if pred holds anywhere.
bool any_node(const Expr& e, const std::function<bool(const Node&)>& pred);

/// True if evaluation requires the float backend (radical or transcendental
/// node present).
bool needs_float(const Expr& e);

/// Collect denominators, radicands and log/arctan-type arguments: the
/// subexpressions that must stay away from zero (or branch points) at a
/// sample point.
std::vector<Expr> singular_subterms(const Expr& e);

}  // namespace pdmv
