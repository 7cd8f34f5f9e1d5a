#pragma once

#include "pdmv/expr.hpp"

#include <map>
#include <optional>
#include <string>

namespace pdmv {

/// Bindings applied when substituting or evaluating an Expr.  Opaque-function
/// instantiations are univariate: the formal variable is stored as coordinate
/// x1 inside the instantiation body.
class Context {
 public:
  void bind_param(const std::string& name, GaussRat value) { params_[name] = std::move(value); }

  /// Instantiate opaque function `name` as `body`, a univariate Expr whose
  /// formal variable is coordinate x1.  body may reference parameters but no
  /// other coordinate and no opaque function.
  void bind_function(const std::string& name, Expr body);

  /// Declare a function as symbolic (pass-through in substitution).
  void declare_symbolic(const std::string& name) { funcs_[name] = nullptr; }

  const GaussRat* param(const std::string& name) const {
    auto it = params_.find(name);
    return it == params_.end() ? nullptr : &it->second;
  }

  bool has_function(const std::string& name) const { return funcs_.count(name) != 0; }

  /// Instantiation body, or null when symbolic/unknown.
  Expr function_body(const std::string& name) const {
    auto it = funcs_.find(name);
    return it == funcs_.end() ? nullptr : it->second;
  }

  /// d-th derivative of the instantiation in its formal variable (cached).
  Expr function_derivative(const std::string& name, int order) const;

  const std::map<std::string, GaussRat>& params() const { return params_; }
  const std::map<std::string, Expr>& functions() const { return funcs_; }

 private:
  std::map<std::string, GaussRat> params_;
  std::map<std::string, Expr> funcs_;
  mutable std::map<std::pair<std::string, int>, Expr> deriv_cache_;
};

/// Apply ctx to e: parameters become constants, instantiated opaque functions
/// are expanded (with chain of stored derivative order), unbound symbols pass
/// through.
Expr substitute(const Expr& e, const Context& ctx);

}  // namespace pdmv
