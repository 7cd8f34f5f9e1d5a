#include "pdmv/context.hpp"

namespace pdmv {

void Context::bind_function(const std::string& name, Expr body) {
  if (!body) throw ExprError("null instantiation for " + name);
  bool bad = any_node(body, [](const Node& n) {
    return (n.kind == Kind::Coord && n.axis != 0) || n.kind == Kind::Func;
  });
  if (bad)
    throw ExprError("instantiation of " + name +
                    " must be univariate in its formal variable and closed");
  funcs_[name] = std::move(body);
  for (auto it = deriv_cache_.begin(); it != deriv_cache_.end();) {
    if (it->first.first == name) it = deriv_cache_.erase(it);
    else ++it;
  }
}

Expr Context::function_derivative(const std::string& name, int order) const {
  auto it = funcs_.find(name);
  if (it == funcs_.end() || !it->second) return nullptr;
  if (order == 0) return it->second;
  auto key = std::make_pair(name, order);
  auto c = deriv_cache_.find(key);
  if (c != deriv_cache_.end()) return c->second;
  Expr d = differentiate(function_derivative(name, order - 1), 0);
  deriv_cache_[key] = d;
  return d;
}

Expr substitute(const Expr& e, const Context& ctx) {
  switch (e->kind) {
    case Kind::Const:
    case Kind::Coord:
      return e;
    case Kind::Param: {
      if (const GaussRat* v = ctx.param(e->name)) return constant(*v);
      return e;
    }
    case Kind::Func: {
      Expr arg = substitute(e->kids[0], ctx);
      Expr body = ctx.function_derivative(e->name, e->order);
      if (!body) {
        if (arg.get() == e->kids[0].get()) return e;
        return func(e->name, e->order, arg);
      }
      // body may contain parameters: bind them too
      Expr closed = substitute(body, ctx);
      return replace_coord(closed, 0, arg);
    }
    default: {
      std::vector<Expr> kids;
      kids.reserve(e->kids.size());
      bool changed = false;
      for (const auto& k : e->kids) {
        Expr nk = substitute(k, ctx);
        changed = changed || nk.get() != k.get();
        kids.push_back(std::move(nk));
      }
      if (!changed) return e;
      switch (e->kind) {
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

}  // namespace pdmv
