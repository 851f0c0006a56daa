#pragma once

#include <string>
#include <vector>

#include "liftc/ir/expr.hpp"
#include "liftc/ir/print.hpp"

namespace liftc::ir {

namespace detail {

// Rewrites lambda parameters to positional names (x0, x1, ...) in traversal
// order. Only lambda binders are renamed; free names are semantic.
inline ExprPtr alpha_rename(const ExprPtr& e, int& counter,
                            const std::map<std::string, std::string>& renames) {
  if (!e) return e;
  switch (e->kind) {
    case ExprKind::Var: {
      auto it = renames.find(e->name);
      if (it == renames.end()) return e;
      return make::var(it->second, e->loc);
    }
    case ExprKind::Call: {
      // A renamed lambda parameter can also appear in call position (f(x)).
      auto copy = std::make_shared<Expr>(*e);
      auto it = renames.find(e->name);
      if (it != renames.end()) copy->name = it->second;
      copy->args.clear();
      for (const auto& a : e->args)
        copy->args.push_back(alpha_rename(a, counter, renames));
      return copy;
    }
    case ExprKind::Lambda: {
      auto inner = renames;
      std::vector<std::string> new_params;
      for (const auto& p : e->params) {
        std::string np = "x" + std::to_string(counter++);
        inner[p] = np;
        new_params.push_back(np);
      }
      auto copy = std::make_shared<Expr>(*e);
      copy->params = std::move(new_params);
      copy->args = {alpha_rename(e->args[0], counter, inner)};
      return copy;
    }
    default: {
      bool changed = false;
      std::vector<ExprPtr> args;
      for (const auto& a : e->args) {
        auto na = alpha_rename(a, counter, renames);
        changed |= (na != a);
        args.push_back(na);
      }
      if (!changed) return e;
      auto copy = std::make_shared<Expr>(*e);
      copy->args = std::move(args);
      return copy;
    }
  }
}

}  // namespace detail

struct Normalized {
  std::string text;
  uint64_t hash;
};

// Canonical text + 64-bit hash. Alpha-renames lambda parameters, strips
// formatting via the fixed-precedence printer. Equal ASTs (modulo lambda
// naming) produce equal text, hence equal hashes.
inline Normalized normalize_expr(const ExprPtr& e) {
  int counter = 0;
  auto renamed = detail::alpha_rename(e, counter, {});
  std::string text = print_expr(renamed);
  return {text, fnv1a(text)};
}

// Application count: operator calls, ite, arithmetic, comparisons and
// boolean connectives each count 1; leaves (vars, literals), indexing,
// slicing, len and list displays count 0. The paper's "expression length"
// of an n-term chain maps to n-1 here (documented off-by-one).
inline int expr_size(const ExprPtr& e) {
  if (!e) return 0;
  int n = 0;
  switch (e->kind) {
    case ExprKind::Call:
      n = is_list_display(*e) ? 0 : 1;
      break;
    case ExprKind::Arith:
    case ExprKind::Compare:
    case ExprKind::BoolOp:
      n = 1;
      break;
    default:
      n = 0;
  }
  for (const auto& a : e->args) n += expr_size(a);
  return n;
}

// Nesting depth of counted applications; the companion metric to expr_size.
inline int expr_depth(const ExprPtr& e) {
  if (!e) return 0;
  int child = 0;
  for (const auto& a : e->args) child = std::max(child, expr_depth(a));
  switch (e->kind) {
    case ExprKind::Call:
      return child + (is_list_display(*e) ? 0 : 1);
    case ExprKind::Arith:
    case ExprKind::Compare:
    case ExprKind::BoolOp:
      return child + 1;
    default:
      return child;
  }
}

}  // namespace liftc::ir
