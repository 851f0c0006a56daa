#pragma once

#include <string>

#include "liftc/ir/expr.hpp"

namespace liftc::ir {

// Precedence-aware printer shared by canonical texts, prompts and codegen
// defaults. Parenthesizes only where the grammar requires it, so printed
// texts re-parse to the same tree.
//
// Precedence (low to high): lambda < or < and < not < comparison <
// additive < multiplicative < unary- < postfix/atom.
namespace prec {
constexpr int Lambda = 0;
constexpr int Or = 1;
constexpr int And = 2;
constexpr int Not = 3;
constexpr int Cmp = 4;
constexpr int Add = 5;
constexpr int Mul = 6;
constexpr int Atom = 8;
}  // namespace prec

inline int expr_prec(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Lambda: return prec::Lambda;
    case ExprKind::BoolOp:
      return e.bool_kind == BoolKind::Or    ? prec::Or
             : e.bool_kind == BoolKind::And ? prec::And
                                            : prec::Not;
    case ExprKind::Compare: return prec::Cmp;
    case ExprKind::Arith:
      return (e.arith_op == ArithOp::Add || e.arith_op == ArithOp::Sub)
                 ? prec::Add
                 : prec::Mul;
    case ExprKind::IntLit:
      return e.int_val < 0 ? prec::Mul : prec::Atom;  // unary minus literal
    default: return prec::Atom;
  }
}

inline std::string print_expr(const ExprPtr& e);

inline std::string print_child(const ExprPtr& child, int parent_prec,
                               bool tight_side) {
  std::string s = print_expr(child);
  int cp = expr_prec(*child);
  // tight_side: the operand position that requires strictly higher
  // precedence (right side of -, /, %; operand of not).
  if (cp < parent_prec || (tight_side && cp == parent_prec))
    return "(" + s + ")";
  return s;
}

inline std::string print_expr(const ExprPtr& e) {
  switch (e->kind) {
    case ExprKind::Var: return e->name;
    case ExprKind::MetaVar:
      return "$" + e->name + (e->meta_kind.empty() ? "" : ":" + e->meta_kind);
    case ExprKind::IntLit: return e->int_val.get_str();
    case ExprKind::BoolLit: return e->bool_val ? "True" : "False";
    case ExprKind::Lambda: {
      std::string s = "lambda ";
      for (size_t i = 0; i < e->params.size(); ++i) {
        if (i) s += ", ";
        s += e->params[i];
      }
      return s + ": " + print_expr(e->args[0]);
    }
    case ExprKind::Call: {
      if (is_list_display(*e)) {
        std::string s = "[";
        for (size_t i = 0; i < e->args.size(); ++i) {
          if (i) s += ", ";
          s += print_expr(e->args[i]);
        }
        return s + "]";
      }
      std::string s = e->name + "(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i) s += ", ";
        s += print_expr(e->args[i]);
      }
      return s + ")";
    }
    case ExprKind::Arith: {
      int p = expr_prec(*e);
      bool tight_rhs = e->arith_op == ArithOp::Sub ||
                       e->arith_op == ArithOp::Div ||
                       e->arith_op == ArithOp::Mod;
      return print_child(e->args[0], p, false) + " " +
             arith_op_str(e->arith_op) + " " +
             print_child(e->args[1], p, tight_rhs);
    }
    case ExprKind::Compare:
      return print_child(e->args[0], prec::Cmp, true) + " " +
             cmp_op_str(e->cmp_op) + " " +
             print_child(e->args[1], prec::Cmp, true);
    case ExprKind::BoolOp: {
      if (e->bool_kind == BoolKind::Not)
        return "not " + print_child(e->args[0], prec::Not, false);
      const char* op = e->bool_kind == BoolKind::And ? " and " : " or ";
      int p = expr_prec(*e);
      std::string s = print_child(e->args[0], p, false);
      for (size_t i = 1; i < e->args.size(); ++i)
        s += op + print_child(e->args[i], p, false);
      return s;
    }
    case ExprKind::Index:
      return print_child(e->args[0], prec::Atom, false) + "[" +
             print_expr(e->args[1]) + "]";
    case ExprKind::Slice: {
      std::string s = print_child(e->args[0], prec::Atom, false) + "[";
      if (auto lo = slice_lo(*e)) s += print_expr(lo);
      s += ":";
      if (auto hi = slice_hi(*e)) s += print_expr(hi);
      return s + "]";
    }
    case ExprKind::Len:
      return "len(" + print_expr(e->args[0]) + ")";
  }
  return "?";
}

}  // namespace liftc::ir
