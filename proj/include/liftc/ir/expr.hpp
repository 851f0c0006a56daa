#pragma once

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "liftc/common.hpp"

namespace liftc::ir {

// Candidate expression IR. Houses program summaries, invariant bodies,
// operator bodies and (with MetaVar) codegen rule patterns. Expression-only:
// no statements, loops or comprehensions.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

enum class ArithOp { Add, Sub, Mul, Div, Mod };
enum class CmpOp { Lt, Le, Gt, Ge, Eq, Ne };
enum class BoolKind { And, Or, Not };

enum class ExprKind {
  Var,
  IntLit,
  BoolLit,
  Call,     // operator call, structural primitive (ite, list display) or
            // internal verifier helper (names starting with '!')
  Lambda,
  Arith,
  Compare,
  BoolOp,
  Index,
  Slice,
  Len,
  MetaVar,  // codegen patterns only
};

struct Expr {
  ExprKind kind;
  SourceLoc loc;

  std::string name;           // Var, Call target, MetaVar name
  Int int_val = 0;            // IntLit
  bool bool_val = false;      // BoolLit
  ArithOp arith_op{};         // Arith
  CmpOp cmp_op{};             // Compare
  BoolKind bool_kind{};       // BoolOp
  std::vector<std::string> params;  // Lambda
  std::vector<ExprPtr> args;  // Call args, Arith/Compare operands, BoolOp
                              // operands, Lambda body, Index/Slice/Len parts
  std::string meta_kind;      // MetaVar constraint: "", "var", "lit"

  // Slice bounds may be absent (a[:n], a[n:]); args holds {base, lo?, hi?}
  bool has_lo = false;
  bool has_hi = false;
};

// Structural primitives are always-available Call targets: `ite` per Fig 1b
// and the list display, which the parser spells `!list`.
inline const char* kListDisplay = "!list";
inline bool is_ite(const Expr& e) {
  return e.kind == ExprKind::Call && e.name == "ite";
}
inline bool is_list_display(const Expr& e) {
  return e.kind == ExprKind::Call && e.name == kListDisplay;
}
inline bool is_structural_primitive(const std::string& callee) {
  return callee == "ite" || callee == kListDisplay;
}

namespace make {

inline ExprPtr var(std::string n, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Var;
  e->name = std::move(n);
  e->loc = loc;
  return e;
}
inline ExprPtr int_lit(Int v, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::IntLit;
  e->int_val = std::move(v);
  e->loc = loc;
  return e;
}
inline ExprPtr bool_lit(bool v, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BoolLit;
  e->bool_val = v;
  e->loc = loc;
  return e;
}
inline ExprPtr call(std::string callee, std::vector<ExprPtr> args,
                    SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Call;
  e->name = std::move(callee);
  e->args = std::move(args);
  e->loc = loc;
  return e;
}
inline ExprPtr lambda(std::vector<std::string> params, ExprPtr body,
                      SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Lambda;
  e->params = std::move(params);
  e->args = {std::move(body)};
  e->loc = loc;
  return e;
}
inline ExprPtr arith(ArithOp op, ExprPtr l, ExprPtr r, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Arith;
  e->arith_op = op;
  e->args = {std::move(l), std::move(r)};
  e->loc = loc;
  return e;
}
inline ExprPtr compare(CmpOp op, ExprPtr l, ExprPtr r, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Compare;
  e->cmp_op = op;
  e->args = {std::move(l), std::move(r)};
  e->loc = loc;
  return e;
}
inline ExprPtr bool_op(BoolKind k, std::vector<ExprPtr> operands,
                       SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::BoolOp;
  e->bool_kind = k;
  e->args = std::move(operands);
  e->loc = loc;
  return e;
}
inline ExprPtr index(ExprPtr base, ExprPtr idx, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Index;
  e->args = {std::move(base), std::move(idx)};
  e->loc = loc;
  return e;
}
inline ExprPtr slice(ExprPtr base, ExprPtr lo, ExprPtr hi, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Slice;
  e->args = {std::move(base)};
  if (lo) {
    e->args.push_back(std::move(lo));
    e->has_lo = true;
  }
  if (hi) {
    e->args.push_back(std::move(hi));
    e->has_hi = true;
  }
  e->loc = loc;
  return e;
}
inline ExprPtr len(ExprPtr base, SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::Len;
  e->args = {std::move(base)};
  e->loc = loc;
  return e;
}
inline ExprPtr meta(std::string n, std::string kind = "", SourceLoc loc = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = ExprKind::MetaVar;
  e->name = std::move(n);
  e->meta_kind = std::move(kind);
  e->loc = loc;
  return e;
}
inline ExprPtr ite(ExprPtr c, ExprPtr a, ExprPtr b, SourceLoc loc = {}) {
  return call("ite", {std::move(c), std::move(a), std::move(b)}, loc);
}

}  // namespace make

inline ExprPtr slice_lo(const Expr& s) {
  return s.has_lo ? s.args[1] : nullptr;
}
inline ExprPtr slice_hi(const Expr& s) {
  if (!s.has_hi) return nullptr;
  return s.args[s.has_lo ? 2 : 1];
}

template <typename F>
void visit_preorder(const ExprPtr& e, F&& f) {
  if (!e) return;
  f(e);
  for (const auto& a : e->args) visit_preorder(a, f);
}

inline bool struct_equal(const Expr& a, const Expr& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Var:
    case ExprKind::MetaVar:
      if (a.name != b.name) return false;
      break;
    case ExprKind::IntLit:
      if (a.int_val != b.int_val) return false;
      break;
    case ExprKind::BoolLit:
      if (a.bool_val != b.bool_val) return false;
      break;
    case ExprKind::Call:
      if (a.name != b.name) return false;
      break;
    case ExprKind::Lambda:
      if (a.params != b.params) return false;
      break;
    case ExprKind::Arith:
      if (a.arith_op != b.arith_op) return false;
      break;
    case ExprKind::Compare:
      if (a.cmp_op != b.cmp_op) return false;
      break;
    case ExprKind::BoolOp:
      if (a.bool_kind != b.bool_kind) return false;
      break;
    case ExprKind::Slice:
      if (a.has_lo != b.has_lo || a.has_hi != b.has_hi) return false;
      break;
    default:
      break;
  }
  if (a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!struct_equal(*a.args[i], *b.args[i])) return false;
  return true;
}

// Free variables (lambda params bound within their bodies).
inline void free_vars_into(const ExprPtr& e, std::set<std::string>& bound,
                           std::set<std::string>& out) {
  if (!e) return;
  switch (e->kind) {
    case ExprKind::Var:
      if (!bound.count(e->name)) out.insert(e->name);
      return;
    case ExprKind::Lambda: {
      std::vector<std::string> added;
      for (const auto& p : e->params)
        if (bound.insert(p).second) added.push_back(p);
      free_vars_into(e->args[0], bound, out);
      for (const auto& p : added) bound.erase(p);
      return;
    }
    default:
      for (const auto& a : e->args) free_vars_into(a, bound, out);
  }
}

inline std::set<std::string> free_vars(const ExprPtr& e) {
  std::set<std::string> bound, out;
  free_vars_into(e, bound, out);
  return out;
}

// Capture-avoiding enough for this project's uses: substituted terms are
// either fresh symbols or closed over names never used as lambda params.
inline ExprPtr substitute(
    const ExprPtr& e,
    const std::function<ExprPtr(const std::string&)>& lookup) {
  if (!e) return e;
  if (e->kind == ExprKind::Var) {
    if (auto r = lookup(e->name)) return r;
    return e;
  }
  if (e->kind == ExprKind::Lambda) {
    auto shadowed = [&](const std::string& n) -> ExprPtr {
      for (const auto& p : e->params)
        if (p == n) return nullptr;
      return lookup(n);
    };
    auto body = substitute(e->args[0], shadowed);
    if (body == e->args[0]) return e;
    auto copy = std::make_shared<Expr>(*e);
    copy->args = {body};
    return copy;
  }
  bool changed = false;
  std::vector<ExprPtr> args;
  args.reserve(e->args.size());
  for (const auto& a : e->args) {
    auto na = substitute(a, lookup);
    changed |= (na != a);
    args.push_back(na);
  }
  if (!changed) return e;
  auto copy = std::make_shared<Expr>(*e);
  copy->args = std::move(args);
  return copy;
}

inline ExprPtr substitute_map(
    const ExprPtr& e, const std::map<std::string, ExprPtr>& env) {
  return substitute(e, [&](const std::string& n) -> ExprPtr {
    auto it = env.find(n);
    return it == env.end() ? nullptr : it->second;
  });
}

inline const char* arith_op_str(ArithOp op) {
  switch (op) {
    case ArithOp::Add: return "+";
    case ArithOp::Sub: return "-";
    case ArithOp::Mul: return "*";
    case ArithOp::Div: return "/";
    case ArithOp::Mod: return "%";
  }
  return "?";
}
inline const char* cmp_op_str(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

}  // namespace liftc::ir
