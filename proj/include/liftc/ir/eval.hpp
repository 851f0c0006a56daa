#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "liftc/ir/expr.hpp"
#include "liftc/ir/operator_def.hpp"
#include "liftc/ir/value.hpp"

namespace liftc::ir {

class EvalError : public Diagnostic {
 public:
  using Diagnostic::Diagnostic;
};

struct EvalConfig {
  // Steps = operator/lambda applications. Malformed recursive candidates
  // exhaust fuel instead of hanging the pipeline.
  long fuel = 1'000'000;
};

namespace detail {

struct EvalCtx {
  const DslDefinition* dsl;
  long fuel;
};

inline Value eval(const ExprPtr& e, const ProgramState& env, EvalCtx& ctx);

inline Int clamp_index(const Int& n, size_t size) {
  if (n < 0) return 0;
  if (n > Int(static_cast<unsigned long>(size))) return Int(static_cast<unsigned long>(size));
  return n;
}

inline Value apply_closure(const Closure& c, std::vector<Value> args,
                           EvalCtx& ctx, SourceLoc loc) {
  if (c.params.size() != args.size())
    throw EvalError("ArityMismatch",
                    "lambda expects " + std::to_string(c.params.size()) +
                        " args, got " + std::to_string(args.size()),
                    loc);
  if (--ctx.fuel <= 0) throw EvalError("FuelExhausted", "evaluation budget spent", loc);
  ProgramState env = c.env ? *c.env : ProgramState{};
  for (size_t i = 0; i < args.size(); ++i) env[c.params[i]] = std::move(args[i]);
  return eval(c.body, env, ctx);
}

inline Value apply_operator(const OperatorDef& op, std::vector<Value> args,
                            EvalCtx& ctx, SourceLoc loc) {
  if (op.params.size() != args.size())
    throw EvalError("ArityMismatch",
                    op.name + " expects " + std::to_string(op.params.size()) +
                        " args, got " + std::to_string(args.size()),
                    loc);
  if (--ctx.fuel <= 0) throw EvalError("FuelExhausted", "evaluation budget spent", loc);
  ProgramState env;
  for (size_t i = 0; i < args.size(); ++i) {
    if (op.params[i].second.is(TypeKind::Fn) && !args[i].is_closure())
      throw EvalError("TypeError", op.name + ": argument " + op.params[i].first +
                                       " must be a function", loc);
    env[op.params[i].first] = std::move(args[i]);
  }
  return eval(op.body, env, ctx);
}

inline Value builtin_transpose(const Value& v, SourceLoc loc) {
  if (!v.is_matrix()) throw EvalError("TypeError", "transpose expects a matrix", loc);
  const auto& m = v.as_matrix();
  if (m.empty() || m[0].empty()) return Value(IntMatrix{});
  size_t cols = m[0].size();
  for (const auto& row : m) cols = std::min(cols, row.size());
  IntMatrix out(cols, IntList(m.size()));
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = 0; j < cols; ++j) out[j][i] = m[i][j];
  return Value(std::move(out));
}

inline Value eval(const ExprPtr& e, const ProgramState& env, EvalCtx& ctx) {
  switch (e->kind) {
    case ExprKind::Var: {
      auto it = env.find(e->name);
      if (it == env.end())
        throw EvalError("TypeError", "unbound variable " + e->name, e->loc);
      return it->second;
    }
    case ExprKind::IntLit: return Value(e->int_val);
    case ExprKind::BoolLit: return Value(e->bool_val);
    case ExprKind::Lambda: {
      Closure c;
      c.params = e->params;
      c.body = e->args[0];
      c.env = std::make_shared<ProgramState>(env);
      return Value(std::move(c));
    }
    case ExprKind::Len: {
      Value b = eval(e->args[0], env, ctx);
      if (b.is_list()) return Value(Int(static_cast<unsigned long>(b.as_list().size())));
      if (b.is_matrix()) return Value(Int(static_cast<unsigned long>(b.as_matrix().size())));
      throw EvalError("TypeError", "len of non-container", e->loc);
    }
    case ExprKind::Index: {
      Value b = eval(e->args[0], env, ctx);
      Value i = eval(e->args[1], env, ctx);
      if (!i.is_int()) throw EvalError("TypeError", "index must be int", e->loc);
      const Int& idx = i.as_int();
      if (b.is_list()) {
        const auto& l = b.as_list();
        if (idx < 0 || idx >= Int(static_cast<unsigned long>(l.size())))
          throw EvalError("IndexOutOfBounds",
                          "index " + idx.get_str() + " of list length " +
                              std::to_string(l.size()), e->loc);
        return Value(l[idx.get_ui()]);
      }
      if (b.is_matrix()) {
        const auto& m = b.as_matrix();
        if (idx < 0 || idx >= Int(static_cast<unsigned long>(m.size())))
          throw EvalError("IndexOutOfBounds",
                          "row " + idx.get_str() + " of matrix with " +
                              std::to_string(m.size()) + " rows", e->loc);
        return Value(m[idx.get_ui()]);
      }
      throw EvalError("TypeError", "indexing a non-container", e->loc);
    }
    case ExprKind::Slice: {
      Value b = eval(e->args[0], env, ctx);
      auto bounds = [&](size_t size) {
        Int lo(0), hi(static_cast<unsigned long>(size));
        if (auto le = slice_lo(*e)) {
          Value v = eval(le, env, ctx);
          if (!v.is_int()) throw EvalError("TypeError", "slice bound must be int", e->loc);
          lo = clamp_index(v.as_int(), size);
        }
        if (auto he = slice_hi(*e)) {
          Value v = eval(he, env, ctx);
          if (!v.is_int()) throw EvalError("TypeError", "slice bound must be int", e->loc);
          hi = clamp_index(v.as_int(), size);
        }
        if (hi < lo) hi = lo;
        return std::pair<size_t, size_t>(lo.get_ui(), hi.get_ui());
      };
      if (b.is_list()) {
        auto [lo, hi] = bounds(b.as_list().size());
        return Value(IntList(b.as_list().begin() + lo, b.as_list().begin() + hi));
      }
      if (b.is_matrix()) {
        auto [lo, hi] = bounds(b.as_matrix().size());
        return Value(IntMatrix(b.as_matrix().begin() + lo, b.as_matrix().begin() + hi));
      }
      throw EvalError("TypeError", "slicing a non-container", e->loc);
    }
    case ExprKind::Arith: {
      Value l = eval(e->args[0], env, ctx);
      Value r = eval(e->args[1], env, ctx);
      // + concatenates containers (Fig 1b's [x] + rest).
      if (e->arith_op == ArithOp::Add && !l.is_int()) {
        if (l.is_list() && r.is_list()) {
          IntList out = l.as_list();
          out.insert(out.end(), r.as_list().begin(), r.as_list().end());
          return Value(std::move(out));
        }
        if (l.is_matrix() || r.is_matrix()) {
          // [] inhabits both container types; coerce for row concatenation.
          auto rows = [](const Value& v) -> IntMatrix {
            if (v.is_matrix()) return v.as_matrix();
            if (v.is_list() && v.as_list().empty()) return {};
            throw EvalError("TypeError", "+ on mismatched containers");
          };
          IntMatrix out = rows(l);
          IntMatrix rr = rows(r);
          out.insert(out.end(), rr.begin(), rr.end());
          return Value(std::move(out));
        }
      }
      if (!l.is_int() || !r.is_int())
        throw EvalError("TypeError", "arithmetic on non-integers", e->loc);
      const Int& a = l.as_int();
      const Int& b = r.as_int();
      switch (e->arith_op) {
        case ArithOp::Add: return Value(Int(a + b));
        case ArithOp::Sub: return Value(Int(a - b));
        case ArithOp::Mul: return Value(Int(a * b));
        case ArithOp::Div:
          if (b == 0) throw EvalError("DivisionByZero", "division by zero", e->loc);
          return Value(Int(a / b));  // mpz: truncation toward zero
        case ArithOp::Mod:
          if (b == 0) throw EvalError("DivisionByZero", "modulo by zero", e->loc);
          return Value(Int(a % b));
      }
      break;
    }
    case ExprKind::Compare: {
      Value l = eval(e->args[0], env, ctx);
      Value r = eval(e->args[1], env, ctx);
      if (e->cmp_op == CmpOp::Eq || e->cmp_op == CmpOp::Ne) {
        bool eq = value_equal(l, r);
        return Value(e->cmp_op == CmpOp::Eq ? eq : !eq);
      }
      if (!l.is_int() || !r.is_int())
        throw EvalError("TypeError", "ordering on non-integers", e->loc);
      const Int& a = l.as_int();
      const Int& b = r.as_int();
      switch (e->cmp_op) {
        case CmpOp::Lt: return Value(a < b);
        case CmpOp::Le: return Value(a <= b);
        case CmpOp::Gt: return Value(a > b);
        case CmpOp::Ge: return Value(a >= b);
        default: break;
      }
      break;
    }
    case ExprKind::BoolOp: {
      auto as_bool = [&](const ExprPtr& x) {
        Value v = eval(x, env, ctx);
        if (!v.is_bool()) throw EvalError("TypeError", "boolean operand expected", e->loc);
        return v.as_bool();
      };
      switch (e->bool_kind) {
        case BoolKind::Not: return Value(!as_bool(e->args[0]));
        case BoolKind::And: {
          for (const auto& a : e->args)
            if (!as_bool(a)) return Value(false);
          return Value(true);
        }
        case BoolKind::Or: {
          for (const auto& a : e->args)
            if (as_bool(a)) return Value(true);
          return Value(false);
        }
      }
      break;
    }
    case ExprKind::Call: {
      if (is_ite(*e)) {
        if (e->args.size() != 3)
          throw EvalError("ArityMismatch", "ite takes 3 arguments", e->loc);
        Value c = eval(e->args[0], env, ctx);
        if (!c.is_bool()) throw EvalError("TypeError", "ite condition must be bool", e->loc);
        return eval(e->args[c.as_bool() ? 1 : 2], env, ctx);
      }
      if (is_list_display(*e)) {
        if (e->args.empty()) return Value(IntList{});
        std::vector<Value> elems;
        elems.reserve(e->args.size());
        for (const auto& a : e->args) elems.push_back(eval(a, env, ctx));
        if (elems[0].is_int()) {
          IntList out;
          for (auto& v : elems) {
            if (!v.is_int()) throw EvalError("TypeError", "mixed list display", e->loc);
            out.push_back(v.as_int());
          }
          return Value(std::move(out));
        }
        IntMatrix out;
        for (auto& v : elems) {
          if (v.is_list()) out.push_back(v.as_list());
          else if (v.is_matrix() && v.as_matrix().empty()) out.push_back({});
          else throw EvalError("TypeError", "mixed list display", e->loc);
        }
        return Value(std::move(out));
      }
      // Lambda applied by name: f(x) where f is bound to a closure.
      if (auto it = env.find(e->name); it != env.end() && it->second.is_closure()) {
        std::vector<Value> args;
        for (const auto& a : e->args) args.push_back(eval(a, env, ctx));
        return apply_closure(it->second.as_closure(), std::move(args), ctx, e->loc);
      }
      const OperatorDef* op = ctx.dsl ? ctx.dsl->find(e->name) : nullptr;
      if (!op)
        throw EvalError("UnknownOperator", "unknown operator " + e->name, e->loc);
      std::vector<Value> args;
      for (const auto& a : e->args) args.push_back(eval(a, env, ctx));
      if (op->builtin) {
        if (op->name == "transpose") {
          if (args.size() != 1)
            throw EvalError("ArityMismatch", "transpose takes 1 argument", e->loc);
          return builtin_transpose(args[0], e->loc);
        }
        throw EvalError("UnknownOperator", "builtin without semantics: " + op->name, e->loc);
      }
      return apply_operator(*op, std::move(args), ctx, e->loc);
    }
    default:
      break;
  }
  throw EvalError("TypeError", "unevaluable expression", e->loc);
}

}  // namespace detail

// Pure, deterministic, fuel-bounded evaluation of a candidate expression
// against the recursive operator semantics.
inline Value eval_ir(const ExprPtr& e, const ProgramState& env,
                     const DslDefinition& dsl, EvalConfig cfg = {}) {
  detail::EvalCtx ctx{&dsl, cfg.fuel};
  return detail::eval(e, env, ctx);
}

}  // namespace liftc::ir
