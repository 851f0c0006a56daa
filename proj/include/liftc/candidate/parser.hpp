#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "liftc/ir/expr.hpp"
#include "liftc/ir/normalize.hpp"
#include "liftc/ir/operator_def.hpp"

namespace liftc::cand {

using ir::ExprPtr;

enum class RejectReason {
  LoopConstruct,
  Comprehension,
  MultipleStatements,
  UnknownFunction,
  UnsupportedSyntax,
  ArityOrType,
  NotAFunctionDef,
};

inline const char* reject_reason_str(RejectReason r) {
  switch (r) {
    case RejectReason::LoopConstruct: return "LoopConstruct";
    case RejectReason::Comprehension: return "Comprehension";
    case RejectReason::MultipleStatements: return "MultipleStatements";
    case RejectReason::UnknownFunction: return "UnknownFunction";
    case RejectReason::UnsupportedSyntax: return "UnsupportedSyntax";
    case RejectReason::ArityOrType: return "ArityOrType";
    case RejectReason::NotAFunctionDef: return "NotAFunctionDef";
  }
  return "?";
}

struct Rejection {
  RejectReason reason;
  std::string detail;  // offending function name / token
  SourceLoc loc;

  std::string str() const {
    std::string s = reject_reason_str(reason);
    if (!detail.empty()) s += "(" + detail + ")";
    if (loc.valid()) s += " at " + loc.str();
    return s;
  }
};

struct FuncDef {
  std::string name;
  std::vector<std::string> params;
  ExprPtr body;
};

enum class CandidateKind { PS, INV };

struct ParseResult {
  std::optional<Rejection> rejection;
  std::vector<FuncDef> functions;  // empty + no rejection => bare expression
  ExprPtr bare;                    // set when the text was a bare expression

  bool ok() const { return !rejection.has_value(); }
  // The primary expression: the bare expr or the first function's body.
  ExprPtr primary() const {
    if (bare) return bare;
    return functions.empty() ? nullptr : functions[0].body;
  }
};

struct ParseOptions {
  const ir::DslDefinition* dsl = nullptr;
  // Extra legal call targets (operator fn-typed params when parsing bodies).
  std::set<std::string> extra_callables;
  bool allow_metavars = false;  // codegen rule patterns
};

namespace detail {

enum class Tok {
  End, Newline, Ident, Int, Punct,
};

struct Token {
  Tok kind;
  std::string text;
  Int int_val = 0;
  SourceLoc loc;
};

struct LexOut {
  std::vector<Token> toks;
  std::optional<Rejection> rej;
};

inline bool ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
inline bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9');
}

inline LexOut lex(const std::string& text, bool allow_metavars) {
  LexOut out;
  int line = 1, col = 1;
  size_t i = 0;
  int depth = 0;  // () and [] nesting; newlines inside brackets are layout
  auto loc = [&]() { return SourceLoc{line, col}; };
  auto reject = [&](std::string tok, SourceLoc l) {
    out.rej = Rejection{RejectReason::UnsupportedSyntax, std::move(tok), l};
  };
  while (i < text.size()) {
    char c = text[i];
    SourceLoc here = loc();
    if (c == '\n') {
      if (depth == 0 &&
          (out.toks.empty() || out.toks.back().kind != Tok::Newline))
        out.toks.push_back({Tok::Newline, "\n", 0, here});
      ++i; ++line; col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') { ++i; ++col; continue; }
    if (c == '#') {  // comment to end of line
      while (i < text.size() && text[i] != '\n') { ++i; ++col; }
      continue;
    }
    if (c == '\\' && i + 1 < text.size() && text[i + 1] == '\n') {
      i += 2; ++line; col = 1;  // explicit line continuation
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      Token t{Tok::Ident, text.substr(i, j - i), 0, here};
      col += static_cast<int>(j - i);
      i = j;
      out.toks.push_back(std::move(t));
      continue;
    }
    if (c >= '0' && c <= '9') {
      size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j < text.size() && (ident_start(text[j]) || text[j] == '.')) {
        reject(text.substr(i, j - i + 1), here);
        return out;
      }
      Token t{Tok::Int, text.substr(i, j - i), Int(text.substr(i, j - i)), here};
      col += static_cast<int>(j - i);
      i = j;
      out.toks.push_back(std::move(t));
      continue;
    }
    auto two = i + 1 < text.size() ? text.substr(i, 2) : "";
    if (two == "**" || two == ":=" || two == "+=" || two == "-=" ||
        two == "*=" || two == "/=") {
      reject(two, here);
      return out;
    }
    if (two == "==" || two == "!=" || two == "<=" || two == ">=" ||
        two == "->" || two == "//") {
      out.toks.push_back({Tok::Punct, two, 0, here});
      i += 2; col += 2;
      continue;
    }
    if (std::string("()[],:+-*/%<>=").find(c) != std::string::npos) {
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') depth = std::max(0, depth - 1);
      out.toks.push_back({Tok::Punct, std::string(1, c), 0, here});
      ++i; ++col;
      continue;
    }
    if (c == '$' && allow_metavars) {
      out.toks.push_back({Tok::Punct, "$", 0, here});
      ++i; ++col;
      continue;
    }
    // Everything else (strings, dots, braces, decorators, unicode...) is
    // outside the accepted grammar.
    std::string shown;
    if (c >= 0x21 && c < 0x7f) shown = std::string(1, c);
    else {
      char buf[8];
      snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned char>(c));
      shown = buf;
    }
    reject(shown, here);
    return out;
  }
  out.toks.push_back({Tok::End, "", 0, loc()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts)
      : toks_(std::move(toks)), opts_(opts) {}

  // Failure is recorded in rejection(); callers check for null.
  ExprPtr parse_expression_entry() {
    skip_newlines();
    auto e = expr();
    if (failed()) return nullptr;
    skip_newlines();
    if (!at(Tok::End)) {
      fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
      return nullptr;
    }
    return e;
  }

  const std::optional<Rejection>& rejection() const { return rej_; }

  ParseResult parse_candidate_entry(CandidateKind kind) {
    ParseResult res;
    skip_newlines();
    if (at(Tok::End)) {
      res.rejection = Rejection{RejectReason::NotAFunctionDef, "empty candidate", cur().loc};
      return res;
    }
    if (!is_kw("def")) {
      // Bare expressions are accepted as PS bodies only.
      if (kind == CandidateKind::INV) {
        res.rejection =
            Rejection{RejectReason::NotAFunctionDef, first_stmt_hint(), cur().loc};
        return res;
      }
      auto e = statement_guard_expr();
      if (failed()) { res.rejection = rej_; return res; }
      skip_newlines();
      if (!at(Tok::End)) {
        res.rejection = Rejection{RejectReason::MultipleStatements, "", cur().loc};
        return res;
      }
      res.bare = e;
      return res;
    }
    while (is_kw("def")) {
      auto fd = parse_def();
      if (failed()) { res.rejection = rej_; return res; }
      res.functions.push_back(std::move(fd));
      skip_newlines();
    }
    if (!at(Tok::End)) {
      res.rejection = Rejection{RejectReason::MultipleStatements, cur().text, cur().loc};
      return res;
    }
    if (kind == CandidateKind::PS && res.functions.size() > 1) {
      res.rejection = Rejection{RejectReason::MultipleStatements,
                                "multiple function definitions", {}};
      return res;
    }
    if (kind == CandidateKind::INV) {
      for (const auto& f : res.functions) {
        if (!bool_shaped(f.body)) {
          res.rejection = Rejection{RejectReason::ArityOrType,
                                    f.name + ": invariant body is not boolean",
                                    f.body ? f.body->loc : SourceLoc{}};
          return res;
        }
      }
    }
    return res;
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
  const ParseOptions& opts_;
  std::optional<Rejection> rej_;
  std::vector<std::set<std::string>> lambda_scopes_;

  const Token& cur() const { return toks_[std::min(pos_, toks_.size() - 1)]; }
  bool at(Tok k) const { return cur().kind == k; }
  bool is_punct(const char* p) const {
    return cur().kind == Tok::Punct && cur().text == p;
  }
  bool is_kw(const char* k) const {
    return cur().kind == Tok::Ident && cur().text == k;
  }
  void advance() { if (pos_ + 1 < toks_.size()) ++pos_; }
  void skip_newlines() { while (at(Tok::Newline)) advance(); }
  bool failed() const { return rej_.has_value(); }
  ExprPtr fail(RejectReason r, std::string detail, SourceLoc loc) {
    if (!rej_) rej_ = Rejection{r, std::move(detail), loc};
    return nullptr;
  }
  std::string first_stmt_hint() {
    return cur().kind == Tok::Ident ? cur().text : cur().text;
  }

  bool expect_punct(const char* p) {
    if (is_punct(p)) { advance(); return true; }
    fail(RejectReason::UnsupportedSyntax, cur().text.empty() ? "end" : cur().text,
         cur().loc);
    return false;
  }

  // Statement-level keywords that classify the rejection.
  ExprPtr statement_guard_expr() {
    if (is_kw("for") || is_kw("while"))
      return fail(RejectReason::LoopConstruct, cur().text, cur().loc);
    if (is_kw("if") || is_kw("assert") || is_kw("import") || is_kw("from") ||
        is_kw("class") || is_kw("with") || is_kw("pass"))
      return fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
    auto e = expr();
    if (failed()) return nullptr;
    if (is_punct("=")) return fail(RejectReason::MultipleStatements,
                                   "assignment statement", cur().loc);
    return e;
  }

  FuncDef parse_def() {
    FuncDef fd;
    advance();  // def
    if (!at(Tok::Ident)) {
      fail(RejectReason::NotAFunctionDef, "missing function name", cur().loc);
      return fd;
    }
    fd.name = cur().text;
    advance();
    if (!expect_punct("(")) return fd;
    while (!is_punct(")")) {
      if (at(Tok::End)) { fail(RejectReason::UnsupportedSyntax, "end", cur().loc); return fd; }
      if (!at(Tok::Ident)) { fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc); return fd; }
      fd.params.push_back(cur().text);
      advance();
      if (is_punct(":")) skip_annotation();
      if (failed()) return fd;
      if (is_punct(",")) { advance(); continue; }
      if (!is_punct(")")) { fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc); return fd; }
    }
    advance();  // )
    if (is_punct("->")) skip_return_annotation();
    if (failed()) return fd;
    if (!expect_punct(":")) return fd;
    skip_newlines();
    // Body: statements other than a single return are out of grammar.
    if (is_kw("for") || is_kw("while")) {
      fail(RejectReason::LoopConstruct, cur().text, cur().loc);
      return fd;
    }
    if (!is_kw("return")) {
      if (at(Tok::Ident) || at(Tok::Int)) {
        // e.g. an assignment or bare expression before the return
        size_t save = pos_;
        // Peek: ident ... '=' at statement level means assignment.
        while (!at(Tok::Newline) && !at(Tok::End)) {
          if (is_punct("=")) {
            fail(RejectReason::MultipleStatements, "assignment before return", cur().loc);
            return fd;
          }
          advance();
        }
        pos_ = save;
      }
      fail(RejectReason::MultipleStatements, "function body must be a single return",
           cur().loc);
      return fd;
    }
    advance();  // return
    fd.body = expr();
    if (failed()) return fd;
    skip_newlines();
    // Anything else before the next def (or EOF) is a second statement.
    if (!at(Tok::End) && !is_kw("def")) {
      fail(RejectReason::MultipleStatements, cur().text, cur().loc);
      return fd;
    }
    return fd;
  }

  // Annotations are tolerated and skipped; they carry no semantics here.
  void skip_annotation() {
    advance();  // :
    int depth = 0;
    while (!at(Tok::End)) {
      if (depth == 0 && (is_punct(",") || is_punct(")"))) return;
      if (is_punct("(") || is_punct("[")) ++depth;
      if (is_punct(")") || is_punct("]")) --depth;
      advance();
    }
    fail(RejectReason::UnsupportedSyntax, "end", cur().loc);
  }
  void skip_return_annotation() {
    advance();  // ->
    while (!at(Tok::End) && !is_punct(":") && !at(Tok::Newline)) advance();
    if (!is_punct(":"))
      fail(RejectReason::UnsupportedSyntax, "missing :", cur().loc);
  }

  bool in_lambda_scope(const std::string& n) const {
    for (const auto& s : lambda_scopes_)
      if (s.count(n)) return true;
    return false;
  }

  // expr := ternary | lambda
  ExprPtr expr() {
    if (is_kw("lambda")) return lambda();
    return ternary();
  }

  ExprPtr lambda() {
    SourceLoc loc = cur().loc;
    advance();
    std::vector<std::string> params;
    while (!is_punct(":")) {
      if (!at(Tok::Ident))
        return fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
      params.push_back(cur().text);
      advance();
      if (is_punct(",")) { advance(); continue; }
      if (!is_punct(":"))
        return fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
    }
    advance();  // :
    lambda_scopes_.emplace_back(params.begin(), params.end());
    auto body = expr();
    lambda_scopes_.pop_back();
    if (failed()) return nullptr;
    return ir::make::lambda(std::move(params), body, loc);
  }

  // Python conditional expression sugar: `a if c else b` becomes ite(c,a,b).
  ExprPtr ternary() {
    auto a = or_expr();
    if (failed()) return nullptr;
    if (is_kw("if")) {
      SourceLoc loc = cur().loc;
      advance();
      auto c = or_expr();
      if (failed()) return nullptr;
      if (!is_kw("else"))
        return fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
      advance();
      auto b = expr();
      if (failed()) return nullptr;
      return ir::make::ite(c, a, b, loc);
    }
    return a;
  }

  ExprPtr or_expr() {
    auto l = and_expr();
    if (failed()) return nullptr;
    while (is_kw("or")) {
      SourceLoc loc = cur().loc;
      advance();
      auto r = and_expr();
      if (failed()) return nullptr;
      l = ir::make::bool_op(ir::BoolKind::Or, {l, r}, loc);
    }
    return l;
  }
  ExprPtr and_expr() {
    auto l = not_expr();
    if (failed()) return nullptr;
    while (is_kw("and")) {
      SourceLoc loc = cur().loc;
      advance();
      auto r = not_expr();
      if (failed()) return nullptr;
      l = ir::make::bool_op(ir::BoolKind::And, {l, r}, loc);
    }
    return l;
  }
  ExprPtr not_expr() {
    if (is_kw("not")) {
      SourceLoc loc = cur().loc;
      advance();
      auto e = not_expr();
      if (failed()) return nullptr;
      return ir::make::bool_op(ir::BoolKind::Not, {e}, loc);
    }
    return comparison();
  }
  ExprPtr comparison() {
    auto l = additive();
    if (failed()) return nullptr;
    if (cur().kind == Tok::Punct) {
      ir::CmpOp op;
      bool found = true;
      if (cur().text == "<") op = ir::CmpOp::Lt;
      else if (cur().text == "<=") op = ir::CmpOp::Le;
      else if (cur().text == ">") op = ir::CmpOp::Gt;
      else if (cur().text == ">=") op = ir::CmpOp::Ge;
      else if (cur().text == "==") op = ir::CmpOp::Eq;
      else if (cur().text == "!=") op = ir::CmpOp::Ne;
      else found = false;
      if (found) {
        SourceLoc loc = cur().loc;
        advance();
        auto r = additive();
        if (failed()) return nullptr;
        // Chained comparisons (a < b < c) are out of grammar.
        if (cur().kind == Tok::Punct &&
            (cur().text == "<" || cur().text == "<=" || cur().text == ">" ||
             cur().text == ">=" || cur().text == "==" || cur().text == "!="))
          return fail(RejectReason::UnsupportedSyntax, "chained comparison", cur().loc);
        return ir::make::compare(op, l, r, loc);
      }
    }
    if (is_kw("in") || is_kw("is"))
      return fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
    return l;
  }
  ExprPtr additive() {
    auto l = multiplicative();
    if (failed()) return nullptr;
    while (is_punct("+") || is_punct("-")) {
      auto op = cur().text == "+" ? ir::ArithOp::Add : ir::ArithOp::Sub;
      SourceLoc loc = cur().loc;
      advance();
      auto r = multiplicative();
      if (failed()) return nullptr;
      l = ir::make::arith(op, l, r, loc);
    }
    return l;
  }
  ExprPtr multiplicative() {
    auto l = unary();
    if (failed()) return nullptr;
    while (is_punct("*") || is_punct("/") || is_punct("//") || is_punct("%")) {
      ir::ArithOp op = cur().text == "*"   ? ir::ArithOp::Mul
                       : cur().text == "%" ? ir::ArithOp::Mod
                                           : ir::ArithOp::Div;
      SourceLoc loc = cur().loc;
      advance();
      auto r = unary();
      if (failed()) return nullptr;
      l = ir::make::arith(op, l, r, loc);
    }
    return l;
  }
  ExprPtr unary() {
    if (is_punct("-")) {
      SourceLoc loc = cur().loc;
      advance();
      auto e = unary();
      if (failed()) return nullptr;
      if (e->kind == ir::ExprKind::IntLit)
        return ir::make::int_lit(-e->int_val, loc);
      return ir::make::arith(ir::ArithOp::Sub, ir::make::int_lit(0, loc), e, loc);
    }
    return postfix();
  }

  ExprPtr postfix() {
    auto e = atom();
    if (failed()) return nullptr;
    while (true) {
      if (is_punct("(")) {
        if (e->kind != ir::ExprKind::Var)
          return fail(RejectReason::UnsupportedSyntax, "(", cur().loc);
        e = call_tail(e->name, e->loc);
        if (failed()) return nullptr;
        continue;
      }
      if (is_punct("[")) {
        SourceLoc loc = cur().loc;
        advance();
        ExprPtr lo, hi;
        bool is_slice = false;
        if (is_punct(":")) is_slice = true;
        else {
          lo = expr();
          if (failed()) return nullptr;
          if (is_punct(":")) is_slice = true;
        }
        if (is_slice) {
          advance();  // :
          if (is_punct(":"))
            return fail(RejectReason::UnsupportedSyntax, "slice step", cur().loc);
          if (!is_punct("]")) {
            hi = expr();
            if (failed()) return nullptr;
            if (is_punct(":"))
              return fail(RejectReason::UnsupportedSyntax, "slice step", cur().loc);
          }
          if (!expect_punct("]")) return nullptr;
          e = ir::make::slice(e, lo, hi, loc);
        } else {
          if (!expect_punct("]")) return nullptr;
          e = ir::make::index(e, lo, loc);
        }
        continue;
      }
      break;
    }
    return e;
  }

  ExprPtr call_tail(const std::string& callee, SourceLoc loc) {
    advance();  // (
    std::vector<ExprPtr> args;
    while (!is_punct(")")) {
      if (at(Tok::End))
        return fail(RejectReason::UnsupportedSyntax, "end", cur().loc);
      auto a = expr();
      if (failed()) return nullptr;
      if (is_kw("for"))
        return fail(RejectReason::Comprehension, "generator expression", cur().loc);
      if (is_punct("="))
        return fail(RejectReason::UnsupportedSyntax, "keyword argument", cur().loc);
      args.push_back(a);
      if (is_punct(",")) { advance(); continue; }
      if (!is_punct(")"))
        return fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
    }
    advance();  // )
    return check_call(callee, std::move(args), loc);
  }

  ExprPtr check_call(const std::string& callee, std::vector<ExprPtr> args,
                     SourceLoc loc) {
    if (callee == "len") {
      if (args.size() != 1)
        return fail(RejectReason::ArityOrType, "len takes 1 argument", loc);
      if (args[0]->kind == ir::ExprKind::Lambda)
        return fail(RejectReason::ArityOrType, "lambda argument to len", loc);
      return ir::make::len(args[0], loc);
    }
    if (callee == "ite") {
      if (args.size() != 3)
        return fail(RejectReason::ArityOrType, "ite takes 3 arguments", loc);
      return ir::make::call("ite", std::move(args), loc);
    }
    if (in_lambda_scope(callee) || opts_.extra_callables.count(callee)) {
      for (const auto& a : args)
        if (a->kind == ir::ExprKind::Lambda)
          return fail(RejectReason::ArityOrType, "lambda passed to " + callee, loc);
      return ir::make::call(callee, std::move(args), loc);
    }
    const ir::OperatorDef* op = opts_.dsl ? opts_.dsl->find(callee) : nullptr;
    if (!op) return fail(RejectReason::UnknownFunction, callee, loc);
    if (op->params.size() != args.size())
      return fail(RejectReason::ArityOrType,
                  callee + " takes " + std::to_string(op->params.size()) +
                      " arguments, got " + std::to_string(args.size()), loc);
    for (size_t i = 0; i < args.size(); ++i) {
      bool want_fn = op->params[i].second.is(ir::TypeKind::Fn);
      bool got_lambda = args[i]->kind == ir::ExprKind::Lambda;
      // A fn-typed slot takes a lambda or a fn-typed name being passed
      // through (recursive operator bodies forward their own f).
      bool got_fn_name =
          args[i]->kind == ir::ExprKind::Var &&
          (in_lambda_scope(args[i]->name) ||
           opts_.extra_callables.count(args[i]->name));
      if (want_fn && !got_lambda && !got_fn_name)
        return fail(RejectReason::ArityOrType,
                    callee + ": argument " + op->params[i].first +
                        " must be a lambda", loc);
      if (!want_fn && got_lambda)
        return fail(RejectReason::ArityOrType,
                    callee + ": unexpected lambda argument", loc);
      if (want_fn && got_lambda &&
          args[i]->params.size() != op->params[i].second.fn_params.size())
        return fail(RejectReason::ArityOrType,
                    callee + ": lambda arity mismatch", loc);
    }
    return ir::make::call(callee, std::move(args), loc);
  }

  ExprPtr atom() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Int: {
        advance();
        return ir::make::int_lit(t.int_val, t.loc);
      }
      case Tok::Ident: {
        if (t.text == "True") { advance(); return ir::make::bool_lit(true, t.loc); }
        if (t.text == "False") { advance(); return ir::make::bool_lit(false, t.loc); }
        if (t.text == "for" || t.text == "while")
          return fail(RejectReason::LoopConstruct, t.text, t.loc);
        if (t.text == "None" || t.text == "in" || t.text == "is" ||
            t.text == "def" || t.text == "return" || t.text == "yield" ||
            t.text == "else")
          return fail(RejectReason::UnsupportedSyntax, t.text, t.loc);
        if (t.text == "lambda") return lambda();
        advance();
        return ir::make::var(t.text, t.loc);
      }
      case Tok::Punct: {
        if (t.text == "(") {
          advance();
          auto e = expr();
          if (failed()) return nullptr;
          if (is_kw("for"))
            return fail(RejectReason::Comprehension, "generator expression", cur().loc);
          if (!expect_punct(")")) return nullptr;
          return e;
        }
        if (t.text == "[") {
          SourceLoc loc = t.loc;
          advance();
          std::vector<ExprPtr> elems;
          while (!is_punct("]")) {
            if (at(Tok::End))
              return fail(RejectReason::UnsupportedSyntax, "end", cur().loc);
            auto e = expr();
            if (failed()) return nullptr;
            if (is_kw("for"))
              return fail(RejectReason::Comprehension, "list comprehension", cur().loc);
            elems.push_back(e);
            if (is_punct(",")) { advance(); continue; }
            if (!is_punct("]"))
              return fail(RejectReason::UnsupportedSyntax, cur().text, cur().loc);
          }
          advance();
          return ir::make::call(ir::kListDisplay, std::move(elems), loc);
        }
        if (t.text == "$" && opts_.allow_metavars) {
          advance();
          if (!at(Tok::Ident))
            return fail(RejectReason::UnsupportedSyntax, "$", cur().loc);
          std::string name = cur().text;
          advance();
          std::string kind;
          if (is_punct(":")) {
            advance();
            if (!at(Tok::Ident))
              return fail(RejectReason::UnsupportedSyntax, ":", cur().loc);
            kind = cur().text;
            advance();
          }
          return ir::make::meta(std::move(name), std::move(kind), t.loc);
        }
        return fail(RejectReason::UnsupportedSyntax, t.text, t.loc);
      }
      default:
        return fail(RejectReason::UnsupportedSyntax,
                    t.text.empty() ? "end" : t.text, t.loc);
    }
  }

  // Structural boolean check for invariant bodies.
  bool bool_shaped(const ExprPtr& e) const {
    if (!e) return false;
    switch (e->kind) {
      case ir::ExprKind::BoolLit:
      case ir::ExprKind::Compare:
      case ir::ExprKind::BoolOp:
        return true;
      case ir::ExprKind::Call: {
        if (ir::is_ite(*e))
          return bool_shaped(e->args[1]) && bool_shaped(e->args[2]);
        const ir::OperatorDef* op = opts_.dsl ? opts_.dsl->find(e->name) : nullptr;
        return op && op->return_type.is(ir::TypeKind::Bool);
      }
      default:
        return false;
    }
  }
};

}  // namespace detail

// Parses one candidate text into IR, classifying anything outside the
// accepted grammar with a specific rejection reason. Never throws.
inline ParseResult parse_candidate(const std::string& text,
                                   const ir::DslDefinition& dsl,
                                   CandidateKind kind) {
  ParseOptions opts;
  opts.dsl = &dsl;
  auto lx = detail::lex(text, false);
  if (lx.rej) {
    ParseResult r;
    r.rejection = lx.rej;
    return r;
  }
  detail::Parser p(std::move(lx.toks), opts);
  return p.parse_candidate_entry(kind);
}

// Expression-only entry used by the DSL loader (operator bodies, patterns).
// Throws Diagnostic on failure since these are trusted inputs.
inline ExprPtr parse_expr_text(const std::string& text, const ParseOptions& opts) {
  auto lx = detail::lex(text, opts.allow_metavars);
  if (lx.rej) throw Diagnostic("ExprParseError", lx.rej->str());
  detail::Parser p(std::move(lx.toks), opts);
  auto e = p.parse_expression_entry();
  if (!e) {
    std::string why = p.rejection() ? p.rejection()->str() : "invalid expression";
    throw Diagnostic("ExprParseError", why + " in: " + text);
  }
  return e;
}

}  // namespace liftc::cand
