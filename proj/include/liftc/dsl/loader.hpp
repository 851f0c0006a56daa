#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "liftc/candidate/parser.hpp"
#include "liftc/common.hpp"
#include "liftc/ir/operator_def.hpp"

namespace liftc::dsl {

class MalformedDslFile : public Diagnostic {
 public:
  MalformedDslFile(std::string msg, SourceLoc loc = {})
      : Diagnostic("MalformedDslFile", std::move(msg), loc) {}
};

namespace detail {

struct Line {
  std::string text;
  int number;
};

class DslFileParser {
 public:
  DslFileParser(const std::string& content, std::string origin)
      : origin_(std::move(origin)) {
    auto raw = split_lines(content);
    for (size_t i = 0; i < raw.size(); ++i)
      lines_.push_back({raw[i], static_cast<int>(i + 1)});
  }

  ir::DslDefinition parse() {
    ir::DslDefinition dsl;
    std::vector<std::pair<std::string, std::string>> pending_bodies;  // op, text
    while (!done()) {
      std::string line = trim(peek().text);
      if (line.empty() || line[0] == '#') { next(); continue; }
      if (line.rfind("dsl ", 0) == 0) {
        dsl.name = trim(line.substr(4));
        next();
      } else if (line.rfind("extension ", 0) == 0) {
        dsl.target_extension = trim(line.substr(10));
        next();
      } else if (line == "output-template <<<") {
        next();
        dsl.output_template = heredoc();
        while (!dsl.output_template.empty() && dsl.output_template.back() == '\n')
          dsl.output_template.pop_back();
      } else if (line.rfind("var-suffix list ", 0) == 0) {
        dsl.var_list_suffix = unquote(trim(line.substr(16)));
        next();
      } else if (line.rfind("var-suffix matrix ", 0) == 0) {
        dsl.var_matrix_suffix = unquote(trim(line.substr(18)));
        next();
      } else if (line.rfind("operator ", 0) == 0) {
        parse_operator(dsl, pending_bodies, line.substr(9));
      } else if (line.rfind("rule ", 0) == 0) {
        parse_rule(dsl, line.substr(5));
        next();
      } else if (line == "invariant-example <<<") {
        next();
        dsl.invariant_example = ir::InvariantExample{heredoc()};
      } else {
        err("unrecognized directive: " + line);
      }
    }
    if (dsl.name.empty()) err("missing 'dsl <name>' header");

    // Bodies parse against the full signature set (forward references ok).
    for (auto& [opname, text] : pending_bodies) {
      auto* op = find_mutable(dsl, opname);
      cand::ParseOptions opts;
      opts.dsl = &dsl;
      for (const auto& [pname, ptype] : op->params)
        if (ptype.is(ir::TypeKind::Fn)) opts.extra_callables.insert(pname);
      try {
        op->body = cand::parse_expr_text(text, opts);
      } catch (const Diagnostic& d) {
        err("operator " + opname + ": " + d.what());
      }
    }
    validate(dsl);
    return dsl;
  }

 private:
  std::vector<Line> lines_;
  size_t pos_ = 0;
  std::string origin_;

  bool done() const { return pos_ >= lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }
  void next() { ++pos_; }
  [[noreturn]] void err(const std::string& msg) const {
    int line = done() ? (lines_.empty() ? 0 : lines_.back().number) : peek().number;
    throw MalformedDslFile(origin_ + ": " + msg, SourceLoc{line, 1});
  }

  std::string heredoc() {
    std::string out;
    while (!done()) {
      if (trim(peek().text) == ">>>") {
        next();
        return out;
      }
      out += peek().text;
      out += "\n";
      next();
    }
    err("unterminated heredoc (missing >>>)");
  }

  static std::string unquote(const std::string& s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
      std::string out;
      for (size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '\\' && i + 2 < s.size()) { out += s[++i]; continue; }
        out += s[i];
      }
      return out;
    }
    return s;
  }

  static ir::OperatorDef* find_mutable(ir::DslDefinition& dsl,
                                       const std::string& n) {
    for (auto& op : dsl.operators)
      if (op.name == n) return &op;
    return nullptr;
  }

  ir::Type parse_type(const std::string& t) {
    std::string s = trim(t);
    if (s == "int") return ir::Type::Int();
    if (s == "bool") return ir::Type::Bool();
    if (s == "int[]") return ir::Type::List();
    if (s == "int[][]") return ir::Type::Matrix();
    if (s.rfind("fn(", 0) == 0) {
      size_t close = s.find(')');
      if (close == std::string::npos) err("bad fn type: " + s);
      std::string inner = s.substr(3, close - 3);
      std::vector<ir::Type> params;
      size_t start = 0;
      while (start < inner.size()) {
        size_t comma = inner.find(',', start);
        std::string piece = comma == std::string::npos
                                ? inner.substr(start)
                                : inner.substr(start, comma - start);
        if (!trim(piece).empty()) params.push_back(parse_type(piece));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      size_t arrow = s.find("->", close);
      if (arrow == std::string::npos) err("fn type missing ->: " + s);
      return ir::Type::Fn(std::move(params), parse_type(s.substr(arrow + 2)));
    }
    err("unknown type: " + s);
  }

  void parse_operator(ir::DslDefinition& dsl,
                      std::vector<std::pair<std::string, std::string>>& bodies,
                      std::string header) {
    ir::OperatorDef op;
    header = trim(header);
    size_t paren = header.find('(');
    if (paren == std::string::npos) err("operator header missing (");
    op.name = trim(header.substr(0, paren));
    size_t close = header.rfind(')');
    if (close == std::string::npos) err("operator header missing )");
    std::string params = header.substr(paren + 1, close - paren - 1);
    // Split on commas outside fn(...) parens.
    int depth = 0;
    size_t start = 0;
    auto add_param = [&](std::string piece) {
      piece = trim(piece);
      if (piece.empty()) return;
      size_t colon = piece.find(':');
      if (colon == std::string::npos) err("param missing type: " + piece);
      op.params.emplace_back(trim(piece.substr(0, colon)),
                             parse_type(piece.substr(colon + 1)));
    };
    for (size_t i = 0; i < params.size(); ++i) {
      if (params[i] == '(') ++depth;
      if (params[i] == ')') --depth;
      if (params[i] == ',' && depth == 0) {
        add_param(params.substr(start, i - start));
        start = i + 1;
      }
    }
    add_param(params.substr(start));
    std::string rest = trim(header.substr(close + 1));
    if (rest.rfind("->", 0) != 0) err("operator header missing -> return type");
    rest = trim(rest.substr(2));
    if (rest.size() >= 7 && rest.substr(rest.size() - 7) == "builtin") {
      op.builtin = true;
      rest = trim(rest.substr(0, rest.size() - 7));
    }
    op.return_type = parse_type(rest);
    if (find_mutable(dsl, op.name)) err("duplicate operator " + op.name);
    next();
    // Attached sections until the next top-level directive.
    std::string body_text;
    while (!done()) {
      std::string line = trim(peek().text);
      if (line == "body <<<") {
        next();
        body_text = heredoc();
      } else if (line == "prompt <<<") {
        next();
        op.prompt_text = heredoc();
      } else if (line.empty() || line[0] == '#') {
        next();
      } else {
        break;
      }
    }
    if (!op.builtin && body_text.empty())
      err("operator " + op.name + " has no body");
    dsl.operators.push_back(std::move(op));
    if (!body_text.empty()) bodies.emplace_back(dsl.operators.back().name, body_text);
  }

  void parse_rule(ir::DslDefinition& dsl, std::string rest) {
    ir::RewriteRule rule;
    rule.decl_index = static_cast<int>(dsl.rules.size());
    std::istringstream ss(std::string(trim(rest)));
    if (!(ss >> rule.priority)) err("rule missing priority");
    std::string word;
    std::streampos after_prio = ss.tellg();
    if (ss >> word && word == "infix") {
      if (!(ss >> rule.infix_prec)) err("rule infix missing precedence");
    } else {
      ss.clear();
      ss.seekg(after_prio);
    }
    std::string remainder;
    std::getline(ss, remainder);
    size_t arrow = remainder.find("=>");
    if (arrow == std::string::npos) err("rule missing =>");
    std::string pattern_text = trim(remainder.substr(0, arrow));
    std::string tmpl = trim(remainder.substr(arrow + 2));
    rule.tmpl = unquote(tmpl);
    cand::ParseOptions opts;
    opts.dsl = &dsl;
    opts.allow_metavars = true;
    try {
      rule.pattern = cand::parse_expr_text(pattern_text, opts);
    } catch (const Diagnostic& d) {
      err(std::string("rule pattern: ") + d.what());
    }
    dsl.rules.push_back(std::move(rule));
  }

  // Catalog invariants: unique names (checked on insert), well-formed
  // bodies (parsed), structural recursion, rule linearity + hole binding.
  void validate(ir::DslDefinition& dsl) {
    for (const auto& op : dsl.operators) {
      if (op.builtin) continue;
      check_structural_recursion(dsl, op);
    }
    for (const auto& rule : dsl.rules) {
      std::set<std::string> metas;
      ir::visit_preorder(rule.pattern, [&](const ir::ExprPtr& e) {
        if (e->kind == ir::ExprKind::MetaVar) {
          if (!metas.insert(e->name).second)
            err("rule pattern not linear in $" + e->name);
        }
        if (e->kind == ir::ExprKind::Call && !ir::is_structural_primitive(e->name) &&
            !dsl.has_operator(e->name))
          err("rule pattern mentions unregistered operator " + e->name);
      });
      // Every {hole} in the template must be bound by the pattern.
      const std::string& t = rule.tmpl;
      for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] != '{') continue;
        size_t close = t.find('}', i);
        if (close == std::string::npos) err("rule template has unclosed {");
        std::string hole = t.substr(i + 1, close - i - 1);
        if (hole != "ps" && !metas.count(hole))
          err("rule template hole {" + hole + "} unbound");
        i = close;
      }
    }
  }

  // Recursive self-calls must shrink: some list/matrix argument is a tail
  // slice of a parameter, and no self-call list argument grows.
  void check_structural_recursion(const ir::DslDefinition& dsl,
                                  const ir::OperatorDef& op) {
    (void)dsl;
    bool bad = false;
    std::string why;
    ir::visit_preorder(op.body, [&](const ir::ExprPtr& e) {
      if (e->kind != ir::ExprKind::Call || e->name != op.name) return;
      bool shrinks = false;
      for (size_t i = 0; i < e->args.size() && i < op.params.size(); ++i) {
        if (!op.params[i].second.container()) continue;
        const auto& a = e->args[i];
        if (a->kind == ir::ExprKind::Slice && a->has_lo && !a->has_hi) {
          auto base = a->args[0];
          auto lo = ir::slice_lo(*a);
          if (base->kind == ir::ExprKind::Var && op.param_index(base->name) &&
              lo->kind == ir::ExprKind::IntLit && lo->int_val >= 1) {
            shrinks = true;
            continue;
          }
        }
        bad = true;
        why = op.name + ": recursive argument " + std::to_string(i) +
              " is not a tail slice of a parameter";
      }
      if (!shrinks && !bad) {
        bad = true;
        why = op.name + ": recursive call does not shrink any container argument";
      }
    });
    if (bad) err("structural recursion violated: " + why);
  }
};

}  // namespace detail

inline ir::DslDefinition parse_dsl_text(const std::string& content,
                                        const std::string& origin) {
  detail::DslFileParser p(content, origin);
  return p.parse();
}

inline ir::DslDefinition load_dsl_file(const std::string& path) {
  return parse_dsl_text(read_file(path), path);
}

}  // namespace liftc::dsl
