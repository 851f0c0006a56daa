#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "liftc/ir/expr.hpp"
#include "liftc/ir/types.hpp"

namespace liftc::ir {

// One DSL operator: signature, executable recursive body and the verbatim
// text rendered into prompts. Builtin operators (ite, transpose) have native
// semantics in eval/encode instead of a body.
struct OperatorDef {
  std::string name;
  std::vector<std::pair<std::string, Type>> params;
  Type return_type;
  ExprPtr body;  // null for builtins
  std::string prompt_text;
  bool builtin = false;

  std::optional<size_t> param_index(const std::string& p) const {
    for (size_t i = 0; i < params.size(); ++i)
      if (params[i].first == p) return i;
    return std::nullopt;
  }
};

// Declarative codegen rule: IR pattern with metavariables, text template
// with {hole}s, priority (higher wins, then declaration order).
struct RewriteRule {
  ExprPtr pattern;
  std::string tmpl;
  int priority = 0;
  // Infix emission metadata: when >= 0 the produced text is an infix
  // expression of this precedence; chains of the same rule associate left
  // without parentheses.
  int infix_prec = -1;
  int decl_index = 0;
};

struct InvariantExample {
  std::string text;  // formatted exactly as embedded in the invariant prompt
};

// Per-DSL bundle: operator catalog (order = prompt order), codegen rules,
// one-shot invariant example, emission config.
struct DslDefinition {
  std::string name;
  std::vector<OperatorDef> operators;
  std::vector<RewriteRule> rules;
  std::optional<InvariantExample> invariant_example;
  std::string target_extension;    // ".spark", ".p4ish", ".taco", ".tensor"
  std::string output_template;     // e.g. "out(i) = {ps}"; empty = bare
  std::string var_list_suffix;     // taco prints list vars as name(i)
  std::string var_matrix_suffix;   // and matrix vars as name(i, j)

  const OperatorDef* find(const std::string& n) const {
    for (const auto& op : operators)
      if (op.name == n) return &op;
    return nullptr;
  }
  bool has_operator(const std::string& n) const { return find(n) != nullptr; }
};

}  // namespace liftc::ir
