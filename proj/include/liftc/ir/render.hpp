#pragma once

#include <string>

#include "liftc/ir/operator_def.hpp"

namespace liftc::ir {

// Concatenates each operator's verbatim prompt rendering in catalog order.
// Byte-stable: blocks separated by one blank line, single trailing newline.
inline std::string render_operator_semantics(const DslDefinition& dsl) {
  std::string out;
  for (const auto& op : dsl.operators) {
    if (op.prompt_text.empty()) continue;
    std::string block = op.prompt_text;
    while (!block.empty() && (block.back() == '\n' || block.back() == '\r'))
      block.pop_back();
    if (!out.empty()) out += "\n";
    out += block;
    out += "\n";
  }
  return out;
}

}  // namespace liftc::ir
