#pragma once

#include <cstdlib>
#include <filesystem>
#include <string>

#include "liftc/dsl/loader.hpp"

namespace liftc::dsl {

class UnknownDsl : public Diagnostic {
 public:
  explicit UnknownDsl(const std::string& name)
      : Diagnostic("UnknownDsl", "no such DSL: " + name) {}
};

class NoExampleDefined : public Diagnostic {
 public:
  explicit NoExampleDefined(const std::string& name)
      : Diagnostic("NoExampleDefined",
                   "DSL " + name + " has no invariant example") {}
};

inline const char* kShippedDsls[] = {"mapreduce", "netpacket", "taco", "tensor"};

inline bool is_shipped_dsl(const std::string& name) {
  for (const char* d : kShippedDsls)
    if (name == d) return true;
  return false;
}

// Resolves the dsl/ directory: explicit argument, then $LIFTC_DSL_DIR,
// then ./dsl relative to the working directory.
inline std::string resolve_dsl_dir(const std::string& explicit_dir = "") {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("LIFTC_DSL_DIR")) return env;
  return "dsl";
}

inline ir::DslDefinition load_dsl(const std::string& name,
                                  const std::string& dir = "") {
  if (!is_shipped_dsl(name)) throw UnknownDsl(name);
  auto path = std::filesystem::path(resolve_dsl_dir(dir)) / (name + ".dsl");
  return load_dsl_file(path.string());
}

// One-shot example embedded in invariant prompts. Loop-free domains define
// none.
inline const ir::InvariantExample& invariant_example(const ir::DslDefinition& dsl) {
  if (!dsl.invariant_example) throw NoExampleDefined(dsl.name);
  return *dsl.invariant_example;
}

}  // namespace liftc::dsl
