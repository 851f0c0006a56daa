#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "liftc/common.hpp"
#include "liftc/ir/expr.hpp"

namespace liftc::ir {

struct Value;
using IntList = std::vector<Int>;
using IntMatrix = std::vector<std::vector<Int>>;

// Closures are only produced from Lambda and only consumed by operator
// application inside eval.
struct Closure {
  std::vector<std::string> params;
  ExprPtr body;
  std::shared_ptr<std::map<std::string, Value>> env;
};

struct Value {
  std::variant<Int, bool, IntList, IntMatrix, Closure> v;

  Value() : v(Int(0)) {}
  Value(Int i) : v(std::move(i)) {}
  Value(bool b) : v(b) {}
  Value(IntList l) : v(std::move(l)) {}
  Value(IntMatrix m) : v(std::move(m)) {}
  Value(Closure c) : v(std::move(c)) {}

  bool is_int() const { return std::holds_alternative<Int>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_list() const { return std::holds_alternative<IntList>(v); }
  bool is_matrix() const { return std::holds_alternative<IntMatrix>(v); }
  bool is_closure() const { return std::holds_alternative<Closure>(v); }

  const Int& as_int() const { return std::get<Int>(v); }
  bool as_bool() const { return std::get<bool>(v); }
  const IntList& as_list() const { return std::get<IntList>(v); }
  const IntMatrix& as_matrix() const { return std::get<IntMatrix>(v); }
  const Closure& as_closure() const { return std::get<Closure>(v); }
};

using ProgramState = std::map<std::string, Value>;

// Structural equality; an empty list and an empty matrix compare equal (the
// untyped literal [] inhabits both container types).
inline bool value_equal(const Value& a, const Value& b) {
  if (a.is_closure() || b.is_closure()) return false;
  if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
  if (a.is_bool() && b.is_bool()) return a.as_bool() == b.as_bool();
  if (a.is_list() && b.is_list()) return a.as_list() == b.as_list();
  if (a.is_matrix() && b.is_matrix()) return a.as_matrix() == b.as_matrix();
  auto empty_container = [](const Value& x) {
    return (x.is_list() && x.as_list().empty()) ||
           (x.is_matrix() && x.as_matrix().empty());
  };
  return empty_container(a) && empty_container(b);
}

inline std::string value_str(const Value& val) {
  if (val.is_int()) return val.as_int().get_str();
  if (val.is_bool()) return val.as_bool() ? "True" : "False";
  if (val.is_list()) {
    std::string s = "[";
    const auto& l = val.as_list();
    for (size_t i = 0; i < l.size(); ++i) {
      if (i) s += ", ";
      s += l[i].get_str();
    }
    return s + "]";
  }
  if (val.is_matrix()) {
    std::string s = "[";
    const auto& m = val.as_matrix();
    for (size_t i = 0; i < m.size(); ++i) {
      if (i) s += ", ";
      s += value_str(Value(m[i]));
    }
    return s + "]";
  }
  return "<closure>";
}

}  // namespace liftc::ir
