#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "liftc/common.hpp"

namespace liftc::ir {

// Value shapes shared by the source language and the IR. FunctionKind only
// occurs in operator signatures (lambda-taking parameters).
enum class TypeKind { Int, Bool, List, Matrix, Fn, Any };

struct Type {
  TypeKind kind = TypeKind::Any;
  // Fn only:
  std::vector<Type> fn_params;
  std::shared_ptr<Type> fn_ret;

  static Type Int() { return {TypeKind::Int, {}, nullptr}; }
  static Type Bool() { return {TypeKind::Bool, {}, nullptr}; }
  static Type List() { return {TypeKind::List, {}, nullptr}; }
  static Type Matrix() { return {TypeKind::Matrix, {}, nullptr}; }
  static Type Any() { return {TypeKind::Any, {}, nullptr}; }
  static Type Fn(std::vector<Type> params, Type ret) {
    Type t;
    t.kind = TypeKind::Fn;
    t.fn_params = std::move(params);
    t.fn_ret = std::make_shared<Type>(std::move(ret));
    return t;
  }

  bool is(TypeKind k) const { return kind == k; }
  bool container() const {
    return kind == TypeKind::List || kind == TypeKind::Matrix;
  }
  bool compatible(const Type& other) const {
    if (kind == TypeKind::Any || other.kind == TypeKind::Any) return true;
    if (kind != other.kind) return false;
    if (kind == TypeKind::Fn) {
      if (fn_params.size() != other.fn_params.size()) return false;
      for (size_t i = 0; i < fn_params.size(); ++i)
        if (!fn_params[i].compatible(other.fn_params[i])) return false;
      return fn_ret->compatible(*other.fn_ret);
    }
    return true;
  }

  std::string str() const {
    switch (kind) {
      case TypeKind::Int: return "int";
      case TypeKind::Bool: return "bool";
      case TypeKind::List: return "int[]";
      case TypeKind::Matrix: return "int[][]";
      case TypeKind::Any: return "any";
      case TypeKind::Fn: {
        std::string s = "fn(";
        for (size_t i = 0; i < fn_params.size(); ++i) {
          if (i) s += ", ";
          s += fn_params[i].str();
        }
        return s + ") -> " + fn_ret->str();
      }
    }
    return "?";
  }
};

using TypeEnv = std::map<std::string, Type>;

}  // namespace liftc::ir
