#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nemus/errors.hpp"

namespace nemus {

template <class Tag>
struct Code {
  std::uint32_t value = 0;
  friend constexpr auto operator<=>(Code, Code) = default;
};

using ConstCode = Code<struct ConstTag>;
using PredCode = Code<struct PredTag>;
using VarCode = Code<struct VarTag>;

struct Signature {
  std::string name;
  std::uint32_t arity = 0;
  friend auto operator<=>(const Signature&, const Signature&) = default;
};

inline std::string to_string(const Signature& sig) {
  return sig.name + "/" + std::to_string(sig.arity);
}

// Three independent interning namespaces. Codes are dense, assigned in
// first-intern order, and never reused.
class SymbolTable {
 public:
  ConstCode intern_constant(std::string_view name) {
    return ConstCode{intern(constants_, constant_index_, name)};
  }

  VarCode intern_variable(std::string_view name) {
    return VarCode{intern(variables_, variable_index_, name)};
  }

  PredCode intern_predicate(std::string_view name, std::uint32_t arity) {
    auto key = std::make_pair(std::string(name), arity);
    if (auto it = predicate_index_.find(key); it != predicate_index_.end()) return it->second;
    PredCode code{static_cast<std::uint32_t>(predicates_.size())};
    predicates_.push_back(Signature{std::string(name), arity});
    predicate_index_.emplace(std::move(key), code);
    return code;
  }

  std::optional<ConstCode> find_constant(std::string_view name) const {
    if (auto it = constant_index_.find(std::string(name)); it != constant_index_.end())
      return ConstCode{it->second};
    return std::nullopt;
  }

  std::optional<PredCode> find_predicate(std::string_view name, std::uint32_t arity) const {
    if (auto it = predicate_index_.find({std::string(name), arity}); it != predicate_index_.end())
      return it->second;
    return std::nullopt;
  }

  bool has_predicate_name(std::string_view name) const {
    for (const auto& sig : predicates_)
      if (sig.name == name) return true;
    return false;
  }

  const std::string& constant_name(ConstCode c) const {
    if (c.value >= constants_.size())
      throw UnknownCode("unknown constant code " + std::to_string(c.value));
    return constants_[c.value];
  }

  const std::string& variable_name(VarCode v) const {
    if (v.value >= variables_.size())
      throw UnknownCode("unknown variable code " + std::to_string(v.value));
    return variables_[v.value];
  }

  const Signature& predicate(PredCode p) const {
    if (p.value >= predicates_.size())
      throw UnknownCode("unknown predicate code " + std::to_string(p.value));
    return predicates_[p.value];
  }

  std::size_t constant_count() const { return constants_.size(); }
  std::size_t predicate_count() const { return predicates_.size(); }
  std::size_t variable_count() const { return variables_.size(); }

  friend bool operator==(const SymbolTable& a, const SymbolTable& b) {
    return a.constants_ == b.constants_ && a.predicates_ == b.predicates_ &&
           a.variables_ == b.variables_;
  }

 private:
  static std::uint32_t intern(std::vector<std::string>& names,
                              std::unordered_map<std::string, std::uint32_t>& index,
                              std::string_view name) {
    std::string key(name);
    if (auto it = index.find(key); it != index.end()) return it->second;
    auto code = static_cast<std::uint32_t>(names.size());
    names.push_back(key);
    index.emplace(std::move(key), code);
    return code;
  }

  std::vector<std::string> constants_;
  std::unordered_map<std::string, std::uint32_t> constant_index_;
  std::vector<std::string> variables_;
  std::unordered_map<std::string, std::uint32_t> variable_index_;
  std::vector<Signature> predicates_;
  std::map<std::pair<std::string, std::uint32_t>, PredCode> predicate_index_;
};

}  // namespace nemus
