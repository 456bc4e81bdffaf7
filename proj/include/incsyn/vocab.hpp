#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace incsyn {

enum class VarKind { Input, Output };

// Variable universe of a specification. Ids are dense indices; letters are
// bitmasks over ids, so at most 31 variables (including primed copies) are
// supported, which is plenty at desk scale.
class Vocab {
 public:
  static constexpr int kMaxVars = 31;

  int add(const std::string& name, VarKind kind) {
    auto it = index_.find(name);
    if (it != index_.end()) throw std::runtime_error("duplicate variable: " + name);
    if (static_cast<int>(names_.size()) >= kMaxVars)
      throw std::runtime_error("variable limit exceeded");
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    kinds_.push_back(kind);
    primed_of_.push_back(-1);
    index_.emplace(name, id);
    return id;
  }

  // Primed twin of an output, created on demand. Primed variables model the
  // outputs of an alternative strategy; they never appear in parsed specs.
  int prime(int v) {
    for (int i = 0; i < size(); ++i)
      if (primed_of_[i] == v) return i;
    int id = add(names_[v] + "'", kinds_[v]);
    primed_of_[id] = v;
    return id;
  }

  int find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_[v]; }
  VarKind kind(int v) const { return kinds_[v]; }
  bool is_input(int v) const { return kinds_[v] == VarKind::Input && !is_primed(v); }
  bool is_output(int v) const { return kinds_[v] == VarKind::Output && !is_primed(v); }
  bool is_primed(int v) const { return primed_of_[v] >= 0; }
  int base_of(int v) const { return primed_of_[v] >= 0 ? primed_of_[v] : v; }

  uint32_t mask_of(const std::vector<int>& vars) const {
    uint32_t m = 0;
    for (int v : vars) m |= bit(v);
    return m;
  }
  static uint32_t bit(int v) { return 1u << v; }

  std::vector<int> inputs() const {
    std::vector<int> r;
    for (int v = 0; v < size(); ++v)
      if (is_input(v)) r.push_back(v);
    return r;
  }
  std::vector<int> outputs() const {
    std::vector<int> r;
    for (int v = 0; v < size(); ++v)
      if (is_output(v)) r.push_back(v);
    return r;
  }
  std::vector<int> unprimed() const {
    std::vector<int> r;
    for (int v = 0; v < size(); ++v)
      if (!is_primed(v)) r.push_back(v);
    return r;
  }

 private:
  std::vector<std::string> names_;
  std::vector<VarKind> kinds_;
  std::vector<int> primed_of_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace incsyn
