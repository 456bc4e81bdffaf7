#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "incsyn/spec.hpp"

namespace incsyn {

// Natural number with an absorbing infinity, for future-dependency offsets.
struct ExtNat {
  static constexpr uint32_t kInf = 0xffffffffu;
  uint32_t v = 0;

  static ExtNat inf() { return {kInf}; }
  bool is_inf() const { return v == kInf; }
  ExtNat operator+(ExtNat o) const {
    if (is_inf() || o.is_inf()) return inf();
    return {v + o.v};
  }
  auto operator<=>(const ExtNat&) const = default;
};

// (variable, X-depth, under-unbounded-operator) triple of Def. 7.
struct Triple {
  int var;
  uint32_t offset;
  bool unbounded;
  auto operator<=>(const Triple&) const = default;
};

using TripleSet = std::vector<Triple>;  // sorted, deduplicated

struct DepAnnotation {
  std::vector<TripleSet> sets;  // sorted, deduplicated
};

enum class DepKind { Present, Future, InputDep };

// Provenance tags kept per edge for reports and the DOT emitter.
enum EdgeTag : uint8_t {
  kTagBase = 1,
  kTagTransitive = 2,
  kTagDerived = 4,
  kTagTransitiveAfterDerive = 8,
};

struct DepEdge {
  int from, to;
  DepKind kind;
  ExtNat offset;  // Future only
  uint8_t tags = kTagBase;
  auto operator<=>(const DepEdge&) const = default;
};

struct PairEdges {
  bool present = false;
  std::set<uint32_t> offsets;  // finite future offsets, kept for reporting
  bool inf = false;
  bool input_dep = false;
  uint8_t present_tags = 0;
  uint8_t future_tags = 0;

  bool has_future() const { return inf || !offsets.empty(); }
  ExtNat min_offset() const {
    if (!offsets.empty()) return {*offsets.begin()};
    return ExtNat::inf();
  }
  bool operator==(const PairEdges&) const = default;
};

struct DependencyGraph {
  int n = 0;  // nodes = all unprimed variables of the vocabulary
  std::map<std::pair<int, int>, PairEdges> edges;

  PairEdges* find(int u, int v) {
    auto it = edges.find({u, v});
    return it == edges.end() ? nullptr : &it->second;
  }
  const PairEdges* find(int u, int v) const {
    auto it = edges.find({u, v});
    return it == edges.end() ? nullptr : &it->second;
  }
  bool has_present(int u, int v) const {
    const PairEdges* e = find(u, v);
    return e && e->present;
  }
  bool has_future(int u, int v) const {
    const PairEdges* e = find(u, v);
    return e && e->has_future();
  }
  bool has_future_offset(int u, int v, uint32_t off) const {
    const PairEdges* e = find(u, v);
    return e && e->offsets.count(off) > 0;
  }
  bool has_future_inf(int u, int v) const {
    const PairEdges* e = find(u, v);
    return e && e->inf;
  }
  bool has_input_dep(int u, int v) const {
    const PairEdges* e = find(u, v);
    return e && e->input_dep;
  }
  void add_present(int u, int v, uint8_t tag);
  void add_future(int u, int v, ExtNat off, uint8_t tag);
  void add_input_dep(int u, int v);
  int edge_count() const;
  bool operator==(const DependencyGraph& o) const = default;
};

// Def. 7 annotation, computed bottom-up over the NNF syntax tree.
DepAnnotation annotate(Node formula);

// Present/future extraction from an annotation per the Def. 7 case analysis.
std::vector<DepEdge> extract_deps(const DepAnnotation& ann);

// Union of extract_deps over all conjuncts (assumptions and guarantees).
DependencyGraph build_graph(const Spec& spec);

// Closure over chains whose intermediate nodes are outputs. All-present
// chains give present edges; mixed chains give future edges with summed
// offsets, infinity when the chain can touch a future-edge cycle.
DependencyGraph transitive_closure(const DependencyGraph& g, const Spec& spec);

// Synergy derivation of Sec. 7 followed by one re-closure. `fixpoint`
// iterates derivation+closure until stable (off by default).
// Input-sourced future edges are admitted as the (v,w) premise.
DependencyGraph derive_synergy(const DependencyGraph& g, const Spec& spec,
                               bool fixpoint = false);

// Full syntactic pipeline: build, close, derive, re-close.
DependencyGraph syntactic_graph(const Spec& spec);

// Present edges dashed, future edges solid with offset labels, transitive
// and derived edges tagged in edge attributes.
std::string to_dot(const DependencyGraph& g, const Spec& spec);

}  // namespace incsyn
