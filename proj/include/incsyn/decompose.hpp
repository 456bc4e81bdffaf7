#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "incsyn/deps.hpp"
#include "incsyn/spec.hpp"

namespace incsyn {

struct Component {
  int id = -1;
  std::vector<int> outputs;  // sorted var ids
  std::vector<int> inputs;   // variables the component reads, minus outputs
};

// Precedence over output variables; rank(lo) < rank(hi) means hi sees lo one
// step in advance. Kept transitively closed and acyclic.
struct ImplementationOrder {
  std::set<std::pair<int, int>> less;  // (lo, hi)

  bool holds(int lo, int hi) const { return less.count({lo, hi}) > 0; }
  bool can_add(int lo, int hi) const { return lo != hi && !holds(hi, lo); }
  void add(int lo, int hi);
};

struct SynthesisOrder {
  std::vector<std::vector<int>> layers;  // component ids per layer
  int layer_of(int comp_id) const;
};

struct ResolvedEdge {
  int from, to;  // removed present edge (from depends on current to)
};

// eliminate_inputs: graph restricted to output nodes; edges touching inputs
// recorded aside for admissibility reporting.
struct InputElimination {
  DependencyGraph graph;
  std::vector<DepEdge> input_edges;
};
InputElimination eliminate_inputs(const DependencyGraph& g, const Spec& spec);

// Dropping future-subsumed present edges, then resolving present edges by
// refining the implementation order. Resolution maximizes the number of
// strongly connected components: exhaustive for up to 12 candidate edges,
// greedy (edges outside 2-cycles first, then lexicographic) beyond that.
struct ResolutionResult {
  DependencyGraph graph;
  ImplementationOrder order;
  std::vector<ResolvedEdge> resolved;
  std::vector<ResolvedEdge> subsumed;
};
ResolutionResult resolve_present(const DependencyGraph& g, const Spec& spec,
                                 ImplementationOrder io = {});

// SCCs of the remaining edges; deterministic labeling by smallest member
// variable name. Component inputs default to every variable mentioned by a
// conjunct that mentions one of the component's outputs, minus the outputs.
std::vector<Component> scc_components(const DependencyGraph& g, const Spec& spec);

// Layered synthesis order: iterated peeling of components without
// dependencies on unpeeled components. A layer with two or more members
// must satisfy the guard that at most one of them touches liveness-affecting
// outputs; failing layers are split into singleton layers by label.
SynthesisOrder synthesis_order(const DependencyGraph& g,
                               const std::vector<Component>& comps, const Spec& spec);

// Everything the driver needs from the analysis phase.
struct Decomposition {
  DependencyGraph graph;            // final analysis graph (inputs present)
  DependencyGraph reduced;          // outputs only, after resolution
  ImplementationOrder io;
  std::vector<ResolvedEdge> resolved;
  std::vector<Component> components;
  SynthesisOrder order;

  const Component& component(int id) const { return components[id]; }
  // Variables a component sees one step in advance: targets of its resolved
  // present edges.
  std::vector<int> advanced_inputs(int comp_id) const;
};

enum class Engine { Syntactic, Semantic };

struct OracleBounds;
Decomposition decompose(const Spec& spec, const DependencyGraph& analysis_graph);

struct MergeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Appendix-C merge: the failed component is merged with one direct successor
// (earliest later layer, smallest label), and layers are recomputed.
// Returns nullopt when no successor exists.
std::optional<Decomposition> merge_on_failure(const Decomposition& d, int failed_id,
                                              const Spec& spec);

std::string decomposition_json(const Decomposition& d, const Spec& spec);
std::string condensation_dot(const Decomposition& d, const Spec& spec);

}  // namespace incsyn
