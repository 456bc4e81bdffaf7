#include "incsyn/deps.hpp"

#include <algorithm>
#include <functional>

namespace incsyn {

namespace {

TripleSet canonical(TripleSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

DepAnnotation canonical(std::vector<TripleSet> sets) {
  for (auto& s : sets) s = canonical(std::move(s));
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  return {std::move(sets)};
}

TripleSet set_union(const TripleSet& a, const TripleSet& b) {
  TripleSet r = a;
  r.insert(r.end(), b.begin(), b.end());
  return canonical(std::move(r));
}

}  // namespace

void DependencyGraph::add_present(int u, int v, uint8_t tag) {
  PairEdges& e = edges[{u, v}];
  e.present = true;
  e.present_tags |= tag;
}

void DependencyGraph::add_future(int u, int v, ExtNat off, uint8_t tag) {
  PairEdges& e = edges[{u, v}];
  if (off.is_inf())
    e.inf = true;
  else
    e.offsets.insert(off.v);
  e.future_tags |= tag;
}

void DependencyGraph::add_input_dep(int u, int v) {
  edges[{u, v}].input_dep = true;
}

int DependencyGraph::edge_count() const {
  int n_edges = 0;
  for (const auto& [k, e] : edges) {
    if (e.present) ++n_edges;
    if (e.has_future()) ++n_edges;
    if (e.input_dep) ++n_edges;
  }
  return n_edges;
}

DepAnnotation annotate(Node a) {
  switch (a->op) {
    case Op::Atom:
      return {{{{a->var, 0, false}}}};
    case Op::Not:
      return annotate(a->lhs);
    case Op::And: {
      DepAnnotation l = annotate(a->lhs), r = annotate(a->rhs);
      std::vector<TripleSet> sets = l.sets;
      sets.insert(sets.end(), r.sets.begin(), r.sets.end());
      return canonical(std::move(sets));
    }
    case Op::Or: {
      DepAnnotation l = annotate(a->lhs), r = annotate(a->rhs);
      std::vector<TripleSet> sets;
      for (const auto& m : l.sets)
        for (const auto& m2 : r.sets) sets.push_back(set_union(m, m2));
      return canonical(std::move(sets));
    }
    case Op::Next: {
      DepAnnotation l = annotate(a->lhs);
      std::vector<TripleSet> sets;
      for (const auto& m : l.sets) {
        TripleSet s;
        for (const Triple& t : m) s.push_back({t.var, t.offset + 1, t.unbounded});
        sets.push_back(std::move(s));
      }
      return canonical(std::move(sets));
    }
    case Op::Always: {
      DepAnnotation l = annotate(a->lhs);
      std::vector<TripleSet> sets = l.sets;
      for (const auto& m : l.sets)
        for (const Triple& t : m) sets.push_back({{t.var, t.offset, true}});
      return canonical(std::move(sets));
    }
    case Op::Eventually: {
      DepAnnotation l = annotate(a->lhs);
      std::vector<TripleSet> sets = l.sets;
      TripleSet big;
      for (const auto& m : l.sets)
        for (const Triple& t : m) {
          big.push_back({t.var, t.offset, true});
          big.push_back({t.var, t.offset, false});
        }
      sets.push_back(std::move(big));
      return canonical(std::move(sets));
    }
    case Op::AlwaysEventually: {
      DepAnnotation l = annotate(a->lhs);
      std::vector<TripleSet> sets;
      for (const auto& m : l.sets)
        for (const Triple& t : m) sets.push_back({{t.var, t.offset, true}});
      return canonical(std::move(sets));
    }
    case Op::Until:
    case Op::WeakUntil: {
      DepAnnotation l = annotate(a->lhs), r = annotate(a->rhs);
      std::vector<TripleSet> sets;
      for (const auto& m : l.sets)
        for (const auto& m2 : r.sets) sets.push_back(set_union(m, m2));
      for (const auto& m : l.sets)
        for (const auto& m2 : r.sets)
          for (const Triple& t : m)
            sets.push_back(set_union({{t.var, t.offset, true}}, m2));
      TripleSet big;
      for (const auto& m2 : r.sets)
        for (const Triple& t : m2) {
          big.push_back({t.var, t.offset, true});
          big.push_back({t.var, t.offset, false});
        }
      sets.push_back(std::move(big));
      return canonical(std::move(sets));
    }
  }
  return {};
}

std::vector<DepEdge> extract_deps(const DepAnnotation& ann) {
  std::set<DepEdge> out;
  for (const TripleSet& m : ann.sets) {
    for (const Triple& a : m) {
      for (const Triple& b : m) {
        if (a == b) continue;
        // present: four cases of Def. 7, u != v
        if (a.var != b.var) {
          bool present = (!a.unbounded && !b.unbounded && a.offset == b.offset) ||
                         (a.unbounded && !b.unbounded && a.offset <= b.offset) ||
                         (!a.unbounded && b.unbounded && a.offset >= b.offset) ||
                         (a.unbounded && b.unbounded);
          if (present) out.insert({a.var, b.var, DepKind::Present, {0}, kTagBase});
        }
        // future: target unbounded (offset inf) or strictly deeper (offset diff)
        if (b.unbounded) {
          out.insert({a.var, b.var, DepKind::Future, ExtNat::inf(), kTagBase});
        } else if (!b.unbounded && a.offset < b.offset) {
          out.insert({a.var, b.var, DepKind::Future, {b.offset - a.offset}, kTagBase});
        }
      }
    }
  }
  return {out.begin(), out.end()};
}

DependencyGraph build_graph(const Spec& spec) {
  DependencyGraph g;
  g.n = spec.vocab.size();
  for (Node c : spec.all_conjuncts()) {
    for (const DepEdge& e : extract_deps(annotate(c))) {
      if (e.kind == DepKind::Present)
        g.add_present(e.from, e.to, kTagBase);
      else
        g.add_future(e.from, e.to, e.offset, kTagBase);
    }
  }
  return g;
}

namespace {

struct Arc {
  int to;
  bool future;
  ExtNat weight;     // 0 for present arcs
  bool through_inf;  // future arc whose only offset is infinity
};

// Expanded arc list: one arc per present edge, one per future edge offset
// class (min finite and/or infinity).
std::vector<std::vector<Arc>> arcs_of(const DependencyGraph& g) {
  std::vector<std::vector<Arc>> arcs(g.n);
  for (const auto& [k, e] : g.edges) {
    auto [u, v] = k;
    if (e.present) arcs[u].push_back({v, false, {0}, false});
    if (!e.offsets.empty()) arcs[u].push_back({v, true, {*e.offsets.begin()}, false});
    if (e.inf) arcs[u].push_back({v, true, ExtNat::inf(), true});
  }
  return arcs;
}

// Nodes on a cycle of the future-edge-only subgraph (self-loops included).
std::vector<char> future_cyclic_nodes(const DependencyGraph& g) {
  int n = g.n;
  std::vector<std::vector<int>> fut(n);
  std::vector<char> self_loop(n, 0);
  for (const auto& [k, e] : g.edges)
    if (e.has_future()) {
      fut[k.first].push_back(k.second);
      if (k.first == k.second) self_loop[k.first] = 1;
    }
  // Tarjan SCC
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0, n_comp = 0;
  std::vector<int> comp_size;
  std::function<void(int)> dfs = [&](int v) {
    idx[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    for (int w : fut[v]) {
      if (idx[w] < 0) {
        dfs(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], idx[w]);
      }
    }
    if (low[v] == idx[v]) {
      int size = 0;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = 0;
        comp[w] = n_comp;
        ++size;
      } while (w != v);
      comp_size.push_back(size);
      ++n_comp;
    }
  };
  for (int v = 0; v < n; ++v)
    if (idx[v] < 0) dfs(v);
  std::vector<char> cyclic(n, 0);
  for (int v = 0; v < n; ++v)
    if (comp_size[comp[v]] > 1 || self_loop[v]) cyclic[v] = 1;
  return cyclic;
}

}  // namespace

DependencyGraph transitive_closure(const DependencyGraph& g, const Spec& spec) {
  DependencyGraph out = g;
  int n = g.n;
  auto arcs = arcs_of(g);
  auto cyclic = future_cyclic_nodes(g);
  std::vector<char> is_out(n, 0);
  for (int v : spec.outputs) is_out[v] = 1;

  // Per source u: present-only reachability, min finite offset sums of mixed
  // walks, and infinity-credential reachability. Intermediate nodes must be
  // outputs; a walk expanding from a future-cyclic intermediate can detour
  // through that cycle, which turns its offset into infinity.
  constexpr uint32_t kUnreach = ExtNat::kInf;
  for (int u = 0; u < n; ++u) {
    if (arcs[u].empty()) continue;
    std::vector<uint32_t> dist_p(n, kUnreach);
    std::vector<uint32_t> dist_f(n, kUnreach);
    std::vector<char> reach_inf(n, 0);
    struct Item {
      int node;
      bool fut;
      bool inf;
      uint32_t d;
    };
    std::vector<Item> queue;
    auto push = [&](int node, bool fut, bool inf, uint32_t d) {
      if (inf) {
        if (reach_inf[node]) return;
        reach_inf[node] = 1;
        queue.push_back({node, true, true, 0});
        return;
      }
      if (fut) {
        if (dist_f[node] <= d) return;
        dist_f[node] = d;
      } else {
        if (dist_p[node] <= d) return;
        dist_p[node] = d;
      }
      queue.push_back({node, fut, inf, d});
    };
    auto expand = [&](int node, bool fut, bool inf, uint32_t d) {
      for (const Arc& a : arcs[node]) {
        if (inf || a.weight.is_inf())
          push(a.to, true, true, 0);
        else
          push(a.to, fut || a.future, false, d + a.weight.v);
      }
    };
    expand(u, false, false, 0);  // the source itself is not an intermediate
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      Item it = queue[qi];
      if (!is_out[it.node]) continue;
      expand(it.node, it.fut, it.inf || cyclic[it.node], it.d);
    }
    for (int v = 0; v < n; ++v) {
      if (dist_p[v] != kUnreach && !g.has_present(u, v))
        out.add_present(u, v, kTagTransitive);
      if (dist_f[v] != kUnreach && dist_f[v] > 0 && !g.has_future_offset(u, v, dist_f[v]))
        out.add_future(u, v, {dist_f[v]}, kTagTransitive);
      if (reach_inf[v] && !g.has_future_inf(u, v))
        out.add_future(u, v, ExtNat::inf(), kTagTransitive);
    }
  }
  return out;
}

namespace {

void derive_once(DependencyGraph& g, const Spec& spec, uint8_t tag) {
  std::vector<char> is_out(g.n, 0);
  for (int v : spec.outputs) is_out[v] = 1;
  struct FutureEdge {
    int from, to;
    ExtNat off;
  };
  std::vector<FutureEdge> fut;
  for (const auto& [k, e] : g.edges) {
    if (!e.has_future()) continue;
    for (uint32_t off : e.offsets) fut.push_back({k.first, k.second, {off}});
    if (e.inf) fut.push_back({k.first, k.second, ExtNat::inf()});
  }
  struct Add {
    int from, to;
    bool present;
    ExtNat off;
  };
  std::vector<Add> adds;
  for (const FutureEdge& a : fut) {
    if (!is_out[a.from] || !is_out[a.to]) continue;  // (u,w) with u,w outputs
    for (const FutureEdge& b : fut) {
      if (b.to != a.to) continue;  // shared target w
      int u = a.from, v = b.from, w = a.to;
      if (!(u != v || u != w)) continue;
      ExtNat x = a.off, y = b.off;
      if (!x.is_inf() && !y.is_inf()) {
        if (x.v == y.v) {
          adds.push_back({u, v, true, {0}});
          adds.push_back({v, u, true, {0}});
        } else if (x.v < y.v) {
          adds.push_back({v, u, false, {y.v - x.v}});
        } else {
          adds.push_back({u, v, false, {x.v - y.v}});
        }
      } else if (x.is_inf()) {
        adds.push_back({u, v, true, {0}});
        adds.push_back({v, u, true, {0}});
        adds.push_back({u, v, false, ExtNat::inf()});
        adds.push_back({v, u, false, ExtNat::inf()});
      }
    }
  }
  for (const Add& a : adds) {
    if (a.present)
      g.add_present(a.from, a.to, tag);
    else
      g.add_future(a.from, a.to, a.off, tag);
  }
}

DependencyGraph retag_closure(const DependencyGraph& closed,
                              const DependencyGraph& before) {
  DependencyGraph out = closed;
  for (auto& [k, e] : out.edges) {
    const PairEdges* old = before.find(k.first, k.second);
    bool new_present = e.present && !(old && old->present);
    bool new_future = e.has_future() &&
                      !(old && old->inf == e.inf && old->offsets == e.offsets);
    if (new_present) e.present_tags |= kTagTransitiveAfterDerive;
    if (new_future) e.future_tags |= kTagTransitiveAfterDerive;
  }
  return out;
}

}  // namespace

DependencyGraph derive_synergy(const DependencyGraph& g, const Spec& spec,
                               bool fixpoint) {
  DependencyGraph cur = g;
  for (;;) {
    DependencyGraph next = cur;
    derive_once(next, spec, kTagDerived);
    next = retag_closure(transitive_closure(next, spec), next);
    if (!fixpoint || next == cur) return next;
    cur = next;
  }
}

DependencyGraph syntactic_graph(const Spec& spec) {
  return derive_synergy(transitive_closure(build_graph(spec), spec), spec);
}

std::string to_dot(const DependencyGraph& g, const Spec& spec) {
  auto tag_str = [](uint8_t tags) {
    std::string s;
    if (tags & kTagTransitive) s += "transitive,";
    if (tags & kTagDerived) s += "derived,";
    if (tags & kTagTransitiveAfterDerive) s += "transitive-after-derive,";
    if (!s.empty()) s.pop_back();
    return s;
  };
  std::string out = "digraph deps {\n";
  for (int v = 0; v < g.n; ++v) {
    out += "  " + spec.vocab.name(v);
    out += spec.vocab.is_input(v) ? " [shape=plaintext,fontcolor=gray];\n"
                                  : " [shape=ellipse];\n";
  }
  for (const auto& [k, e] : g.edges) {
    std::string from = spec.vocab.name(k.first), to = spec.vocab.name(k.second);
    if (e.present) {
      out += "  " + from + " -> " + to + " [style=dashed";
      std::string t = tag_str(e.present_tags);
      if (!t.empty()) out += ",tags=\"" + t + "\"";
      out += "];\n";
    }
    if (e.has_future()) {
      std::string label;
      for (uint32_t off : e.offsets) label += std::to_string(off) + ",";
      if (e.inf) label += "inf,";
      label.pop_back();
      out += "  " + from + " -> " + to + " [style=solid,label=\"" + label + "\"";
      std::string t = tag_str(e.future_tags);
      if (!t.empty()) out += ",tags=\"" + t + "\"";
      out += "];\n";
    }
    if (e.input_dep)
      out += "  " + from + " -> " + to + " [style=dotted,label=\"input\"];\n";
  }
  return out + "}\n";
}

}  // namespace incsyn
