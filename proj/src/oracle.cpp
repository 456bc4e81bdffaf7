#include "incsyn/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace incsyn {

namespace {

struct BudgetExhausted {};

// Positionwise union of two lassos restricted to disjoint variable sets.
Lasso combine(const Lasso& a, const Lasso& b, uint32_t mask_a, uint32_t mask_b) {
  int stem = std::max(a.stem_len(), b.stem_len());
  int loop = static_cast<int>(std::lcm(a.loop_len(), b.loop_len()));
  Lasso r;
  for (int p = 0; p < stem; ++p)
    r.stem.push_back((a.at(p) & mask_a) | (b.at(p) & mask_b));
  for (int p = stem; p < stem + loop; ++p)
    r.loop.push_back((a.at(p) & mask_a) | (b.at(p) & mask_b));
  return r;
}

Lasso restrict_to(const Lasso& w, uint32_t mask) {
  Lasso r = w;
  for (auto& l : r.stem) l &= mask;
  for (auto& l : r.loop) l &= mask;
  return r;
}

std::vector<int> mask_vars(uint32_t mask) {
  std::vector<int> r;
  for (int v = 0; v < 32; ++v)
    if (mask & (1u << v)) r.push_back(v);
  return r;
}

}  // namespace

bool Oracle::sat(const Lasso& w) {
  if (++evals_ > bounds_.eval_budget) throw BudgetExhausted{};
  return eval_lasso(phi_, w);
}

// Applies the P-flips at `position` and tries every placement of the F-flips
// inside (position, position + flip_window]; true when some pattern satisfies.
bool Oracle::flips_satisfy(const Lasso& violating, int position, const Changeset& c,
                           std::vector<std::pair<int, int>>* flips_out) {
  Lasso base = violating.unrolled_to(position);
  base.stem[position] ^= c.present;
  std::vector<int> fvars = mask_vars(c.future);
  std::vector<int> pos(fvars.size(), 1);
  for (;;) {
    Lasso w = base;
    for (size_t k = 0; k < fvars.size(); ++k)
      w = w.with_flip(position + pos[k], Vocab::bit(fvars[k]));
    if (sat(w)) {
      if (flips_out) {
        flips_out->clear();
        for (size_t k = 0; k < fvars.size(); ++k)
          flips_out->push_back({fvars[k], position + pos[k]});
      }
      return true;
    }
    // next placement tuple
    size_t k = 0;
    for (; k < fvars.size(); ++k) {
      if (pos[k] < bounds_.flip_window) {
        ++pos[k];
        break;
      }
      pos[k] = 1;
    }
    if (k == fvars.size()) return false;
  }
}

bool Oracle::changeset_satisfiable(const Lasso& violating, int position,
                                   const Changeset& c,
                                   std::vector<std::pair<int, int>>* flips_out) {
  return flips_satisfy(violating, position, c, flips_out);
}

namespace {

// All strict sub-pairs (P' subset P, F' subset F, (P',F') != (P,F)).
std::vector<Changeset> sub_changesets(const Changeset& c) {
  std::vector<Changeset> subs;
  for (uint32_t p = c.present;; p = (p - 1) & c.present) {
    for (uint32_t q = c.future;; q = (q - 1) & c.future) {
      if (!(p == c.present && q == c.future)) subs.push_back({p, q});
      if (q == 0) break;
    }
    if (p == 0) break;
  }
  return subs;
}

}  // namespace

bool Oracle::is_minimal(const Lasso& violating, int position, const Changeset& c) {
  for (const Changeset& s : sub_changesets(c))
    if (changeset_satisfiable(violating, position, s, nullptr)) return false;
  return true;
}

bool Oracle::is_min_changeset(const Lasso& gamma, const Lasso& pi_violating,
                              int position, const Changeset& c) {
  Lasso w = combine(gamma, pi_violating, spec_.input_mask(), spec_.output_mask());
  if (position < 0 || position >= w.window() + bounds_.flip_window)
    throw std::invalid_argument("flip position outside the lasso window");
  if (sat(w))
    throw PreconditionError("gamma u pi satisfies the specification; Def. 5 "
                            "requires a violating trace");
  return changeset_satisfiable(w, position, c, nullptr) &&
         is_minimal(w, position, c);
}

OracleResult Oracle::semantic_dep(int u, int v, DepKind kind) {
  uint32_t all = spec_.input_mask() | spec_.output_mask();
  uint32_t ubit = Vocab::bit(u);
  std::optional<DepWitness> witness;
  try {
    for_each_lasso(all, bounds_.stem_len, bounds_.loop_len, [&](const Lasso& w) {
      if (!sat(w)) return true;
      for (int i = 0; i < w.window(); ++i) {
        Lasso flipped = w.with_flip(i, ubit);
        if (sat(flipped)) continue;
        // ascend by changeset size; memoize satisfiability per (P,F)
        std::map<std::pair<uint32_t, uint32_t>, bool> memo;
        auto satisfiable = [&](const Changeset& c,
                               std::vector<std::pair<int, int>>* flips) {
          auto it = memo.find({c.present, c.future});
          if (it != memo.end() && !flips) return it->second;
          bool r = changeset_satisfiable(flipped, i, c, flips);
          memo[{c.present, c.future}] = r;
          return r;
        };
        uint32_t pcand = spec_.output_mask() & ~ubit;
        uint32_t fcand = spec_.output_mask();
        for (int size = 1; size <= bounds_.max_changeset && !witness; ++size) {
          // enumerate P subset pcand, F subset fcand with |P|+|F| == size
          for (uint32_t p = pcand;; p = (p - 1) & pcand) {
            int pc = __builtin_popcount(p);
            if (pc <= size) {
              for (uint32_t q = fcand;; q = (q - 1) & fcand) {
                if (pc + __builtin_popcount(q) == size) {
                  Changeset c{p, q};
                  bool relevant = (kind == DepKind::Present && (p & Vocab::bit(v))) ||
                                  (kind == DepKind::Future && (q & Vocab::bit(v)));
                  if (relevant && satisfiable(c, nullptr) && is_minimal(flipped, i, c)) {
                    DepWitness dw;
                    dw.gamma = restrict_to(w, spec_.input_mask());
                    dw.pi = restrict_to(w, spec_.output_mask());
                    dw.position = i;
                    dw.flipped = u;
                    dw.change = c;
                    satisfiable(c, &dw.future_positions);
                    witness = dw;
                    break;
                  }
                }
                if (q == 0) break;
              }
            }
            if (witness || p == 0) break;
          }
        }
        if (witness) return false;
      }
      return true;
    });
  } catch (const BudgetExhausted&) {
    return {OracleVerdict::Inconclusive, std::nullopt};
  }
  if (witness) return {OracleVerdict::Found, witness};
  return {OracleVerdict::NotFoundWithinBounds, std::nullopt};
}

namespace {

// Enumerates assignments of `vars` bits over positions (from, window) of `w`,
// loop included; calls fn for each resulting lasso.
bool for_each_suffix(const Lasso& base, int from, uint32_t vars_mask,
                     const std::function<bool(const Lasso&)>& fn) {
  std::vector<int> vars = mask_vars(vars_mask);
  int k = static_cast<int>(vars.size());
  std::vector<int> free_pos;
  for (int p = from + 1; p < base.window(); ++p) free_pos.push_back(p);
  int cells = static_cast<int>(free_pos.size()) * k;
  uint64_t count = 1ull << cells;
  for (uint64_t code = 0; code < count; ++code) {
    Lasso w = base;
    int cell = 0;
    for (int p : free_pos)
      for (int i = 0; i < k; ++i, ++cell) {
        uint32_t bit = Vocab::bit(vars[i]);
        bool on = (code >> cell) & 1;
        uint32_t* letter =
            p < w.stem_len() ? &w.stem[p] : &w.loop[p - w.stem_len()];
        if (on)
          *letter |= bit;
        else
          *letter &= ~bit;
      }
    if (!fn(w)) return false;
  }
  return true;
}

}  // namespace

OracleResult Oracle::input_dep(int u) {
  if (spec_.inputs.empty()) return {OracleVerdict::NotFoundWithinBounds, std::nullopt};
  uint32_t all = spec_.input_mask() | spec_.output_mask();
  uint32_t ubit = Vocab::bit(u);
  std::optional<DepWitness> witness;
  try {
    for_each_lasso(all, bounds_.stem_len, bounds_.loop_len, [&](const Lasso& w) {
      if (!sat(w)) return true;
      for (int i = 0; i < w.window(); ++i) {
        Lasso flipped = w.with_flip(i, ubit);
        // (a) every output continuation extending the flipped prefix violates
        bool some_continuation_sat = !for_each_suffix(
            flipped, i, spec_.output_mask(),
            [&](const Lasso& cont) { return !sat(cont); });
        if (some_continuation_sat) continue;
        // (b) some redirected input suffix admits satisfaction
        bool found_redirect = !for_each_suffix(
            flipped, i, spec_.input_mask(), [&](const Lasso& redirected) {
              bool sat_out = !for_each_suffix(
                  redirected, i, spec_.output_mask(),
                  [&](const Lasso& cont) { return !sat(cont); });
              if (!sat_out) return true;
              DepWitness dw;
              dw.gamma = restrict_to(redirected, spec_.input_mask());
              dw.pi = restrict_to(flipped, spec_.output_mask());
              dw.position = i;
              dw.flipped = u;
              witness = dw;
              return false;
            });
        if (found_redirect) return false;
      }
      return true;
    });
  } catch (const BudgetExhausted&) {
    return {OracleVerdict::Inconclusive, std::nullopt};
  }
  if (witness) return {OracleVerdict::Found, witness};
  return {OracleVerdict::NotFoundWithinBounds, std::nullopt};
}

bool Oracle::check_witness(const DepWitness& w) const {
  Lasso full = combine(w.gamma, w.pi, spec_.input_mask(), spec_.output_mask());
  if (!eval_lasso(phi_, full)) return false;
  Lasso flipped = full.with_flip(w.position, Vocab::bit(w.flipped));
  if (eval_lasso(phi_, flipped)) return false;
  Lasso repaired = flipped.unrolled_to(w.position);
  repaired.stem[w.position] ^= w.change.present;
  for (auto [var, pos] : w.future_positions)
    repaired = repaired.with_flip(pos, Vocab::bit(var));
  return eval_lasso(phi_, repaired);
}

SemanticGraphResult build_semantic_graph(const Spec& spec, const OracleBounds& bounds) {
  SemanticGraphResult res;
  res.graph.n = spec.vocab.size();
  Oracle oracle(spec, bounds);
  uint32_t all = spec.input_mask() | spec.output_mask();
  uint32_t out_mask = spec.output_mask();
  std::set<std::tuple<int, int, int>> seen;  // (u, v, kind) already recorded
  try {
    for_each_lasso(all, bounds.stem_len, bounds.loop_len, [&](const Lasso& w) {
      if (!oracle.sat(w)) return true;
      for (int i = 0; i < w.window(); ++i) {
        for (int u : spec.outputs) {
          uint32_t ubit = Vocab::bit(u);
          Lasso flipped = w.with_flip(i, ubit);
          if (oracle.sat(flipped)) continue;
          std::map<std::pair<uint32_t, uint32_t>, bool> memo;
          auto satisfiable = [&](const Changeset& c,
                                 std::vector<std::pair<int, int>>* flips) {
            auto it = memo.find({c.present, c.future});
            if (it != memo.end() && !flips) return it->second;
            bool r = oracle.changeset_satisfiable(flipped, i, c, flips);
            memo[{c.present, c.future}] = r;
            return r;
          };
          uint32_t pcand = out_mask & ~ubit;
          for (int size = 1; size <= bounds.max_changeset; ++size) {
            for (uint32_t p = pcand;; p = (p - 1) & pcand) {
              int pc = __builtin_popcount(p);
              if (pc <= size) {
                for (uint32_t q = out_mask;; q = (q - 1) & out_mask) {
                  if (pc + __builtin_popcount(q) == size) {
                    Changeset c{p, q};
                    bool is_new = false;
                    for (int v : spec.outputs) {
                      if ((c.present & Vocab::bit(v)) &&
                          !seen.count({u, v, 0}))
                        is_new = true;
                      if ((c.future & Vocab::bit(v)) && !seen.count({u, v, 1}))
                        is_new = true;
                    }
                    std::vector<std::pair<int, int>> flips;
                    if (is_new && satisfiable(c, &flips) &&
                        oracle.is_minimal(flipped, i, c)) {
                      DepWitness dw;
                      dw.gamma = restrict_to(w, spec.input_mask());
                      dw.pi = restrict_to(w, out_mask);
                      dw.position = i;
                      dw.flipped = u;
                      dw.change = c;
                      dw.future_positions = flips;
                      res.witnesses.push_back(dw);
                      for (int v : spec.outputs) {
                        if (c.present & Vocab::bit(v)) {
                          if (seen.insert({u, v, 0}).second)
                            res.graph.add_present(u, v, kTagBase);
                        }
                        if (c.future & Vocab::bit(v)) {
                          uint32_t off = ExtNat::kInf;
                          for (auto [var, pos] : flips)
                            if (var == v) off = pos - i;
                          if (seen.insert({u, v, 1}).second)
                            res.graph.add_future(u, v, {off}, kTagBase);
                        }
                      }
                    }
                  }
                  if (q == 0) break;
                }
              }
              if (p == 0) break;
            }
          }
        }
      }
      return true;
    });
    // input dependencies, one targeted search per output
    for (int u : spec.outputs) {
      if (seen.count({u, -1, 2})) continue;
      Oracle o2(spec, bounds);
      OracleResult r = o2.input_dep(u);
      if (r.verdict == OracleVerdict::Found) {
        for (int v : spec.inputs) res.graph.add_input_dep(u, v);
        if (r.witness) res.witnesses.push_back(*r.witness);
        seen.insert({u, -1, 2});
      } else if (r.verdict == OracleVerdict::Inconclusive) {
        res.inconclusive = true;
        res.notes.push_back("input-dependency search for " + spec.vocab.name(u) +
                            " exceeded the evaluation budget");
      }
    }
  } catch (const BudgetExhausted&) {
    res.inconclusive = true;
    res.notes.push_back("changeset sweep exceeded the evaluation budget");
  }
  return res;
}

std::string witness_json(const DepWitness& w, const Spec& spec) {
  std::ostringstream os;
  auto lasso_json = [&](const Lasso& l) {
    std::string s = "{\"stem\":[";
    for (size_t i = 0; i < l.stem.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(l.stem[i]);
    }
    s += "],\"loop\":[";
    for (size_t i = 0; i < l.loop.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(l.loop[i]);
    }
    return s + "]}";
  };
  os << "{\"variable\":\"" << spec.vocab.name(w.flipped) << "\",\"position\":"
     << w.position << ",\"present\":[";
  bool first = true;
  for (int v = 0; v < spec.vocab.size(); ++v)
    if (w.change.present & Vocab::bit(v)) {
      if (!first) os << ",";
      os << "\"" << spec.vocab.name(v) << "\"";
      first = false;
    }
  os << "],\"future\":[";
  first = true;
  for (auto [var, pos] : w.future_positions) {
    if (!first) os << ",";
    os << "{\"var\":\"" << spec.vocab.name(var) << "\",\"position\":" << pos << "}";
    first = false;
  }
  os << "],\"gamma\":" << lasso_json(w.gamma) << ",\"pi\":" << lasso_json(w.pi) << "}";
  return os.str();
}

}  // namespace incsyn
