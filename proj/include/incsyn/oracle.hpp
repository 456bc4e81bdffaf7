#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incsyn/deps.hpp"
#include "incsyn/lasso.hpp"
#include "incsyn/spec.hpp"

namespace incsyn {

// Bounds for the brute-force decision procedure: quantifiers over infinite
// words are restricted to lasso witnesses, changesets ascend by size, and
// future flips stay inside a window after the flip position.
struct OracleBounds {
  int stem_len = 3;
  int loop_len = 2;
  int max_changeset = 2;
  int flip_window = 3;
  uint64_t eval_budget = 200'000'000;  // eval_lasso calls before Inconclusive
};

struct Changeset {
  uint32_t present = 0;  // P subset out \ {u}
  uint32_t future = 0;   // F subset out
  int size() const { return __builtin_popcount(present) + __builtin_popcount(future); }
};

enum class OracleVerdict { Found, NotFoundWithinBounds, Inconclusive };

struct DepWitness {
  Lasso gamma;      // input lasso
  Lasso pi;         // satisfying output lasso (gamma u pi |= phi)
  int position;     // flip position i
  int flipped;      // the variable u flipped at i
  Changeset change;
  std::vector<std::pair<int, int>> future_positions;  // (var, position) flips
};

struct OracleResult {
  OracleVerdict verdict;
  std::optional<DepWitness> witness;
};

struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Oracle {
 public:
  Oracle(const Spec& spec, const OracleBounds& bounds)
      : spec_(spec), bounds_(bounds), phi_(spec.conjunction()) {}

  // Def. 5. `pi_violating` together with `gamma` must violate phi.
  // Throws PreconditionError when gamma u pi |= phi.
  bool is_min_changeset(const Lasso& gamma, const Lasso& pi_violating, int position,
                        const Changeset& c);

  // Def. 6 first bullet, restricted to lasso witnesses within bounds.
  OracleResult semantic_dep(int u, int v, DepKind kind);

  // Def. 6 second bullet.
  OracleResult input_dep(int u);

  // Re-checks a witness with eval_lasso only (soundness audit).
  bool check_witness(const DepWitness& w) const;

  uint64_t evals() const { return evals_; }

  bool sat(const Lasso& w);
  bool changeset_satisfiable(const Lasso& violating, int position, const Changeset& c,
                             std::vector<std::pair<int, int>>* flips_out);
  bool is_minimal(const Lasso& violating, int position, const Changeset& c);

 private:
  const Spec& spec_;
  OracleBounds bounds_;
  Node phi_;
  uint64_t evals_ = 0;

  bool flips_satisfy(const Lasso& violating, int position, const Changeset& c,
                     std::vector<std::pair<int, int>>* flips_out);
};

struct SemanticGraphResult {
  DependencyGraph graph;
  std::vector<DepWitness> witnesses;
  bool inconclusive = false;          // budget ran out; graph may be missing edges
  std::vector<std::string> notes;
};

// Whole-spec sweep: one pass over all satisfying lassos within bounds,
// extracting every minimal changeset and every input dependency. The
// resulting graph is under-approximate by construction.
SemanticGraphResult build_semantic_graph(const Spec& spec, const OracleBounds& bounds);

std::string witness_json(const DepWitness& w, const Spec& spec);

}  // namespace incsyn
