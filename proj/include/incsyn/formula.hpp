#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "incsyn/vocab.hpp"

namespace incsyn {

enum class Op : uint8_t {
  Atom,
  Not,
  And,
  Or,
  Next,
  Until,
  WeakUntil,
  Eventually,
  Always,
  AlwaysEventually,
};

// Interned formula node. Structural sharing makes pointer equality coincide
// with structural equality; `uid` gives a stable total order for canonical
// sets of subformulas.
class Formula {
 public:
  Op op;
  int var;  // Atom only
  const Formula* lhs;
  const Formula* rhs;
  uint64_t uid;

  bool is_literal() const {
    return op == Op::Atom || (op == Op::Not && lhs->op == Op::Atom);
  }
};

using Node = const Formula*;

namespace f {
Node atom(int var);
Node not_(Node a);
Node and_(Node a, Node b);
Node or_(Node a, Node b);
Node next(Node a);
Node until(Node a, Node b);
Node wuntil(Node a, Node b);
Node ev(Node a);
// G over an F child collapses to the dedicated GF operator.
Node alw(Node a);
Node alwev(Node a);
Node implies(Node a, Node b);
Node conj(const std::vector<Node>& xs);  // right fold; xs must be nonempty
}  // namespace f

// Negation normal form: negation pushed to atoms, implications gone,
// G(F x) collapsed to the GF operator.
Node to_nnf(Node a);
bool is_nnf(Node a);

// Replaces every atom over a variable in `outs` by its primed twin.
Node prime_outputs(Node a, const std::vector<int>& outs, Vocab& vocab);

void collect_vars(Node a, uint32_t& mask);
uint32_t vars_of(Node a);
// True if the conjunct contains F, U or GF after NNF (liveness classifier).
bool has_liveness_operator(Node a);
int formula_size(Node a);

std::string to_string(Node a, const Vocab& vocab);

}  // namespace incsyn
