#pragma once

#include <string>
#include <vector>

#include "incsyn/formula.hpp"
#include "incsyn/vocab.hpp"

namespace incsyn {

// Parsed specification: declared variable partition plus NNF conjunct lists.
// The analyzed formula is the conjunction of assumptions and guarantees;
// winning verification uses the implication form instead.
struct Spec {
  Vocab vocab;
  std::vector<int> inputs;
  std::vector<int> outputs;
  std::vector<Node> assumptions;
  std::vector<Node> guarantees;

  std::vector<Node> all_conjuncts() const {
    std::vector<Node> r = assumptions;
    r.insert(r.end(), guarantees.begin(), guarantees.end());
    return r;
  }
  Node conjunction() const { return f::conj(all_conjuncts()); }
  // (A1 && ... && An) -> (G1 && ... && Gm), in NNF.
  Node implication() const {
    Node g = f::conj(guarantees);
    if (assumptions.empty()) return g;
    return to_nnf(f::implies(f::conj(assumptions), g));
  }
  uint32_t output_mask() const { return vocab.mask_of(outputs); }
  uint32_t input_mask() const { return vocab.mask_of(inputs); }
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ")"),
        line(line_),
        col(col_) {}
};

// Spec-file grammar:
//   spec     := { item }
//   item     := ("input" | "output") ident ";"
//             | ("assume" | "guarantee") ltl ";"
//   ltl      := or_expr [ "->" ltl ]                  (desugared to !a || b)
//   or_expr  := and_expr { "||" and_expr }
//   and_expr := bin_expr { "&&" bin_expr }
//   bin_expr := unary [ ("U" | "W") bin_expr ]
//   unary    := ("!" | "X" | "F" | "G" | "GF") unary | "(" ltl ")" | ident
// Conjuncts are normalized to NNF and top-level conjunctions are split.
Spec parse_spec(const std::string& text);

// Single formula over an existing vocabulary (used by tests and the CLI).
Node parse_formula(const std::string& text, const Vocab& vocab);

// Emits the same grammar; parse . print is the identity on parsed specs.
std::string print_spec(const Spec& spec);

// Output variables of liveness-affecting conjuncts (conjunct contains
// F, U or GF after NNF).
std::vector<int> liveness_outputs(const Spec& spec);

}  // namespace incsyn
