#include "doctest.h"
#include "incsyn/lasso.hpp"
#include "incsyn/spec.hpp"

using namespace incsyn;

namespace {

Spec two_vars() {
  return parse_spec("input i; output a; output b; guarantee a || b;");
}

Lasso mk(std::vector<uint32_t> stem, std::vector<uint32_t> loop) {
  return Lasso{std::move(stem), std::move(loop)};
}

}  // namespace

TEST_CASE("parse smallest spec") {
  Spec s = parse_spec("output a; guarantee a;");
  CHECK(s.outputs.size() == 1);
  CHECK(s.guarantees.size() == 1);
  CHECK(s.guarantees[0]->op == Op::Atom);
}

TEST_CASE("parse errors carry position") {
  CHECK_THROWS_AS(parse_spec("guarantee a U;"), ParseError);
  CHECK_THROWS_AS(parse_spec("output a; guarantee b;"), ParseError);
  CHECK_THROWS_AS(parse_spec("input a; output a; guarantee a;"), ParseError);
}

TEST_CASE("top-level conjunctions split") {
  Spec s = parse_spec("output a; output b; guarantee G !(a && b) && G (a || b);");
  CHECK(s.guarantees.size() == 2);
}

TEST_CASE("nnf: De Morgan") {
  Spec s = two_vars();
  int a = s.vocab.find("a"), b = s.vocab.find("b");
  Node n = to_nnf(f::not_(f::and_(f::atom(a), f::atom(b))));
  CHECK(n == f::or_(f::not_(f::atom(a)), f::not_(f::atom(b))));
}

TEST_CASE("nnf: temporal dualities") {
  Spec s = two_vars();
  Node a = f::atom(s.vocab.find("a"));
  Node b = f::atom(s.vocab.find("b"));
  CHECK(to_nnf(f::not_(f::ev(a))) == f::alw(f::not_(a)));
  CHECK(to_nnf(f::not_(f::until(a, b))) ==
        f::wuntil(f::not_(b), f::and_(f::not_(a), f::not_(b))));
  CHECK(to_nnf(f::not_(f::alwev(a))) == f::ev(f::alw(f::not_(a))));
}

TEST_CASE("normalizer collapses G(F x)") {
  Spec s = two_vars();
  Node a = f::atom(s.vocab.find("a"));
  CHECK(f::alw(f::ev(a))->op == Op::AlwaysEventually);
  Node parsed = parse_formula("G F a", s.vocab);
  CHECK(parsed->op == Op::AlwaysEventually);
  CHECK(parse_formula("GF a", s.vocab) == parsed);
}

TEST_CASE("eval_lasso basics") {
  Spec s = parse_spec("output keep; output acc; output dec; guarantee keep;");
  int keep = s.vocab.find("keep"), acc = s.vocab.find("acc"),
      dec = s.vocab.find("dec");
  uint32_t K = Vocab::bit(keep), A = Vocab::bit(acc), D = Vocab::bit(dec);

  CHECK(eval_lasso(f::alwev(f::atom(keep)), mk({}, {K, 0})));
  CHECK_FALSE(eval_lasso(f::ev(f::atom(acc)), mk({}, {K})));
  CHECK_FALSE(eval_lasso(
      f::alw(f::implies(f::atom(acc), f::not_(f::atom(dec)))), mk({A | D}, {0})));
}

TEST_CASE("eval_lasso until fixpoints on loops") {
  Spec s = two_vars();
  int a = s.vocab.find("a"), b = s.vocab.find("b");
  uint32_t A = Vocab::bit(a), B = Vocab::bit(b);
  // a U b with b only in the second loop position
  CHECK(eval_lasso(f::until(f::atom(a), f::atom(b)), mk({}, {A, B})));
  // a U b where a holds forever but b never: least fixpoint must say no
  CHECK_FALSE(eval_lasso(f::until(f::atom(a), f::atom(b)), mk({}, {A})));
  // a W b same word: greatest fixpoint says yes
  CHECK(eval_lasso(f::wuntil(f::atom(a), f::atom(b)), mk({}, {A})));
}

TEST_CASE("nnf preserves lasso language exhaustively (2 vars)") {
  Spec s = two_vars();
  int a = s.vocab.find("a"), b = s.vocab.find("b");
  Node A = f::atom(a), B = f::atom(b);
  std::vector<Node> formulas = {
      f::not_(f::and_(A, B)),
      f::not_(f::or_(f::next(A), B)),
      f::not_(f::until(A, B)),
      f::not_(f::wuntil(A, B)),
      f::not_(f::ev(f::and_(A, f::not_(B)))),
      f::not_(f::alw(f::or_(A, B))),
      f::not_(f::alwev(A)),
      f::not_(f::next(f::until(A, f::and_(B, f::not_(A))))),
  };
  uint32_t mask = Vocab::bit(a) | Vocab::bit(b);
  for (Node n : formulas) {
    Node nf = to_nnf(n);
    CHECK(is_nnf(nf));
    for_each_lasso(mask, 3, 2, [&](const Lasso& w) {
      if (eval_lasso(n, w) != eval_lasso(nf, w)) {
        CHECK(eval_lasso(n, w) == eval_lasso(nf, w));
        return false;
      }
      return true;
    });
  }
}

TEST_CASE("until expansion law on shifted lassos") {
  Spec s = two_vars();
  int a = s.vocab.find("a"), b = s.vocab.find("b");
  Node u = f::until(f::atom(a), f::atom(b));
  Node expanded = f::or_(f::atom(b), f::and_(f::atom(a), f::next(u)));
  uint32_t mask = Vocab::bit(a) | Vocab::bit(b);
  for_each_lasso(mask, 2, 2, [&](const Lasso& w) {
    CHECK(eval_lasso(u, w) == eval_lasso(expanded, w));
    return true;
  });
}

TEST_CASE("prime_outputs substitutes only listed outputs") {
  Spec s = parse_spec(
      "input i; output acc; output dec; guarantee G !(acc && dec); guarantee F i;");
  int acc = s.vocab.find("acc"), dec = s.vocab.find("dec");
  Vocab vocab = s.vocab;
  Node g = s.guarantees[0];
  Node primed = prime_outputs(g, {acc, dec}, vocab);
  CHECK(to_string(primed, vocab) == "G (!acc' || !dec')");
  // input-only formula unchanged, and idempotent on it
  Node fi = s.guarantees[1];
  CHECK(prime_outputs(fi, {acc, dec}, vocab) == fi);
  // injective on atoms: distinct primed twins
  CHECK(vocab.find("acc'") != vocab.find("dec'"));
}

TEST_CASE("pretty-print round trip is a fixpoint") {
  std::string src =
      "input curve_ahead; input in_curve; output acc; output dec; output keep; "
      "guarantee G (curve_ahead -> X dec); guarantee GF keep; "
      "guarantee G ((!in_curve && !curve_ahead) -> F acc); "
      "guarantee (acc U dec) W (keep && X acc);";
  Spec s = parse_spec(src);
  std::string printed = print_spec(s);
  Spec s2 = parse_spec(printed);
  CHECK(print_spec(s2) == printed);
  CHECK(s2.guarantees == s.guarantees);
  CHECK(s2.assumptions == s.assumptions);
}

TEST_CASE("liveness classifier") {
  Spec s = parse_spec(
      "input i; output a; output b; output c; "
      "guarantee G (i -> X a); guarantee F b; guarantee GF c;");
  auto lv = liveness_outputs(s);
  CHECK(lv == std::vector<int>{s.vocab.find("b"), s.vocab.find("c")});

  Spec safe = parse_spec("output a; output b; guarantee G (a W b); guarantee X a;");
  CHECK(liveness_outputs(safe).empty());
}
