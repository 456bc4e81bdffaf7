#include "incsyn/formula.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace incsyn {

namespace {

struct Key {
  Op op;
  int var;
  Node lhs;
  Node rhs;
  bool operator==(const Key& o) const {
    return op == o.op && var == o.var && lhs == o.lhs && rhs == o.rhs;
  }
};

struct KeyHash {
  size_t operator()(const Key& k) const {
    size_t h = static_cast<size_t>(k.op) * 0x9e3779b97f4a7c15ull;
    h ^= static_cast<size_t>(k.var + 1) * 0xff51afd7ed558ccdull;
    h ^= reinterpret_cast<size_t>(k.lhs) * 0xc4ceb9fe1a85ec53ull;
    h ^= reinterpret_cast<size_t>(k.rhs) + (h << 6) + (h >> 2);
    return h;
  }
};

std::mutex g_mutex;
std::unordered_map<Key, Node, KeyHash> g_table;
std::deque<Formula> g_nodes;

Node intern(Op op, int var, Node lhs, Node rhs) {
  Key k{op, var, lhs, rhs};
  std::lock_guard<std::mutex> lock(g_mutex);
  auto it = g_table.find(k);
  if (it != g_table.end()) return it->second;
  g_nodes.push_back(Formula{op, var, lhs, rhs, g_nodes.size()});
  Node n = &g_nodes.back();
  g_table.emplace(k, n);
  return n;
}

}  // namespace

namespace f {

Node atom(int var) { return intern(Op::Atom, var, nullptr, nullptr); }
Node not_(Node a) { return intern(Op::Not, -1, a, nullptr); }
Node and_(Node a, Node b) { return intern(Op::And, -1, a, b); }
Node or_(Node a, Node b) { return intern(Op::Or, -1, a, b); }
Node next(Node a) { return intern(Op::Next, -1, a, nullptr); }
Node until(Node a, Node b) { return intern(Op::Until, -1, a, b); }
Node wuntil(Node a, Node b) { return intern(Op::WeakUntil, -1, a, b); }
Node ev(Node a) { return intern(Op::Eventually, -1, a, nullptr); }

Node alw(Node a) {
  if (a->op == Op::Eventually) return alwev(a->lhs);
  return intern(Op::Always, -1, a, nullptr);
}

Node alwev(Node a) { return intern(Op::AlwaysEventually, -1, a, nullptr); }
Node implies(Node a, Node b) { return or_(not_(a), b); }

Node conj(const std::vector<Node>& xs) {
  Node r = xs.back();
  for (int i = static_cast<int>(xs.size()) - 2; i >= 0; --i) r = and_(xs[i], r);
  return r;
}

}  // namespace f

namespace {

Node nnf(Node a, bool neg) {
  switch (a->op) {
    case Op::Atom:
      return neg ? f::not_(a) : a;
    case Op::Not:
      return nnf(a->lhs, !neg);
    case Op::And:
      return neg ? f::or_(nnf(a->lhs, true), nnf(a->rhs, true))
                 : f::and_(nnf(a->lhs, false), nnf(a->rhs, false));
    case Op::Or:
      return neg ? f::and_(nnf(a->lhs, true), nnf(a->rhs, true))
                 : f::or_(nnf(a->lhs, false), nnf(a->rhs, false));
    case Op::Next:
      return f::next(nnf(a->lhs, neg));
    case Op::Until:
      // !(a U b) = !b W (!a && !b)
      return neg ? f::wuntil(nnf(a->rhs, true),
                             f::and_(nnf(a->lhs, true), nnf(a->rhs, true)))
                 : f::until(nnf(a->lhs, false), nnf(a->rhs, false));
    case Op::WeakUntil:
      return neg ? f::until(nnf(a->rhs, true),
                            f::and_(nnf(a->lhs, true), nnf(a->rhs, true)))
                 : f::wuntil(nnf(a->lhs, false), nnf(a->rhs, false));
    case Op::Eventually:
      return neg ? f::alw(nnf(a->lhs, true)) : f::ev(nnf(a->lhs, false));
    case Op::Always:
      return neg ? f::ev(nnf(a->lhs, true)) : f::alw(nnf(a->lhs, false));
    case Op::AlwaysEventually:
      // !(GF x) = FG !x
      return neg ? f::ev(f::alw(nnf(a->lhs, true))) : f::alwev(nnf(a->lhs, false));
  }
  return a;
}

}  // namespace

Node to_nnf(Node a) { return nnf(a, false); }

bool is_nnf(Node a) {
  switch (a->op) {
    case Op::Atom:
      return true;
    case Op::Not:
      return a->lhs->op == Op::Atom;
    case Op::Next:
    case Op::Eventually:
    case Op::AlwaysEventually:
      return is_nnf(a->lhs);
    case Op::Always:
      return a->lhs->op != Op::Eventually && is_nnf(a->lhs);
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::WeakUntil:
      return is_nnf(a->lhs) && is_nnf(a->rhs);
  }
  return false;
}

Node prime_outputs(Node a, const std::vector<int>& outs, Vocab& vocab) {
  switch (a->op) {
    case Op::Atom: {
      for (int v : outs)
        if (v == a->var) return f::atom(vocab.prime(v));
      return a;
    }
    case Op::Not:
      return f::not_(prime_outputs(a->lhs, outs, vocab));
    case Op::Next:
      return f::next(prime_outputs(a->lhs, outs, vocab));
    case Op::Eventually:
      return f::ev(prime_outputs(a->lhs, outs, vocab));
    case Op::Always:
      return f::alw(prime_outputs(a->lhs, outs, vocab));
    case Op::AlwaysEventually:
      return f::alwev(prime_outputs(a->lhs, outs, vocab));
    case Op::And:
      return f::and_(prime_outputs(a->lhs, outs, vocab),
                     prime_outputs(a->rhs, outs, vocab));
    case Op::Or:
      return f::or_(prime_outputs(a->lhs, outs, vocab),
                    prime_outputs(a->rhs, outs, vocab));
    case Op::Until:
      return f::until(prime_outputs(a->lhs, outs, vocab),
                      prime_outputs(a->rhs, outs, vocab));
    case Op::WeakUntil:
      return f::wuntil(prime_outputs(a->lhs, outs, vocab),
                       prime_outputs(a->rhs, outs, vocab));
  }
  return a;
}

void collect_vars(Node a, uint32_t& mask) {
  if (a->op == Op::Atom) {
    mask |= Vocab::bit(a->var);
    return;
  }
  if (a->lhs) collect_vars(a->lhs, mask);
  if (a->rhs) collect_vars(a->rhs, mask);
}

uint32_t vars_of(Node a) {
  uint32_t m = 0;
  collect_vars(a, m);
  return m;
}

bool has_liveness_operator(Node a) {
  if (a->op == Op::Eventually || a->op == Op::Until || a->op == Op::AlwaysEventually)
    return true;
  if (a->lhs && has_liveness_operator(a->lhs)) return true;
  if (a->rhs && has_liveness_operator(a->rhs)) return true;
  return false;
}

int formula_size(Node a) {
  int n = 1;
  if (a->lhs) n += formula_size(a->lhs);
  if (a->rhs) n += formula_size(a->rhs);
  return n;
}

namespace {

int prec(Op op) {
  switch (op) {
    case Op::Or:
      return 1;
    case Op::And:
      return 2;
    case Op::Until:
    case Op::WeakUntil:
      return 3;
    case Op::Atom:
      return 6;
    default:
      return 5;  // unary operators
  }
}

void print(Node a, const Vocab& vocab, int parent_prec, std::string& out) {
  int p = prec(a->op);
  bool parens = p < parent_prec;
  if (parens) out += '(';
  switch (a->op) {
    case Op::Atom:
      out += vocab.name(a->var);
      break;
    case Op::Not:
      out += '!';
      print(a->lhs, vocab, 5, out);
      break;
    case Op::Next:
      out += "X ";
      print(a->lhs, vocab, 5, out);
      break;
    case Op::Eventually:
      out += "F ";
      print(a->lhs, vocab, 5, out);
      break;
    case Op::Always:
      out += "G ";
      print(a->lhs, vocab, 5, out);
      break;
    case Op::AlwaysEventually:
      out += "GF ";
      print(a->lhs, vocab, 5, out);
      break;
    case Op::And:
      print(a->lhs, vocab, p + 1, out);
      out += " && ";
      print(a->rhs, vocab, p, out);
      break;
    case Op::Or:
      print(a->lhs, vocab, p + 1, out);
      out += " || ";
      print(a->rhs, vocab, p, out);
      break;
    case Op::Until:
      print(a->lhs, vocab, p + 1, out);
      out += " U ";
      print(a->rhs, vocab, p, out);
      break;
    case Op::WeakUntil:
      print(a->lhs, vocab, p + 1, out);
      out += " W ";
      print(a->rhs, vocab, p, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string to_string(Node a, const Vocab& vocab) {
  std::string out;
  print(a, vocab, 0, out);
  return out;
}

}  // namespace incsyn
