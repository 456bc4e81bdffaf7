#include "incsyn/lasso.hpp"

#include <algorithm>
#include <map>

namespace incsyn {

Lasso Lasso::unrolled_to(int pos) const {
  if (pos < stem_len()) return *this;
  Lasso r;
  r.stem.reserve(pos + 1);
  for (int p = 0; p <= pos; ++p) r.stem.push_back(at(p));
  r.loop.reserve(loop_len());
  for (int k = 1; k <= loop_len(); ++k) r.loop.push_back(at(pos + k));
  return r;
}

Lasso Lasso::with_flip(int pos, uint32_t bit) const {
  Lasso r = unrolled_to(pos);
  r.stem[pos] ^= bit;
  return r;
}

Lasso Lasso::suffix_from(int pos) const {
  Lasso r;
  int s = stem_len();
  if (pos <= s) {
    r.stem.assign(stem.begin() + pos, stem.end());
    r.loop = loop;
  } else {
    for (int k = 1; k <= loop_len(); ++k) r.loop.push_back(at(pos + k - 1));
  }
  if (r.loop.empty()) r.loop = loop;
  return r;
}

std::string Lasso::str(const Vocab& vocab) const {
  auto letter = [&](uint32_t m) {
    std::string s = "{";
    bool first = true;
    for (int v = 0; v < vocab.size(); ++v)
      if (m & Vocab::bit(v)) {
        if (!first) s += ",";
        s += vocab.name(v);
        first = false;
      }
    return s + "}";
  };
  std::string s;
  for (uint32_t l : stem) s += letter(l);
  s += "(";
  for (uint32_t l : loop) s += letter(l);
  return s + ")^w";
}

namespace {

// Truth vectors over positions 0..window-1; successor of the last position
// wraps to the loop start.
struct Eval {
  const Lasso& w;
  int n;
  std::map<Node, std::vector<char>> memo;

  explicit Eval(const Lasso& word) : w(word), n(word.window()) {}

  int succ(int p) const { return p + 1 < n ? p + 1 : w.stem_len(); }

  const std::vector<char>& get(Node a) {
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    std::vector<char> val(n, 0);
    switch (a->op) {
      case Op::Atom:
        for (int p = 0; p < n; ++p) val[p] = (w.at(p) >> a->var) & 1;
        break;
      case Op::Not: {
        const auto& s = get(a->lhs);
        for (int p = 0; p < n; ++p) val[p] = !s[p];
        break;
      }
      case Op::And: {
        const auto& l = get(a->lhs);
        const auto& r = get(a->rhs);
        for (int p = 0; p < n; ++p) val[p] = l[p] && r[p];
        break;
      }
      case Op::Or: {
        const auto& l = get(a->lhs);
        const auto& r = get(a->rhs);
        for (int p = 0; p < n; ++p) val[p] = l[p] || r[p];
        break;
      }
      case Op::Next: {
        const auto& s = get(a->lhs);
        for (int p = 0; p < n; ++p) val[p] = s[succ(p)];
        break;
      }
      case Op::Until:
        val = fixpoint(get(a->lhs), get(a->rhs), false);
        break;
      case Op::WeakUntil:
        val = fixpoint(get(a->lhs), get(a->rhs), true);
        break;
      case Op::Eventually: {
        std::vector<char> tru(n, 1);
        val = fixpoint(tru, get(a->lhs), false);
        break;
      }
      case Op::Always: {
        std::vector<char> fls(n, 0);
        // G x  =  x W false
        val = fixpoint(get(a->lhs), fls, true);
        break;
      }
      case Op::AlwaysEventually: {
        std::vector<char> tru(n, 1), fls(n, 0);
        std::vector<char> evx = fixpoint(tru, get(a->lhs), false);
        val = fixpoint(evx, fls, true);
        break;
      }
    }
    return memo.emplace(a, std::move(val)).first->second;
  }

  // val = rhs || (lhs && X val); least fixpoint for U, greatest for W.
  std::vector<char> fixpoint(const std::vector<char>& lhs,
                             const std::vector<char>& rhs, bool greatest) {
    std::vector<char> val(n, greatest ? 1 : 0);
    for (bool changed = true; changed;) {
      changed = false;
      for (int p = n - 1; p >= 0; --p) {
        char nv = rhs[p] || (lhs[p] && val[succ(p)]);
        if (nv != val[p]) {
          val[p] = nv;
          changed = true;
        }
      }
    }
    return val;
  }
};

}  // namespace

bool eval_lasso(Node formula, const Lasso& word) {
  Eval e(word);
  return e.get(formula)[0];
}

bool for_each_lasso(uint32_t mask, int max_stem, int max_loop,
                    const std::function<bool(const Lasso&)>& fn) {
  std::vector<int> vars;
  for (int v = 0; v < 32; ++v)
    if (mask & (1u << v)) vars.push_back(v);
  int k = static_cast<int>(vars.size());
  auto decode = [&](uint64_t code, int pos) {
    uint32_t m = 0;
    for (int i = 0; i < k; ++i)
      if ((code >> (pos * k + i)) & 1) m |= Vocab::bit(vars[i]);
    return m;
  };
  for (int total = 1; total <= max_stem + max_loop; ++total) {
    for (int s = 0; s <= std::min(max_stem, total - 1); ++s) {
      int l = total - s;
      if (l < 1 || l > max_loop) continue;
      uint64_t count = 1ull << (static_cast<uint64_t>(k) * total);
      for (uint64_t code = 0; code < count; ++code) {
        Lasso w;
        for (int p = 0; p < s; ++p) w.stem.push_back(decode(code, p));
        for (int p = s; p < total; ++p) w.loop.push_back(decode(code, p));
        if (!fn(w)) return false;
      }
    }
  }
  return true;
}

}  // namespace incsyn
