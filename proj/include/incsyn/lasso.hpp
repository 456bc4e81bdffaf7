#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "incsyn/formula.hpp"
#include "incsyn/vocab.hpp"

namespace incsyn {

// Ultimately periodic word stem . loop^omega. Letters are variable bitmasks.
struct Lasso {
  std::vector<uint32_t> stem;
  std::vector<uint32_t> loop;  // nonempty

  int stem_len() const { return static_cast<int>(stem.size()); }
  int loop_len() const { return static_cast<int>(loop.size()); }
  int period_start() const { return stem_len(); }
  int window() const { return stem_len() + loop_len(); }

  uint32_t at(long long pos) const {
    if (pos < stem_len()) return stem[pos];
    return loop[(pos - stem_len()) % loop_len()];
  }

  // Same infinite word with the stem unrolled so that position `pos` lies in
  // the (possibly longer) stem; used to edit single positions of the word.
  Lasso unrolled_to(int pos) const;
  Lasso with_flip(int pos, uint32_t bit) const;
  // Suffix from `pos` as a lasso (loop rotated as needed).
  Lasso suffix_from(int pos) const;

  bool operator==(const Lasso& o) const { return stem == o.stem && loop == o.loop; }
  std::string str(const Vocab& vocab) const;
};

// Exact LTL evaluation on stem.loop^omega: least/greatest fixpoints over the
// looped position graph, no approximation.
bool eval_lasso(Node formula, const Lasso& word);

// Enumerates all lassos over the variables in `mask` with stem length
// in [0, max_stem] and loop length in [1, max_loop], ascending by total
// window size. Returns false from `fn` to stop early.
bool for_each_lasso(uint32_t mask, int max_stem, int max_loop,
                    const std::function<bool(const Lasso&)>& fn);

}  // namespace incsyn
