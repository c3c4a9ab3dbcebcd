#pragma once

#include <functional>
#include <map>
#include <vector>

#include "shiftlab/codes.hpp"

namespace shiftlab::detail {

// Source symbols forced by occurrences of a magic word W for the code c:
// whenever W C W is seen at n, the source is pinned on [n + I, n + I + |W| + |C|).
class MagicDecoder {
 public:
  MagicDecoder(const OneBlockCode& c, Word w, long I) : code_(c), w_(std::move(w)), I_(I) {}

  const Word& word() const { return w_; }
  long offset() const { return I_; }

  // The pinned source window for W C W; throws InputError when W C W has no
  // preimage or the preimages disagree on the window.
  const Word& segment(const Word& c);

  // Source symbols at [from, to) of a point given by `at`, using
  // occurrences of W starting in [scan_from, scan_to).
  Word decode(const std::function<Symbol(long)>& at, long scan_from, long scan_to, long from, long to);

 private:
  const OneBlockCode& code_;
  Word w_;
  long I_;
  std::map<Word, Word> cache_;
};

}  // namespace shiftlab::detail
