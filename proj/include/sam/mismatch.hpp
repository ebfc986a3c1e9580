#pragma once

#include <vector>

#include "sam/textproc.hpp"

namespace sam {

/// Words left unmatched on each side of a hypothesis/reference pair.
struct MismatchSet {
  std::vector<Token> hyp_mismatches;
  std::vector<Token> ref_mismatches;

  std::size_t m() const { return hyp_mismatches.size(); }
  std::size_t n() const { return ref_mismatches.size(); }
};

/// Two-stage greedy multiset matching. Stage 1 pairs equal normalized forms,
/// stage 2 pairs equal (lemma, POS). Each hypothesis token takes the earliest
/// unconsumed reference token; order of the residue follows the input.
inline MismatchSet extract_mismatches(const std::vector<Token>& hyp,
                                      const std::vector<Token>& ref) {
  std::vector<bool> hyp_used(hyp.size(), false);
  std::vector<bool> ref_used(ref.size(), false);

  auto run_stage = [&](auto&& same) {
    for (std::size_t i = 0; i < hyp.size(); ++i) {
      if (hyp_used[i]) continue;
      for (std::size_t j = 0; j < ref.size(); ++j) {
        if (!ref_used[j] && same(hyp[i], ref[j])) {
          hyp_used[i] = ref_used[j] = true;
          break;
        }
      }
    }
  };
  run_stage([](const Token& a, const Token& b) { return a.normalized == b.normalized; });
  run_stage([](const Token& a, const Token& b) {
    return a.lemma == b.lemma && a.pos == b.pos;
  });

  MismatchSet out;
  for (std::size_t i = 0; i < hyp.size(); ++i) {
    if (!hyp_used[i]) out.hyp_mismatches.push_back(hyp[i]);
  }
  for (std::size_t j = 0; j < ref.size(); ++j) {
    if (!ref_used[j]) out.ref_mismatches.push_back(ref[j]);
  }
  return out;
}

}  // namespace sam
