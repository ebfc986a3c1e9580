#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "sam/errors.hpp"
#include "sam/lexicon.hpp"
#include "sam/mismatch.hpp"
#include "sam/textproc.hpp"

namespace sam {

/// One mismatched word's contribution to a sentiment total.
struct WordSentiment {
  std::string lemma;
  PosTag pos;
  double score;   // prior polarity
  double weight;  // normalized weight |score| / sum |score|, 0 when the sum is 0
};

struct SentimentTotal {
  double total = 0.0;
  std::vector<WordSentiment> detail;
};

struct SamResult {
  double s_h = 0.0;
  double s_r = 0.0;
  double penalty_p = 0.0;
  double base_score = 0.0;
  double adjusted_score = 0.0;
  std::vector<WordSentiment> hyp_detail;
  std::vector<WordSentiment> ref_detail;
};

/// Polarity-weighted average of the mismatched words' prior polarities.
/// Each word is weighted by |s_i|; an empty or all-neutral set totals 0.
inline SentimentTotal sentiment_total(const std::vector<Token>& mismatches,
                                      const SentimentLexicon& lexicon) {
  SentimentTotal out;
  out.detail.reserve(mismatches.size());
  double weight_sum = 0.0;
  for (const auto& tok : mismatches) {
    double s = lexicon.lookup(tok.lemma, tok.pos);
    weight_sum += std::abs(s);
    out.detail.push_back({tok.lemma, tok.pos, s, std::abs(s)});
  }
  if (weight_sum == 0.0) {
    for (auto& d : out.detail) d.weight = 0.0;
    return out;
  }
  for (auto& d : out.detail) {
    d.weight /= weight_sum;
    out.total += d.weight * d.score;
  }
  return out;
}

inline double sam_penalty(double s_h, double s_r) {
  if (!(s_h >= -1.0 && s_h <= 1.0) || !(s_r >= -1.0 && s_r <= 1.0)) {
    throw DomainError("sentiment totals must lie in [-1,1]");
  }
  return std::abs(s_r - s_h) / 2.0;
}

inline double adjust(double base_score, double penalty_p) {
  if (!(base_score >= 0.0 && base_score <= 1.0)) {
    throw DomainError("base score must lie in [0,1]");
  }
  if (!(penalty_p >= 0.0 && penalty_p <= 1.0)) {
    throw DomainError("penalty must lie in [0,1]");
  }
  return base_score * (1.0 - penalty_p);
}

/// SAM from pre-analyzed token sequences.
inline SamResult score_tokens(const std::vector<Token>& hyp, const std::vector<Token>& ref,
                              double base_score, const SentimentLexicon& lexicon) {
  MismatchSet mm = extract_mismatches(hyp, ref);
  SentimentTotal h = sentiment_total(mm.hyp_mismatches, lexicon);
  SentimentTotal r = sentiment_total(mm.ref_mismatches, lexicon);
  SamResult out;
  out.s_h = h.total;
  out.s_r = r.total;
  // Rounding can push a weighted average a hair past +/-1.
  out.s_h = std::clamp(out.s_h, -1.0, 1.0);
  out.s_r = std::clamp(out.s_r, -1.0, 1.0);
  out.penalty_p = sam_penalty(out.s_h, out.s_r);
  out.base_score = base_score;
  out.adjusted_score = adjust(base_score, out.penalty_p);
  out.hyp_detail = std::move(h.detail);
  out.ref_detail = std::move(r.detail);
  return out;
}

/// End-to-end SAM adjustment of `base_score` for one segment.
inline SamResult score_pair(std::string_view hyp_text, std::string_view ref_text,
                            double base_score, const SentimentLexicon& lexicon,
                            const Analyzer& analyzer = Analyzer()) {
  return score_tokens(analyzer.analyze(tokenize(hyp_text)),
                      analyzer.analyze(tokenize(ref_text)), base_score, lexicon);
}

}  // namespace sam
