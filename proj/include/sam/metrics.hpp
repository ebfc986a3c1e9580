#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "sam/errors.hpp"
#include "sam/porter.hpp"
#include "sam/textproc.hpp"
#include "sam/unicode.hpp"

namespace sam {

enum class Provenance { Builtin, External };

/// A base score C_hr on the [0,1] scale.
struct MetricScore {
  std::string metric_name;
  double value = 0.0;
  Provenance provenance = Provenance::Builtin;
};

/// Set by the built-in metrics when an input was empty and the score forced to 0.
struct ScoreFlags {
  bool empty_input = false;
};

namespace bleu {

inline void replace_all(std::string& s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
}

/// mteval-v13a tokenization: splits punctuation and symbols, keeps case,
/// keeps periods and commas inside numbers.
inline std::vector<std::string> tokenize_13a(std::string_view text) {
  std::string line(text);
  replace_all(line, "<skipped>", "");
  replace_all(line, "-\n", "");
  replace_all(line, "\n", " ");
  if (line.find('&') != std::string::npos) {
    replace_all(line, "&quot;", "\"");
    replace_all(line, "&amp;", "&");
    replace_all(line, "&lt;", "<");
    replace_all(line, "&gt;", ">");
  }
  line = " " + line + " ";

  static const std::regex symbols(R"(([{-~\[-` -&(-+:-@/]))");
  static const std::regex period_comma_after(R"(([^0-9])([.,]))");
  static const std::regex period_comma_before(R"(([.,])([^0-9]))");
  static const std::regex dash_after_digit(R"(([0-9])(-))");
  line = std::regex_replace(line, symbols, " $1 ");
  line = std::regex_replace(line, period_comma_after, "$1 $2 ");
  line = std::regex_replace(line, period_comma_before, " $1 $2");
  line = std::regex_replace(line, dash_after_digit, "$1 $2 ");

  std::vector<std::string> out;
  std::istringstream words(line);
  std::string w;
  while (words >> w) out.push_back(w);
  return out;
}

struct NgramStats {
  std::array<int, 4> correct{};
  std::array<int, 4> total{};
  int hyp_len = 0;
  int ref_len = 0;
};

inline std::map<std::vector<std::string_view>, int> count_ngrams(
    const std::vector<std::string>& tokens, std::size_t order) {
  std::map<std::vector<std::string_view>, int> counts;
  if (tokens.size() < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::vector<std::string_view> key(tokens.begin() + i, tokens.begin() + i + order);
    ++counts[key];
  }
  return counts;
}

inline NgramStats collect(const std::vector<std::string>& hyp,
                          const std::vector<std::string>& ref) {
  NgramStats st;
  st.hyp_len = static_cast<int>(hyp.size());
  st.ref_len = static_cast<int>(ref.size());
  for (std::size_t n = 1; n <= 4; ++n) {
    auto h = count_ngrams(hyp, n);
    auto r = count_ngrams(ref, n);
    for (const auto& [gram, count] : h) {
      st.total[n - 1] += count;
      auto it = r.find(gram);
      if (it != r.end()) st.correct[n - 1] += std::min(count, it->second);
    }
  }
  return st;
}

/// Smoothed sentence BLEU in [0,1] from n-gram statistics: exponential
/// smoothing of zero-match orders, orders with no hypothesis n-grams dropped.
inline double score(const NgramStats& st) {
  if (st.hyp_len == 0) return 0.0;
  double bp = 1.0;
  if (st.hyp_len < st.ref_len) {
    bp = std::exp(1.0 - static_cast<double>(st.ref_len) / st.hyp_len);
  }
  if (std::all_of(st.correct.begin(), st.correct.end(), [](int c) { return c == 0; })) {
    return 0.0;
  }
  double log_sum = 0.0;
  int orders = 0;
  double smooth = 1.0;
  for (std::size_t n = 0; n < 4; ++n) {
    if (st.total[n] == 0) break;
    double precision;
    if (st.correct[n] == 0) {
      smooth *= 2.0;
      precision = 1.0 / (smooth * st.total[n]);
    } else {
      precision = static_cast<double>(st.correct[n]) / st.total[n];
    }
    log_sum += std::log(precision);
    ++orders;
  }
  return std::clamp(bp * std::exp(log_sum / orders), 0.0, 1.0);
}

}  // namespace bleu

/// Sentence-level BLEU (orders 1-4, 13a tokenization) on the [0,1] scale.
inline double bleu_sentence(std::string_view hyp, std::string_view ref,
                            ScoreFlags* flags = nullptr) {
  auto h = bleu::tokenize_13a(hyp);
  auto r = bleu::tokenize_13a(ref);
  if (h.empty() || r.empty()) {
    if (flags) flags->empty_input = true;
    return 0.0;
  }
  return bleu::score(bleu::collect(h, r));
}

namespace meteor {

struct Alignment {
  // ref index matched to each hypothesis word, -1 when unmatched
  std::vector<int> hyp_to_ref;
  int matches = 0;
  int chunks = 0;
};

/// Lowercased words, punctuation-only tokens removed.
inline std::vector<std::string> words(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize(text)) {
    if (!text::has_word_char(t)) continue;
    out.push_back(text::ascii_apostrophes(text::to_lower(t)));
  }
  return out;
}

/// Exact stage then stem stage. Within a stage each hypothesis word prefers
/// the reference position right after its predecessor's match, otherwise the
/// earliest free one.
inline Alignment align(const std::vector<std::string>& hyp,
                       const std::vector<std::string>& ref) {
  Alignment a;
  a.hyp_to_ref.assign(hyp.size(), -1);
  std::vector<bool> ref_used(ref.size(), false);

  auto stage = [&](const std::vector<std::string>& hk, const std::vector<std::string>& rk) {
    for (std::size_t i = 0; i < hk.size(); ++i) {
      if (a.hyp_to_ref[i] >= 0) continue;
      int chosen = -1;
      if (i > 0 && a.hyp_to_ref[i - 1] >= 0) {
        auto next = static_cast<std::size_t>(a.hyp_to_ref[i - 1] + 1);
        if (next < rk.size() && !ref_used[next] && rk[next] == hk[i]) {
          chosen = static_cast<int>(next);
        }
      }
      for (std::size_t j = 0; chosen < 0 && j < rk.size(); ++j) {
        if (!ref_used[j] && rk[j] == hk[i]) chosen = static_cast<int>(j);
      }
      if (chosen >= 0) {
        a.hyp_to_ref[i] = chosen;
        ref_used[static_cast<std::size_t>(chosen)] = true;
      }
    }
  };

  stage(hyp, ref);
  std::vector<std::string> hs, rs;
  hs.reserve(hyp.size());
  rs.reserve(ref.size());
  for (const auto& w : hyp) hs.push_back(porter_stem(w));
  for (const auto& w : ref) rs.push_back(porter_stem(w));
  stage(hs, rs);

  int prev = -2;
  for (int r : a.hyp_to_ref) {
    if (r < 0) {
      prev = -2;
      continue;
    }
    ++a.matches;
    if (r != prev + 1) ++a.chunks;
    prev = r;
  }
  return a;
}

}  // namespace meteor

/// Unigram METEOR without the synonym stage: exact and Porter-stem matches,
/// recall-weighted F-mean, fragmentation penalty 0.5 (chunks/matches)^3.
inline double meteor_lite(std::string_view hyp, std::string_view ref,
                          ScoreFlags* flags = nullptr) {
  auto h = meteor::words(hyp);
  auto r = meteor::words(ref);
  if (h.empty() || r.empty()) {
    if (flags) flags->empty_input = true;
    return 0.0;
  }
  auto a = meteor::align(h, r);
  if (a.matches == 0) return 0.0;
  const double m = a.matches;
  const double precision = m / static_cast<double>(h.size());
  const double recall = m / static_cast<double>(r.size());
  const double fmean = 10.0 * precision * recall / (recall + 9.0 * precision);
  const double penalty = 0.5 * std::pow(a.chunks / m, 3.0);
  return fmean * (1.0 - penalty);
}

/// Scores produced outside the toolkit, keyed by segment id.
struct ExternalScores {
  std::string metric;
  std::map<std::string, MetricScore> scores;
  std::vector<std::string> warnings;
};

/// Parses `{"metric": name, "scores": {"<id>": value, ...}}`.
/// Duplicate ids keep the last value and add a warning.
inline ExternalScores parse_external_scores(std::string_view json_text) {
  using nlohmann::json;
  ExternalScores out;
  std::set<std::string> seen;
  std::vector<std::string> duplicates;
  bool in_scores = false;

  json::parser_callback_t cb = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key) {
      if (depth == 1) in_scores = parsed.is_string() && parsed.get<std::string>() == "scores";
      if (depth == 2 && in_scores) {
        auto id = parsed.get<std::string>();
        if (!seen.insert(id).second) duplicates.push_back(id);
      }
    }
    return true;
  };

  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end(), cb);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("metric") || !doc["metric"].is_string()) {
    throw ParseError("external scores need a string field \"metric\"");
  }
  if (!doc.contains("scores") || !doc["scores"].is_object()) {
    throw ParseError("external scores need an object field \"scores\"");
  }
  out.metric = doc["metric"].get<std::string>();
  for (const auto& [id, value] : doc["scores"].items()) {
    if (!value.is_number()) throw ParseError("score for id '" + id + "' is not a number");
    double v = value.get<double>();
    if (!(v >= 0.0 && v <= 1.0)) {
      throw RangeError("score for id '" + id + "' outside [0,1]");
    }
    out.scores[id] = MetricScore{out.metric, v, Provenance::External};
  }
  for (const auto& id : duplicates) {
    out.warnings.push_back("duplicate id '" + id + "' in " + out.metric +
                           " scores; last value kept");
  }
  return out;
}

inline ExternalScores load_external_scores(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_external_scores(buf.str());
}

}  // namespace sam
