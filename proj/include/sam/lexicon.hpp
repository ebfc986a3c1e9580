#pragma once

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sam/errors.hpp"
#include "sam/unicode.hpp"

namespace sam {

/// Coarse part of speech used to key the sentiment lexicon.
enum class PosTag { Noun, Verb, Adjective, Adverb };

inline constexpr std::array<PosTag, 4> kAllPosTags = {
    PosTag::Noun, PosTag::Verb, PosTag::Adjective, PosTag::Adverb};

inline char to_char(PosTag pos) {
  switch (pos) {
    case PosTag::Noun: return 'n';
    case PosTag::Verb: return 'v';
    case PosTag::Adjective: return 'a';
    case PosTag::Adverb: return 'r';
  }
  return 'n';
}

inline std::optional<PosTag> parse_pos_tag(std::string_view tag) {
  if (tag == "n") return PosTag::Noun;
  if (tag == "v") return PosTag::Verb;
  if (tag == "a") return PosTag::Adjective;
  if (tag == "r") return PosTag::Adverb;
  return std::nullopt;
}

/// Layout of a lexicon file: `lemma<key_separator>pos<field_separator>score`.
/// Lines starting with `comment` and blank lines are skipped.
struct LexiconFormat {
  char key_separator = '#';
  char field_separator = '\t';
  char comment = '#';
};

/// Immutable (lemma, POS) -> prior polarity map.
///
/// Lemmas are lowercased on insertion and on lookup. Missing (lemma, POS)
/// pairs fall back to the mean polarity of the lemma over the POS tags it
/// does have, and to 0.0 when the lemma is unknown.
class SentimentLexicon {
 public:
  struct Entry {
    std::string lemma;
    PosTag pos;
    double polarity;
  };

  SentimentLexicon() = default;

  /// Later entries override earlier ones with the same key.
  /// Throws DomainError for polarities outside [-1, 1].
  SentimentLexicon(const std::vector<Entry>& entries, std::string source_name = {})
      : source_name_(std::move(source_name)) {
    for (const auto& e : entries) {
      if (!(e.polarity >= -1.0 && e.polarity <= 1.0)) {
        throw DomainError("polarity out of [-1,1] for " + e.lemma);
      }
      insert(e.lemma, e.pos, e.polarity);
    }
  }

  /// Stored polarity for the exact key, if any.
  std::optional<double> find(std::string_view lemma, PosTag pos) const {
    auto it = entries_.find(text::to_lower(lemma));
    if (it == entries_.end()) return std::nullopt;
    return it->second[index(pos)];
  }

  double lookup(std::string_view lemma, PosTag pos) const {
    auto it = entries_.find(text::to_lower(lemma));
    if (it == entries_.end()) return 0.0;
    const auto& slots = it->second;
    if (slots[index(pos)]) return *slots[index(pos)];
    double sum = 0.0;
    int count = 0;
    for (const auto& s : slots) {
      if (s) {
        sum += *s;
        ++count;
      }
    }
    return count ? sum / count : 0.0;
  }

  std::size_t entry_count() const { return entry_count_; }
  const std::string& source_name() const { return source_name_; }

 private:
  friend SentimentLexicon load_lexicon(const std::string&, const LexiconFormat&);

  static std::size_t index(PosTag pos) { return static_cast<std::size_t>(pos); }

  void insert(std::string_view lemma, PosTag pos, double polarity) {
    auto& slot = entries_[text::to_lower(lemma)][index(pos)];
    if (!slot) ++entry_count_;
    slot = polarity;
  }

  std::map<std::string, std::array<std::optional<double>, 4>, std::less<>> entries_;
  std::string source_name_;
  std::size_t entry_count_ = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace detail

/// Reads a SentiWords-style lexicon. Duplicate keys resolve to the last line.
inline SentimentLexicon load_lexicon(const std::string& path,
                                     const LexiconFormat& format = {}) {
  std::ifstream in(path);
  if (!in) throw IoError(path);

  SentimentLexicon lex;
  lex.source_name_ = path;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (!view.empty() && view.back() == '\r') view.remove_suffix(1);
    if (detail::trim(view).empty() || view.front() == format.comment) continue;

    auto tab = view.find(format.field_separator);
    if (tab == std::string_view::npos) {
      throw ParseError("expected lemma#pos<TAB>score", line_no);
    }
    std::string_view key = view.substr(0, tab);
    auto hash = key.rfind(format.key_separator);
    if (hash == std::string_view::npos || hash == 0) {
      throw ParseError("key must be lemma#pos", line_no);
    }
    auto pos = parse_pos_tag(key.substr(hash + 1));
    if (!pos) {
      throw ParseError("unknown POS tag '" + std::string(key.substr(hash + 1)) + "'",
                       line_no);
    }
    auto score = detail::parse_double(view.substr(tab + 1));
    if (!score) throw ParseError("invalid score", line_no);
    if (!(*score >= -1.0 && *score <= 1.0)) {
      throw RangeError("score outside [-1,1]", line_no);
    }
    lex.insert(text::nfc(key.substr(0, hash)), *pos, *score);
  }
  if (in.bad()) throw IoError(path);
  return lex;
}

}  // namespace sam
