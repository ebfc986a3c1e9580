#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "sam/errors.hpp"
#include "sam/lexicon.hpp"
#include "sam/unicode.hpp"

namespace sam {

/// One analyzed word: the unit of mismatch extraction and lexicon lookup.
struct Token {
  std::string surface;
  std::string normalized;  // lowercase, ASCII apostrophes, no edge punctuation
  std::string lemma;
  PosTag pos = PosTag::Noun;

  friend bool operator==(const Token&, const Token&) = default;
};

namespace text {

struct CodePoint {
  UChar32 value;
  std::size_t begin;
  std::size_t end;
};

inline std::vector<CodePoint> decode(std::string_view s) {
  std::vector<CodePoint> out;
  const auto* bytes = reinterpret_cast<const uint8_t*>(s.data());
  const auto length = static_cast<int32_t>(s.size());
  int32_t i = 0;
  while (i < length) {
    int32_t start = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    out.push_back({c, static_cast<std::size_t>(start), static_cast<std::size_t>(i)});
  }
  return out;
}

inline bool is_word_char(UChar32 c) { return c >= 0 && u_isalnum(c); }

inline bool is_apostrophe(UChar32 c) { return c == 0x27 || c == 0x2019; }

inline bool is_space(UChar32 c) { return c >= 0 && u_isUWhiteSpace(c); }

/// Replaces U+2019 with an ASCII apostrophe.
inline std::string ascii_apostrophes(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.compare(i, 3, "\xE2\x80\x99") == 0) {
      out.push_back('\'');
      i += 2;
    } else {
      out.push_back(s[i]);
    }
  }
  return out;
}

inline bool has_word_char(std::string_view s) {
  for (const auto& cp : decode(s)) {
    if (is_word_char(cp.value)) return true;
  }
  return false;
}

// Splits a punctuation-free word at a clitic boundary:
// "don't" -> "do" "n't", "I'm" -> "I" "'m". Other apostrophes stay inside.
inline void split_clitics(std::string_view word, std::vector<std::string>& out) {
  auto cps = decode(word);
  const std::size_t n = cps.size();
  auto lower_ascii = [](UChar32 c) {
    return (c >= 'A' && c <= 'Z') ? c - 'A' + 'a' : c;
  };
  // n't
  if (n > 3 && lower_ascii(cps[n - 3].value) == 'n' && is_apostrophe(cps[n - 2].value) &&
      lower_ascii(cps[n - 1].value) == 't') {
    out.emplace_back(word.substr(0, cps[n - 3].begin));
    out.emplace_back(word.substr(cps[n - 3].begin));
    return;
  }
  static const std::array<std::string_view, 6> kClitics = {"s", "m", "d", "re", "ll", "ve"};
  for (auto clitic : kClitics) {
    const std::size_t k = clitic.size();
    if (n <= k + 1 || !is_apostrophe(cps[n - k - 1].value)) continue;
    bool match = true;
    for (std::size_t j = 0; j < k; ++j) {
      if (lower_ascii(cps[n - k + j].value) != clitic[j]) match = false;
    }
    if (match) {
      out.emplace_back(word.substr(0, cps[n - k - 1].begin));
      out.emplace_back(word.substr(cps[n - k - 1].begin));
      return;
    }
  }
  out.emplace_back(word);
}

}  // namespace text

/// Splits NFC-normalized text into surface tokens.
///
/// Whitespace separates chunks; leading and trailing non-alphanumeric
/// characters become one token each; clitics split off ("don't" -> "do",
/// "n't"). Concatenating the result reproduces the non-whitespace
/// characters of nfc(text).
inline std::vector<std::string> tokenize(std::string_view input) {
  const std::string normalized = text::nfc(input);
  std::string_view s = normalized;
  auto cps = text::decode(s);
  std::vector<std::string> out;

  std::size_t i = 0;
  while (i < cps.size()) {
    if (text::is_space(cps[i].value)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cps.size() && !text::is_space(cps[j].value)) ++j;

    std::size_t core_begin = i;
    while (core_begin < j && !text::is_word_char(cps[core_begin].value)) ++core_begin;
    std::size_t core_end = j;
    while (core_end > core_begin && !text::is_word_char(cps[core_end - 1].value)) --core_end;

    for (std::size_t k = i; k < core_begin; ++k) {
      out.emplace_back(s.substr(cps[k].begin, cps[k].end - cps[k].begin));
    }
    if (core_begin < core_end) {
      std::size_t b = cps[core_begin].begin;
      std::size_t e = cps[core_end - 1].end;
      text::split_clitics(s.substr(b, e - b), out);
    }
    for (std::size_t k = std::max(core_end, core_begin); k < j; ++k) {
      out.emplace_back(s.substr(cps[k].begin, cps[k].end - cps[k].begin));
    }
    i = j;
  }
  return out;
}

/// Irregular form table: form -> (lemma, POS).
class LemmaExceptions {
 public:
  struct Analysis {
    std::string lemma;
    PosTag pos;
  };

  LemmaExceptions() = default;

  /// Parses `form<TAB>lemma<TAB>pos` lines; `#` comments and blank lines skipped.
  static LemmaExceptions parse(std::istream& in) {
    LemmaExceptions table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view view = detail::trim(line);
      if (view.empty() || view.front() == '#') continue;
      auto t1 = view.find('\t');
      auto t2 = t1 == std::string_view::npos ? t1 : view.find('\t', t1 + 1);
      if (t2 == std::string_view::npos) {
        throw ParseError("expected form<TAB>lemma<TAB>pos", line_no);
      }
      auto pos = parse_pos_tag(detail::trim(view.substr(t2 + 1)));
      if (!pos) throw ParseError("unknown POS tag", line_no);
      std::string form = text::to_lower(view.substr(0, t1));
      std::string lemma = text::to_lower(view.substr(t1 + 1, t2 - t1 - 1));
      if (form.empty() || lemma.empty()) throw ParseError("empty field", line_no);
      table.entries_[form] = Analysis{lemma, *pos};
    }
    return table;
  }

  static LemmaExceptions load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path);
    return parse(in);
  }

  /// The table shipped as fixtures/lemma_exceptions.tsv.
  static const LemmaExceptions& builtin();

  const Analysis* find(const std::string& form) const {
    auto it = entries_.find(form);
    return it == entries_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return entries_.size(); }

  bool operator==(const LemmaExceptions& other) const {
    if (entries_.size() != other.entries_.size()) return false;
    for (const auto& [form, a] : entries_) {
      auto* b = other.find(form);
      if (!b || b->lemma != a.lemma || b->pos != a.pos) return false;
    }
    return true;
  }

 private:
  std::unordered_map<std::string, Analysis> entries_;
};

namespace detail {

inline constexpr std::string_view kBuiltinExceptions = R"(# Irregular forms: form<TAB>lemma<TAB>pos
am	be	v
is	be	v
are	be	v
was	be	v
were	be	v
been	be	v
being	be	v
has	have	v
had	have	v
having	have	v
does	do	v
did	do	v
done	do	v
went	go	v
gone	go	v
made	make	v
said	say	v
got	get	v
gotten	get	v
took	take	v
taken	take	v
came	come	v
saw	see	v
seen	see	v
knew	know	v
known	know	v
thought	think	v
felt	feel	v
left	leave	v
kept	keep	v
found	find	v
gave	give	v
given	give	v
told	tell	v
became	become	v
brought	bring	v
began	begin	v
begun	begin	v
forgave	forgive	v
forgiven	forgive	v
blew	blow	v
blown	blow	v
ate	eat	v
eaten	eat	v
wrote	write	v
written	write	v
spoke	speak	v
spoken	speak	v
broke	break	v
broken	break	v
lost	lose	v
won	win	v
hurt	hurt	v
men	man	n
women	woman	n
children	child	n
people	person	n
feet	foot	n
teeth	tooth	n
mice	mouse	n
lives	life	n
wives	wife	n
knives	knife	n
better	good	a
best	good	a
worse	bad	a
worst	bad	a
happier	happy	a
happiest	happy	a
sadder	sad	a
saddest	sad	a
news	news	n
ca	can	v
wo	will	v
sha	shall	v
)";

}  // namespace detail

inline const LemmaExceptions& LemmaExceptions::builtin() {
  static const LemmaExceptions table = [] {
    std::istringstream in{std::string(detail::kBuiltinExceptions)};
    return parse(in);
  }();
  return table;
}

/// Rule-based POS tagger and lemmatizer.
///
/// Tagging order: closed-class lists, exception table, known adjectives,
/// verb context (after a subject pronoun, modal, "to" or a negator), suffix
/// heuristics, noun by default. Lemmas come from the exception table or from
/// POS-specific suffix stripping.
class Analyzer {
 public:
  explicit Analyzer(const LemmaExceptions& exceptions = LemmaExceptions::builtin())
      : exceptions_(&exceptions) {}

  std::vector<Token> analyze(const std::vector<std::string>& surfaces) const {
    std::vector<Token> out;
    out.reserve(surfaces.size());
    const Token* prev = nullptr;
    for (const auto& surface : surfaces) {
      std::string norm = normalize(surface);
      if (norm.empty() || !text::has_word_char(norm)) continue;
      Token tok;
      tok.surface = surface;
      tok.normalized = norm;
      tag_and_lemmatize(tok, prev);
      out.push_back(std::move(tok));
      prev = &out.back();
    }
    return out;
  }

  /// Lowercase, ASCII apostrophes, edge punctuation other than apostrophes removed.
  static std::string normalize(std::string_view surface) {
    std::string s = text::ascii_apostrophes(text::to_lower(text::nfc(surface)));
    auto cps = text::decode(s);
    std::size_t b = 0;
    std::size_t e = cps.size();
    auto strip = [](UChar32 c) { return !text::is_word_char(c) && c != '\''; };
    while (b < e && strip(cps[b].value)) ++b;
    while (e > b && strip(cps[e - 1].value)) --e;
    if (b == e) return {};
    return s.substr(cps[b].begin, cps[e - 1].end - cps[b].begin);
  }

 private:
  static bool in(const std::unordered_set<std::string_view>& set, std::string_view w) {
    return set.count(w) != 0;
  }

  static const std::unordered_set<std::string_view>& negators() {
    static const std::unordered_set<std::string_view> s = {"not", "n't", "never", "no"};
    return s;
  }
  static const std::unordered_set<std::string_view>& adverbs() {
    static const std::unordered_set<std::string_view> s = {
        "very", "so", "too", "also", "just", "only", "really", "quite", "always",
        "often", "sometimes", "here", "there", "now", "then", "still", "even",
        "again", "ever", "already", "soon", "yet", "almost", "well", "away",
        "together", "however", "perhaps", "maybe", "rather", "instead", "why",
        "how", "when", "where"};
    return s;
  }
  // Pronouns and determiners; keyed as #a following the lexicon's convention
  // for words like "him".
  static const std::unordered_set<std::string_view>& pronouns() {
    static const std::unordered_set<std::string_view> s = {
        "i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself",
        "he", "him", "his", "himself", "she", "her", "hers", "herself", "it",
        "its", "itself", "we", "us", "our", "ours", "ourselves", "they", "them",
        "their", "theirs", "themselves", "the", "a", "an", "this", "that",
        "these", "those", "some", "any", "all", "every", "each", "what", "which",
        "who", "whom", "whose"};
    return s;
  }
  static const std::unordered_set<std::string_view>& subjects() {
    static const std::unordered_set<std::string_view> s = {"i", "you", "we", "they", "he",
                                                           "she"};
    return s;
  }
  static const std::unordered_set<std::string_view>& function_words() {
    static const std::unordered_set<std::string_view> s = {
        "of", "in", "on", "at", "by", "for", "with", "about", "against", "between",
        "into", "through", "during", "before", "after", "above", "below", "to",
        "from", "up", "down", "out", "off", "over", "under", "and", "but", "or",
        "nor", "if", "because", "as", "until", "while", "than", "though",
        "although", "since", "unless", "whether"};
    return s;
  }
  static const std::unordered_set<std::string_view>& modals() {
    static const std::unordered_set<std::string_view> s = {
        "can", "could", "will", "would", "shall", "should", "may", "might", "must",
        "do", "did", "does"};
    return s;
  }
  static const std::unordered_set<std::string_view>& adjectives() {
    static const std::unordered_set<std::string_view> s = {
        "good", "bad", "great", "happy", "sad", "terrible", "awful", "nice",
        "beautiful", "ugly", "excellent", "wonderful", "horrible", "brilliant",
        "dreadful", "pleasant", "unpleasant", "kind", "cruel", "glad", "miserable",
        "lovely", "nasty", "calm", "angry", "cheerful", "poor", "rich", "big",
        "small", "large", "little", "old", "new", "young", "long", "short", "high",
        "low", "hot", "cold", "warm", "cool", "fine", "sure", "true", "false",
        "easy", "hard", "strong", "weak", "safe", "dangerous", "fair", "proud",
        "lazy", "quick", "slow", "busy", "quiet", "early", "late", "sunny", "funny",
        "crazy", "sick", "tired", "bright", "dark", "clean", "dirty", "free", "full",
        "empty", "real", "worth", "interesting", "amazing", "boring", "best",
        "worst", "evil", "wrong", "right", "mean", "sweet", "bitter", "harsh",
        "gentle", "brave", "clever", "stupid", "smart", "wise", "silly", "wild"};
    return s;
  }

  static bool ends_with(std::string_view w, std::string_view suffix) {
    return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
  }
  static bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
  }
  static int vowel_groups(std::string_view w) {
    int groups = 0;
    bool prev = false;
    for (char c : w) {
      bool v = is_vowel(c) || (c == 'y' && prev == false && groups > 0);
      if (v && !prev) ++groups;
      prev = v;
    }
    return groups;
  }
  static bool has_vowel(std::string_view w) {
    return std::any_of(w.begin(), w.end(), [](char c) { return is_vowel(c) || c == 'y'; });
  }

  static std::string noun_lemma(const std::string& w) {
    if (w.size() > 4 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return w;
    if (w.size() > 4 && (ends_with(w, "sses") || ends_with(w, "xes") ||
                         ends_with(w, "ches") || ends_with(w, "shes") ||
                         ends_with(w, "zes"))) {
      return w.substr(0, w.size() - 2);
    }
    if (w.size() > 3 && ends_with(w, "s")) return w.substr(0, w.size() - 1);
    return w;
  }

  // Undoubles a final consonant or restores a silent e after -ing/-ed removal.
  static std::string repair_stem(std::string stem) {
    const std::size_t n = stem.size();
    if (n >= 3 && stem[n - 1] == stem[n - 2] && !is_vowel(stem[n - 1]) &&
        stem[n - 1] != 'l' && stem[n - 1] != 's' && stem[n - 1] != 'z') {
      stem.pop_back();
      return stem;
    }
    if (n >= 2 && !is_vowel(stem[n - 1]) && stem[n - 1] != 'w' && stem[n - 1] != 'x' &&
        stem[n - 1] != 'y' && is_vowel(stem[n - 2]) && vowel_groups(stem) == 1 &&
        (n == 2 || !is_vowel(stem[n - 3]))) {
      stem.push_back('e');
      return stem;
    }
    if (n >= 2 && (ends_with(stem, "v") || ends_with(stem, "iz") || ends_with(stem, "at") ||
                   ends_with(stem, "uc") || ends_with(stem, "rg"))) {
      stem.push_back('e');
    }
    return stem;
  }

  static std::string verb_lemma(const std::string& w) {
    if (w.size() > 4 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
    if (w.size() > 4 && ends_with(w, "ied")) return w.substr(0, w.size() - 3) + "y";
    if (w.size() > 4 && ends_with(w, "ing")) {
      std::string stem = w.substr(0, w.size() - 3);
      if (stem.size() >= 2 && has_vowel(stem)) return repair_stem(stem);
      return w;
    }
    if (w.size() > 3 && ends_with(w, "ed")) {
      std::string stem = w.substr(0, w.size() - 2);
      if (stem.size() >= 3 && has_vowel(stem)) return repair_stem(stem);
      return w;
    }
    if (w.size() > 4 && (ends_with(w, "sses") || ends_with(w, "xes") ||
                         ends_with(w, "ches") || ends_with(w, "shes") ||
                         ends_with(w, "zes"))) {
      return w.substr(0, w.size() - 2);
    }
    if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss") && !ends_with(w, "us")) {
      return w.substr(0, w.size() - 1);
    }
    return w;
  }

  static std::optional<std::string> adjective_base(const std::string& w) {
    for (std::string_view suffix : {"est", "er"}) {
      if (w.size() <= suffix.size() + 2 || !ends_with(w, suffix)) continue;
      std::string stem = w.substr(0, w.size() - suffix.size());
      std::vector<std::string> candidates = {stem, stem + "e"};
      if (stem.back() == 'i') candidates.push_back(stem.substr(0, stem.size() - 1) + "y");
      if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
        candidates.push_back(stem.substr(0, stem.size() - 1));
      }
      for (const auto& c : candidates) {
        if (in(adjectives(), c)) return c;
      }
    }
    return std::nullopt;
  }

  void tag_and_lemmatize(Token& tok, const Token* prev) const {
    const std::string& w = tok.normalized;
    auto set = [&](std::string lemma, PosTag pos) {
      tok.lemma = std::move(lemma);
      tok.pos = pos;
    };

    if (in(negators(), w)) return set(w == "n't" ? "not" : w, PosTag::Adverb);
    if (w == "'m" || w == "'re") return set("be", PosTag::Verb);
    if (w == "'ve") return set("have", PosTag::Verb);
    if (w == "'ll") return set("will", PosTag::Verb);
    if (w == "'d") return set("would", PosTag::Verb);
    if (w == "'s") return set(w, PosTag::Verb);
    if (in(adverbs(), w)) return set(w, PosTag::Adverb);
    if (in(pronouns(), w)) return set(w, PosTag::Adjective);
    if (in(function_words(), w)) return set(w, PosTag::Adverb);
    if (in(modals(), w)) return set(w, PosTag::Verb);
    if (const auto* ex = exceptions_->find(w)) return set(ex->lemma, ex->pos);
    if (in(adjectives(), w)) return set(w, PosTag::Adjective);
    if (auto base = adjective_base(w)) return set(*base, PosTag::Adjective);

    const bool verb_context =
        prev && (in(subjects(), prev->normalized) || in(modals(), prev->normalized) ||
                 prev->normalized == "to" || prev->lemma == "not" ||
                 prev->lemma == "will" || prev->lemma == "would");
    if (verb_context) return set(verb_lemma(w), PosTag::Verb);

    if (w.size() > 4 && ends_with(w, "ly")) return set(w, PosTag::Adverb);
    if ((w.size() > 4 && ends_with(w, "ing")) || (w.size() > 3 && ends_with(w, "ed"))) {
      return set(verb_lemma(w), PosTag::Verb);
    }
    for (std::string_view suffix : {"ness", "ment", "tion", "sion", "ity", "ism", "ance",
                                    "ence", "ship", "hood"}) {
      if (w.size() > suffix.size() + 1 && ends_with(w, suffix)) return set(w, PosTag::Noun);
    }
    for (std::string_view suffix : {"ful", "ous", "ive", "able", "ible", "less", "ish",
                                    "ic", "ical"}) {
      if (w.size() > suffix.size() + 2 && ends_with(w, suffix)) {
        return set(w, PosTag::Adjective);
      }
    }
    set(noun_lemma(w), PosTag::Noun);
  }

  const LemmaExceptions* exceptions_;
};

/// Analyzes surfaces with the built-in exception table.
inline std::vector<Token> analyze(const std::vector<std::string>& surfaces) {
  static const Analyzer analyzer;
  return analyzer.analyze(surfaces);
}

}  // namespace sam
