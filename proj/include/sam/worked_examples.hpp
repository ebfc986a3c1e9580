#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "sam/lexicon.hpp"

namespace sam {

/// Published SAM worked examples: a dropped negation and an antonym swap.
struct WorkedExample {
  std::string_view label;
  std::string_view hypothesis;
  std::string_view reference;
  double base_score;
  double expected_penalty;
  double expected_adjusted;
};

inline constexpr std::array<WorkedExample, 2> kWorkedExamples = {{
    {"negation",
     "If he had blown himself up in your country, God would forgive him",
     "If he had blown himself up in your country, God would not forgive", 0.92, 0.5, 0.46},
    {"antonym",
     "What is this amount of anger, I don’t understand!",
     "What is this amount of happiness, I don’t understand!", 0.85, 0.7625, 0.20},
}};

/// The four prior polarities the worked examples depend on.
inline SentimentLexicon worked_example_lexicon() {
  return SentimentLexicon({{"anger", PosTag::Noun, -0.669},
                           {"happiness", PosTag::Noun, 0.856},
                           {"not", PosTag::Adverb, -1.0},
                           {"him", PosTag::Adjective, 0.0}},
                          "builtin:worked-examples");
}

}  // namespace sam
