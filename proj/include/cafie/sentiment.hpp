#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>

namespace cafie {

/// Rule-based valence lexicon. File format: UTF-8 TSV with one
/// `word<TAB>valence` per line, plus optional `#negator<TAB>word` and
/// `#booster<TAB>word<TAB>multiplier` directives.
struct SentimentLexicon {
  std::unordered_map<std::string, double> valence;    // word -> [-4, 4]
  std::unordered_set<std::string> negators;
  std::unordered_map<std::string, double> boosters;   // word -> (0.5, 2.0]
};

SentimentLexicon load_sentiment_lexicon(const std::string& path);
SentimentLexicon parse_sentiment_lexicon(const std::string& text);

/// Compound score in [-1, 1]: summed valence hits (negated within a 3-word
/// window, boosted within a 2-word window), normalized by s / sqrt(s^2 + 15).
double sentiment_score(const std::string& text, const SentimentLexicon& lexicon);

}  // namespace cafie
