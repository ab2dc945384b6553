#include "cafie/sentiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include "cafie/errors.hpp"
#include "cafie/vocab.hpp"

namespace cafie {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == '\t') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

SentimentLexicon parse_sentiment_lexicon(const std::string& text) {
  SentimentLexicon lex;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    const auto where = " at line " + std::to_string(lineno);
    if (fields[0] == "#negator") {
      if (fields.size() != 2)
        throw ParseError("#negator needs one word" + where);
      lex.negators.insert(fields[1]);
    } else if (fields[0] == "#booster") {
      if (fields.size() != 3)
        throw ParseError("#booster needs word and multiplier" + where);
      double mult = 0.0;
      try {
        mult = std::stod(fields[2]);
      } catch (const std::exception&) {
        throw ParseError("bad booster multiplier" + where);
      }
      if (mult < 0.5 || mult > 2.0)
        throw ValidationError("booster multiplier out of [0.5, 2.0]" + where);
      lex.boosters[fields[1]] = mult;
    } else {
      if (fields.size() != 2)
        throw ParseError("expected word<TAB>valence" + where);
      double v = 0.0;
      try {
        v = std::stod(fields[1]);
      } catch (const std::exception&) {
        throw ParseError("bad valence" + where);
      }
      if (!std::isfinite(v) || v < -4.0 || v > 4.0)
        throw ValidationError("valence out of [-4, 4]" + where);
      lex.valence[fields[0]] = v;
    }
  }
  return lex;
}

SentimentLexicon load_sentiment_lexicon(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open sentiment lexicon: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sentiment_lexicon(ss.str());
}

double sentiment_score(const std::string& text,
                       const SentimentLexicon& lexicon) {
  const std::vector<std::string> words = split_words(text);
  double s = 0.0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto it = lexicon.valence.find(words[i]);
    if (it == lexicon.valence.end()) continue;
    double v = it->second;
    for (std::size_t back = 1; back <= 2 && back <= i; ++back) {
      auto b = lexicon.boosters.find(words[i - back]);
      if (b != lexicon.boosters.end()) v *= b->second;
    }
    for (std::size_t back = 1; back <= 3 && back <= i; ++back) {
      if (lexicon.negators.count(words[i - back])) {
        v = -v;
        break;
      }
    }
    s += v;
  }
  const double compound = s / std::sqrt(s * s + 15.0);
  return std::clamp(compound, -1.0, 1.0);
}

}  // namespace cafie
