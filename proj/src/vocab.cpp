#include "cafie/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "cafie/errors.hpp"

namespace cafie {

namespace {
const char* kReserved[] = {"<bos>", "<eos>", "<unk>"};

bool is_word_char(unsigned char c) {
  return std::isalnum(c) || c == '\'' || c >= 0x80;  // keep UTF-8 bytes
}
}  // namespace

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens) {
  tokens_.assign(std::begin(kReserved), std::end(kReserved));
  for (auto& t : tokens) tokens_.push_back(std::move(t));
  for (TokenId i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], i).second)
      throw ValidationError("duplicate vocabulary token: " + tokens_[i]);
  }
}

TokenId Vocabulary::id(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(const std::string& word) const {
  return index_.count(word) != 0;
}

void Vocabulary::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open vocabulary file for write: " + path);
  for (const auto& t : tokens_) out << t << '\n';
}

Vocabulary Vocabulary::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open vocabulary file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  if (lines.size() < 3) throw ParseError("vocabulary file too short: " + path);
  for (int i = 0; i < 3; ++i)
    if (lines[i] != kReserved[i])
      throw ParseError("vocabulary file missing reserved token at line " +
                       std::to_string(i + 1));
  return Vocabulary(std::vector<std::string>(lines.begin() + 3, lines.end()));
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& t : tokens_) {
    for (unsigned char c : t) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= '\n';
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<std::string> split_words(const std::string& text) {
  std::vector<std::string> words;
  std::string cur;
  for (unsigned char c : text) {
    if (is_word_char(c)) {
      cur.push_back(static_cast<char>(std::tolower(c)));
    } else if (!cur.empty()) {
      words.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  return words;
}

Vocabulary build_vocab(std::istream& corpus, std::size_t min_count) {
  std::map<std::string, std::size_t> freq;
  std::string line;
  bool any = false;
  while (std::getline(corpus, line)) {
    for (auto& w : split_words(line)) {
      ++freq[w];
      any = true;
    }
  }
  if (!any) throw EmptyCorpus("corpus contains no words");

  std::vector<std::pair<std::string, std::size_t>> kept;
  for (auto& [w, c] : freq)
    if (c >= min_count) kept.emplace_back(w, c);
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> tokens;
  tokens.reserve(kept.size());
  for (auto& [w, c] : kept) tokens.push_back(w);
  return Vocabulary(std::move(tokens));
}

Vocabulary build_vocab_file(const std::string& path, std::size_t min_count) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open corpus file: " + path);
  return build_vocab(in, min_count);
}

TokenSequence tokenize(const std::string& text, const Vocabulary& vocab) {
  TokenSequence ids;
  for (const auto& w : split_words(text)) ids.push_back(vocab.id(w));
  return ids;
}

std::string detokenize(const TokenSequence& ids, const Vocabulary& vocab) {
  std::string out;
  for (TokenId id : ids) {
    if (!out.empty()) out.push_back(' ');
    out += vocab.token(id);
  }
  return out;
}

}  // namespace cafie
