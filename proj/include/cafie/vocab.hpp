#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace cafie {

using TokenId = std::uint32_t;
using TokenSequence = std::vector<TokenId>;

/// Word-level vocabulary with reserved BOS(0), EOS(1), UNK(2) ids.
class Vocabulary {
 public:
  static constexpr TokenId kBos = 0;
  static constexpr TokenId kEos = 1;
  static constexpr TokenId kUnk = 2;

  Vocabulary();
  explicit Vocabulary(std::vector<std::string> tokens);

  std::size_t size() const { return tokens_.size(); }
  const std::string& token(TokenId id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }

  /// UNK for unknown words.
  TokenId id(const std::string& word) const;
  bool contains(const std::string& word) const;

  void save(const std::string& path) const;
  static Vocabulary load(const std::string& path);

  /// FNV-1a over the token list; ties a persisted model to its vocabulary.
  std::uint64_t hash() const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> index_;
};

/// Lowercased words with frequency >= min_count, ordered by
/// (descending frequency, lexicographic), after the reserved ids.
Vocabulary build_vocab(std::istream& corpus, std::size_t min_count);
Vocabulary build_vocab_file(const std::string& path, std::size_t min_count);

/// Lowercase, punctuation-separated word split. No BOS/EOS.
std::vector<std::string> split_words(const std::string& text);

TokenSequence tokenize(const std::string& text, const Vocabulary& vocab);
std::string detokenize(const TokenSequence& ids, const Vocabulary& vocab);

}  // namespace cafie
