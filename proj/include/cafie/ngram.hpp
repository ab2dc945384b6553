#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "cafie/backend.hpp"

namespace cafie {

/// Interpolated add-k n-gram model. The order-m estimate is a Dirichlet-style
/// mix of the maximum-likelihood counts and the order-(m-1) estimate, with the
/// weight on the counts proportional to the context count:
///
///   p_m(w|h) = (c(h,w) + k*|V'| * p_{m-1}(w)) / (c(h) + k*|V'|)
///
/// where |V'| excludes BOS (never predicted). The base case is uniform over
/// V'. As k -> 0 this reduces to pure ML with back-off on unseen contexts.
class NgramModel : public LmBackend {
 public:
  static constexpr char kMagic[6] = "CAFN1";

  NgramModel(Vocabulary vocab, int order, double add_k);

  static NgramModel train(std::istream& corpus, const Vocabulary& vocab,
                          int order, double add_k);
  static NgramModel train_file(const std::string& path, const Vocabulary& vocab,
                               int order, double add_k);

  void save(const std::string& path) const;
  static NgramModel load(const std::string& path, Vocabulary vocab);

  const Vocabulary& vocab() const override { return vocab_; }
  int order() const { return order_; }
  double add_k() const { return add_k_; }

  NextTokenDistribution next_token_distribution(
      const TokenSequence& context, double temperature) const override;

 private:
  struct ContextCounts {
    std::uint64_t total = 0;
    std::map<TokenId, std::uint64_t> by_token;
  };

  void count_line(const TokenSequence& ids);
  double prob(TokenId token, const TokenSequence& context_suffix) const;

  Vocabulary vocab_;
  int order_;
  double add_k_;
  // context (length 0..order-1) -> counts; std::map keeps serialization
  // byte-deterministic
  std::map<TokenSequence, ContextCounts> counts_;
};

}  // namespace cafie
