#pragma once

#include "cafie/distribution.hpp"
#include "cafie/vocab.hpp"

namespace cafie {

/// Language-model backend contract. Implementations are immutable after
/// construction and safe to query from multiple threads.
class LmBackend {
 public:
  virtual ~LmBackend() = default;

  virtual const Vocabulary& vocab() const = 0;

  /// softmax(logits / temperature) over the full vocabulary.
  virtual NextTokenDistribution next_token_distribution(
      const TokenSequence& context, double temperature) const = 0;

  /// Sum of log p(token | prefix) over the continuation. Always <= 0.
  double sequence_logprob(const TokenSequence& context,
                          const TokenSequence& continuation,
                          double temperature) const;
};

}  // namespace cafie
