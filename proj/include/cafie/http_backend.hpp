#pragma once

#include <string>

#include "cafie/backend.hpp"

namespace cafie {

/// Remote-logits client. The server owns temperature scaling; the client
/// applies softmax to the returned logits.
///
///   POST /v1/logits  {"context_ids":[...],"temperature":1.0} -> {"logits":[...]}
///   POST /v1/info    {} -> {"vocab_size":N,"model":"name"}
///
/// Each request uses a fresh connection, so any number of calls may be in
/// flight concurrently. Timeout comes from CAFIE_HTTP_TIMEOUT_MS (ms,
/// default 30000).
class HttpBackend : public LmBackend {
 public:
  HttpBackend(std::string base_url, Vocabulary vocab);

  const Vocabulary& vocab() const override { return vocab_; }
  const std::string& model_name() const { return model_name_; }

  NextTokenDistribution next_token_distribution(
      const TokenSequence& context, double temperature) const override;

 private:
  std::string post(const std::string& path, const std::string& body) const;

  std::string base_url_;
  Vocabulary vocab_;
  std::string model_name_;
  int timeout_ms_;
};

}  // namespace cafie
