#include "cafie/http_backend.hpp"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "cafie/errors.hpp"

namespace cafie {

HttpBackend::HttpBackend(std::string base_url, Vocabulary vocab)
    : base_url_(std::move(base_url)), vocab_(std::move(vocab)) {
  timeout_ms_ = 30000;
  if (const char* env = std::getenv("CAFIE_HTTP_TIMEOUT_MS")) {
    try {
      timeout_ms_ = std::stoi(env);
    } catch (const std::exception&) {
      throw ConfigError("CAFIE_HTTP_TIMEOUT_MS is not an integer");
    }
  }

  const std::string body = post("/v1/info", "{}");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
    model_name_ = j.value("model", "");
    const auto remote_size = j.at("vocab_size").get<std::size_t>();
    if (remote_size != vocab_.size())
      throw VocabMismatch("remote vocab_size " + std::to_string(remote_size) +
                          " != local " + std::to_string(vocab_.size()));
  } catch (const nlohmann::json::exception& e) {
    throw BackendUnavailable(std::string("bad /v1/info response: ") + e.what());
  }
}

std::string HttpBackend::post(const std::string& path,
                              const std::string& body) const {
  httplib::Client client(base_url_);
  client.set_connection_timeout(0, timeout_ms_ * 1000);
  client.set_read_timeout(timeout_ms_ / 1000, (timeout_ms_ % 1000) * 1000);
  auto res = client.Post(path, body, "application/json");
  if (!res)
    throw BackendUnavailable("no response from " + base_url_ + path + ": " +
                             httplib::to_string(res.error()));
  if (res->status != 200)
    throw BackendUnavailable(base_url_ + path + " returned HTTP " +
                             std::to_string(res->status));
  return res->body;
}

NextTokenDistribution HttpBackend::next_token_distribution(
    const TokenSequence& context, double temperature) const {
  if (temperature <= 0.0) throw ConfigError("temperature must be positive");
  if (context.empty())
    throw ConfigError("context must be non-empty (BOS-prefixed)");

  nlohmann::json req;
  req["context_ids"] = context;
  req["temperature"] = temperature;
  const std::string body = post("/v1/logits", req.dump());

  Vector logits;
  try {
    const auto j = nlohmann::json::parse(body);
    const auto& arr = j.at("logits");
    logits.resize(static_cast<Eigen::Index>(arr.size()));
    for (Eigen::Index i = 0; i < logits.size(); ++i)
      logits[i] = arr[static_cast<std::size_t>(i)].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendUnavailable(std::string("bad /v1/logits response: ") +
                             e.what());
  }
  if (static_cast<std::size_t>(logits.size()) != vocab_.size())
    throw VocabMismatch("logits size " + std::to_string(logits.size()) +
                        " != vocab size " + std::to_string(vocab_.size()));
  if (!((logits.array() == logits.array()).all()))
    throw BackendUnavailable("NaN in remote logits");
  return {softmax(logits)};
}

}  // namespace cafie
