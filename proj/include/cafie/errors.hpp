#pragma once

#include <stdexcept>
#include <string>

namespace cafie {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SubstitutionError : std::runtime_error {
  explicit SubstitutionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyCorpus : std::runtime_error {
  explicit EmptyCorpus(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyDataset : std::runtime_error {
  explicit EmptyDataset(const std::string& msg) : std::runtime_error(msg) {}
};

struct VocabMismatch : std::runtime_error {
  explicit VocabMismatch(const std::string& msg) : std::runtime_error(msg) {}
};

struct BackendUnavailable : std::runtime_error {
  explicit BackendUnavailable(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateDistribution : std::runtime_error {
  explicit DegenerateDistribution(const std::string& msg) : std::runtime_error(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace cafie
