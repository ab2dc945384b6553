#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cafie/backend.hpp"
#include "cafie/calibrator.hpp"
#include "cafie/lexicon.hpp"

namespace cafie {

enum class SamplingKind { Greedy, TopK, Nucleus, Multinomial };

struct SamplingConfig {
  SamplingKind kind = SamplingKind::Greedy;
  int top_k = 50;        // top_k strategy
  double top_p = 0.9;    // nucleus strategy

  void validate() const;
};

enum class PrefixMode { None, Instruction1, Instruction2, Cot };
enum class RefreshMode { Static, PerStep };

SamplingKind parse_sampling_kind(const std::string& s);
PrefixMode parse_prefix_mode(const std::string& s);
RefreshMode parse_refresh_mode(const std::string& s);

/// Verbatim prefix prompt for a mode; empty string for None.
const std::string& prefix_text(PrefixMode mode);

struct DecodeSession {
  const LmBackend* backend = nullptr;
  const AttributeLexicon* lexicon = nullptr;
  CalibrationParams params;
  SamplingConfig sampling;
  std::uint64_t seed = 0;
  int max_tokens = 20;
  PrefixMode prefix_mode = PrefixMode::None;
  RefreshMode counterfactual_refresh = RefreshMode::Static;
};

struct StepRecord {
  double source_entropy = 0.0;
  TokenId source_argmax = 0;
  std::vector<double> delta_l1;  // one per counterfactual
  TokenId chosen = 0;
  double fair_prob_chosen = 0.0;
};

struct DecodeTrace {
  std::vector<StepRecord> steps;
  std::size_t backend_call_count = 0;
  std::size_t num_counterfactuals = 0;  // R detected on the prompt
};

struct GenerateResult {
  std::string text;  // generated continuation only
  DecodeTrace trace;
};

GenerateResult generate(const std::string& prompt,
                        const DecodeSession& session);

/// Sum of log P_FAIR(token | prefix) over the continuation; with no sensitive
/// spans this equals the raw backend sequence_logprob exactly.
double fair_sequence_logprob(const std::string& context,
                             const std::string& continuation,
                             const DecodeSession& session,
                             std::size_t* backend_calls = nullptr);

TokenId sample(const NextTokenDistribution& dist, const SamplingConfig& cfg,
               std::mt19937_64& rng);

}  // namespace cafie
