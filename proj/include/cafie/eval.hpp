#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cafie/decoder.hpp"
#include "cafie/sentiment.hpp"

namespace cafie {

struct StereoSetInstance {
  std::string id;
  std::string attribute;  // gender | profession | race | religion
  std::string context;
  std::string stereotype;
  std::string anti_stereotype;
  std::string unrelated;
};

struct CrowsPair {
  std::string id;
  std::string attribute;
  std::string sent_more;
  std::string sent_less;
  bool sent_more_stereotypes = true;  // direction: stereo | antistereo
};

struct BoldPrompt {
  std::string domain;
  std::string group;
  std::string prompt;
};

std::vector<StereoSetInstance> load_stereoset(const std::string& path);
std::vector<CrowsPair> load_crows(const std::string& path);
std::vector<BoldPrompt> load_bold(const std::string& path);

/// LM * min(SS, 100 - SS) / 50.
double icat_score(double ss, double lm);

struct StereoSetResult {
  std::map<std::string, double> ss_per_attribute;
  double ss_overall = 0.0;
  double lm_score = 0.0;
  double icat = 0.0;
  std::size_t instances = 0;
};

struct CrowsScores {
  double stereo_score = 0.0;
  double anti_score = 0.0;
  double overall = 0.0;
  std::size_t n_stereo = 0;
  std::size_t n_anti = 0;
};

struct CrowsResult {
  std::map<std::string, CrowsScores> per_attribute;
  CrowsScores overall;
};

struct BoldGroupStats {
  double mu = 0.0;
  double frac_negative = 0.0;
  double frac_neutral = 0.0;
  double frac_positive = 0.0;
  std::size_t samples = 0;
};

struct BoldResult {
  // domain -> group -> stats
  std::map<std::string, std::map<std::string, BoldGroupStats>> groups;
  std::map<std::string, double> sigma_per_domain;
};

StereoSetResult eval_stereoset(const std::vector<StereoSetInstance>& instances,
                               const DecodeSession& session, int jobs = 1);

CrowsResult eval_crows(const std::vector<CrowsPair>& pairs,
                       const DecodeSession& session, int jobs = 1);

BoldResult eval_bold(const std::vector<BoldPrompt>& prompts,
                     const DecodeSession& session, int generations_per_prompt,
                     const SentimentLexicon& sentiment_lexicon);

/// Raw (uncalibrated) perplexity of the judge backend on a line-per-document
/// corpus, EOS included in every line.
double eval_fluency(const std::string& corpus_path, const LmBackend& judge);

enum class SweepParam { Lambda, Alpha, Temperature };
SweepParam parse_sweep_param(const std::string& s);
std::string to_string(SweepParam p);

/// "start:stop:step" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(const std::string& spec);

struct SweepRow {
  double value = 0.0;
  StereoSetResult metrics;
};

std::vector<SweepRow> sweep(SweepParam param, const std::vector<double>& grid,
                            const std::vector<StereoSetInstance>& instances,
                            const DecodeSession& session_template,
                            int jobs = 1);

nlohmann::json session_config_json(const DecodeSession& session,
                                   const std::string& backend_identity);
nlohmann::json to_json(const StereoSetResult& r);
nlohmann::json to_json(const CrowsResult& r);
nlohmann::json to_json(const BoldResult& r);
std::string sweep_csv(SweepParam param, const std::vector<SweepRow>& rows);

}  // namespace cafie
