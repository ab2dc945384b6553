#include "cafie/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cafie/errors.hpp"

namespace cafie {

void SamplingConfig::validate() const {
  if (top_k < 1) throw ConfigError("top-k must be >= 1");
  if (top_p <= 0.0 || top_p > 1.0) throw ConfigError("top-p must be in (0, 1]");
}

SamplingKind parse_sampling_kind(const std::string& s) {
  if (s == "greedy") return SamplingKind::Greedy;
  if (s == "top_k") return SamplingKind::TopK;
  if (s == "nucleus") return SamplingKind::Nucleus;
  if (s == "multinomial") return SamplingKind::Multinomial;
  throw ConfigError("unknown sampling strategy: " + s);
}

PrefixMode parse_prefix_mode(const std::string& s) {
  if (s == "none") return PrefixMode::None;
  if (s == "instruction1") return PrefixMode::Instruction1;
  if (s == "instruction2") return PrefixMode::Instruction2;
  if (s == "cot") return PrefixMode::Cot;
  throw ConfigError("unknown prefix mode: " + s);
}

RefreshMode parse_refresh_mode(const std::string& s) {
  if (s == "static") return RefreshMode::Static;
  if (s == "per_step") return RefreshMode::PerStep;
  throw ConfigError("unknown counterfactual refresh mode: " + s);
}

const std::string& prefix_text(PrefixMode mode) {
  static const std::string none;
  static const std::string instruction1 =
      "The following text is unbiased and not discriminatory:";
  static const std::string instruction2 =
      "We should treat people from different socioeconomic statuses, sexual "
      "orientations, religions, races, physical appearances, nationalities, "
      "gender identities, disabilities, and ages equally. When we do not have "
      "sufficient information, we should choose the unknown option, rather "
      "than making assumptions based on our stereotypes.";
  static const std::string cot =
      "Generate some text that treats all groups of people the same and does "
      "not discriminate between them. Lets think step by step:";
  switch (mode) {
    case PrefixMode::None: return none;
    case PrefixMode::Instruction1: return instruction1;
    case PrefixMode::Instruction2: return instruction2;
    case PrefixMode::Cot: return cot;
  }
  return none;
}

namespace {

std::string with_prefix(PrefixMode mode, const std::string& text) {
  const std::string& p = prefix_text(mode);
  if (p.empty()) return text;
  if (text.empty()) return p;
  return p + " " + text;
}

TokenSequence bos_context(const std::string& text, const Vocabulary& vocab) {
  TokenSequence ids{Vocabulary::kBos};
  const TokenSequence body = tokenize(text, vocab);
  ids.insert(ids.end(), body.begin(), body.end());
  return ids;
}

struct StepContexts {
  TokenSequence source;
  std::vector<TokenSequence> counterfactual;
};

StepContexts make_contexts(const std::string& text,
                           const DecodeSession& session,
                           std::size_t* r_out = nullptr) {
  const auto spans = detect_sensitive(text, *session.lexicon);
  auto cset = build_counterfactuals(text, spans, *session.lexicon,
                                    session.params.max_counterfactuals);
  if (cset.r() > session.params.max_counterfactuals)
    cset.counterfactuals.resize(session.params.max_counterfactuals);
  const Vocabulary& vocab = session.backend->vocab();

  StepContexts ctx;
  ctx.source = bos_context(with_prefix(session.prefix_mode, text), vocab);
  for (const auto& cf : cset.counterfactuals)
    ctx.counterfactual.push_back(
        bos_context(with_prefix(session.prefix_mode, cf.text), vocab));
  if (r_out) *r_out = ctx.counterfactual.size();
  return ctx;
}

/// One calibrated step: queries all R+1 contexts, combines and blends.
NextTokenDistribution fair_step(const StepContexts& ctx,
                                const DecodeSession& session,
                                std::size_t& backend_calls,
                                StepRecord* record = nullptr) {
  const auto& params = session.params;
  NextTokenDistribution p0 = session.backend->next_token_distribution(
      ctx.source, params.temperature);
  ++backend_calls;
  if (record) {
    record->source_entropy = entropy(p0.probs);
    p0.probs.maxCoeff(&record->source_argmax);
  }
  if (ctx.counterfactual.empty()) return p0;  // pass-through

  std::vector<NextTokenDistribution> cf_ps;
  cf_ps.reserve(ctx.counterfactual.size());
  for (const auto& c : ctx.counterfactual) {
    cf_ps.push_back(
        session.backend->next_token_distribution(c, params.temperature));
    ++backend_calls;
    if (record)
      record->delta_l1.push_back(
          (p0.probs - cf_ps.back().probs).cwiseAbs().sum());
  }
  const NextTokenDistribution pc = combine(p0, cf_ps, params);
  return blend(p0, pc, params.alpha);
}

}  // namespace

TokenId sample(const NextTokenDistribution& dist, const SamplingConfig& cfg,
               std::mt19937_64& rng) {
  cfg.validate();
  const Vector& p = dist.probs;
  const Eigen::Index n = p.size();

  if (cfg.kind == SamplingKind::Greedy) {
    TokenId best = 0;
    double best_p = p[0];
    for (Eigen::Index i = 1; i < n; ++i)
      if (p[i] > best_p) {
        best_p = p[i];
        best = static_cast<TokenId>(i);
      }
    return best;
  }

  std::vector<TokenId> support(static_cast<std::size_t>(n));
  std::iota(support.begin(), support.end(), 0);

  if (cfg.kind == SamplingKind::TopK || cfg.kind == SamplingKind::Nucleus) {
    std::stable_sort(support.begin(), support.end(),
                     [&](TokenId a, TokenId b) { return p[a] > p[b]; });
    if (cfg.kind == SamplingKind::TopK) {
      support.resize(std::min<std::size_t>(support.size(),
                                           static_cast<std::size_t>(cfg.top_k)));
    } else {
      double cum = 0.0;
      std::size_t keep = 0;
      while (keep < support.size() && cum < cfg.top_p)
        cum += p[support[keep++]];
      support.resize(std::max<std::size_t>(keep, 1));
    }
  }

  double mass = 0.0;
  for (TokenId id : support) mass += p[id];
  if (mass <= 0.0) throw DegenerateDistribution("sampling support has no mass");

  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double draw = u(rng) * mass;
  double cum = 0.0;
  for (TokenId id : support) {
    cum += p[id];
    if (draw <= cum) return id;
  }
  return support.back();
}

GenerateResult generate(const std::string& prompt,
                        const DecodeSession& session) {
  if (prompt.empty()) throw ConfigError("prompt must be non-empty");
  session.params.validate();
  session.sampling.validate();
  const Vocabulary& vocab = session.backend->vocab();

  GenerateResult result;
  StepContexts ctx = make_contexts(prompt, session,
                                   &result.trace.num_counterfactuals);
  std::mt19937_64 rng(session.seed);
  TokenSequence generated;

  for (int step = 0; step < session.max_tokens; ++step) {
    if (session.counterfactual_refresh == RefreshMode::PerStep && step > 0) {
      std::string text = prompt;
      if (!generated.empty()) text += " " + detokenize(generated, vocab);
      ctx = make_contexts(text, session);
    }
    StepRecord record;
    const NextTokenDistribution fair =
        fair_step(ctx, session, result.trace.backend_call_count, &record);
    const TokenId tok = sample(fair, session.sampling, rng);
    record.chosen = tok;
    record.fair_prob_chosen = fair.probs[static_cast<Eigen::Index>(tok)];
    result.trace.steps.push_back(std::move(record));
    if (tok == Vocabulary::kEos) break;
    generated.push_back(tok);
    ctx.source.push_back(tok);
    for (auto& c : ctx.counterfactual) c.push_back(tok);
  }

  result.text = detokenize(generated, vocab);
  return result;
}

double fair_sequence_logprob(const std::string& context,
                             const std::string& continuation,
                             const DecodeSession& session,
                             std::size_t* backend_calls) {
  session.params.validate();
  const Vocabulary& vocab = session.backend->vocab();
  const TokenSequence cont_ids = tokenize(continuation, vocab);
  if (cont_ids.empty())
    throw ConfigError("continuation must tokenize to at least one token");

  StepContexts ctx = make_contexts(context, session);
  std::size_t calls = 0;
  double total = 0.0;
  TokenSequence consumed;
  for (std::size_t i = 0; i < cont_ids.size(); ++i) {
    if (session.counterfactual_refresh == RefreshMode::PerStep && i > 0) {
      std::string text = context;
      const std::string consumed_text = detokenize(consumed, vocab);
      if (!consumed_text.empty())
        text += (text.empty() ? "" : " ") + consumed_text;
      ctx = make_contexts(text, session);
    }
    const NextTokenDistribution fair = fair_step(ctx, session, calls);
    total += std::log(fair.probs[static_cast<Eigen::Index>(cont_ids[i])]);
    consumed.push_back(cont_ids[i]);
    ctx.source.push_back(cont_ids[i]);
    for (auto& c : ctx.counterfactual) c.push_back(cont_ids[i]);
  }
  if (backend_calls) *backend_calls = calls;
  return total;
}

}  // namespace cafie
