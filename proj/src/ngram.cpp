#include "cafie/ngram.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cafie/errors.hpp"

namespace cafie {

double LmBackend::sequence_logprob(const TokenSequence& context,
                                   const TokenSequence& continuation,
                                   double temperature) const {
  TokenSequence prefix = context;
  double total = 0.0;
  for (TokenId tok : continuation) {
    const NextTokenDistribution d = next_token_distribution(prefix, temperature);
    total += std::log(d.probs[static_cast<Eigen::Index>(tok)]);
    prefix.push_back(tok);
  }
  return total;
}

NgramModel::NgramModel(Vocabulary vocab, int order, double add_k)
    : vocab_(std::move(vocab)), order_(order), add_k_(add_k) {
  if (order_ < 2 || order_ > 5)
    throw ConfigError("n-gram order must be in [2, 5], got " +
                      std::to_string(order_));
  if (add_k_ <= 0.0) throw ConfigError("add-k smoothing requires k > 0");
}

void NgramModel::count_line(const TokenSequence& ids) {
  TokenSequence seq(static_cast<std::size_t>(order_ - 1), Vocabulary::kBos);
  seq.insert(seq.end(), ids.begin(), ids.end());
  seq.push_back(Vocabulary::kEos);
  for (std::size_t t = static_cast<std::size_t>(order_ - 1); t < seq.size();
       ++t) {
    for (int len = 0; len < order_; ++len) {
      TokenSequence ctx(seq.begin() + static_cast<std::ptrdiff_t>(t - len),
                        seq.begin() + static_cast<std::ptrdiff_t>(t));
      auto& c = counts_[ctx];
      ++c.total;
      ++c.by_token[seq[t]];
    }
  }
}

NgramModel NgramModel::train(std::istream& corpus, const Vocabulary& vocab,
                             int order, double add_k) {
  NgramModel model(vocab, order, add_k);
  std::string line;
  bool any = false;
  while (std::getline(corpus, line)) {
    const TokenSequence ids = tokenize(line, vocab);
    if (ids.empty()) continue;  // blank or whitespace-only line
    model.count_line(ids);
    any = true;
  }
  if (!any) throw EmptyCorpus("n-gram training corpus is empty");
  return model;
}

NgramModel NgramModel::train_file(const std::string& path,
                                  const Vocabulary& vocab, int order,
                                  double add_k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open corpus file: " + path);
  return train(in, vocab, order, add_k);
}

double NgramModel::prob(TokenId token, const TokenSequence& ctx) const {
  const double v_eff = static_cast<double>(vocab_.size() - 1);  // no BOS
  double p = 1.0 / v_eff;
  const double prior_mass = add_k_ * v_eff;
  // Walk from the empty context to the longest suffix.
  for (std::size_t len = 0; len <= ctx.size(); ++len) {
    TokenSequence suffix(ctx.end() - static_cast<std::ptrdiff_t>(len),
                         ctx.end());
    auto it = counts_.find(suffix);
    std::uint64_t total = 0, c = 0;
    if (it != counts_.end()) {
      total = it->second.total;
      auto jt = it->second.by_token.find(token);
      if (jt != it->second.by_token.end()) c = jt->second;
    }
    p = (static_cast<double>(c) + prior_mass * p) /
        (static_cast<double>(total) + prior_mass);
  }
  return p;
}

NextTokenDistribution NgramModel::next_token_distribution(
    const TokenSequence& context, double temperature) const {
  if (temperature <= 0.0) throw ConfigError("temperature must be positive");
  if (context.empty())
    throw ConfigError("context must be non-empty (BOS-prefixed)");
  for (TokenId id : context)
    if (id >= vocab_.size())
      throw VocabMismatch("context token id out of range");

  const std::size_t max_ctx = static_cast<std::size_t>(order_ - 1);
  TokenSequence ctx(context.end() - static_cast<std::ptrdiff_t>(
                                        std::min(max_ctx, context.size())),
                    context.end());
  // A short context is padded with BOS like at training time.
  while (ctx.size() < max_ctx) ctx.insert(ctx.begin(), Vocabulary::kBos);

  Vector p = Vector::Zero(static_cast<Eigen::Index>(vocab_.size()));
  for (std::size_t w = 0; w < vocab_.size(); ++w) {
    if (w == Vocabulary::kBos) continue;
    p[static_cast<Eigen::Index>(w)] = prob(static_cast<TokenId>(w), ctx);
  }
  p /= p.sum();
  if (temperature != 1.0) {
    Vector logits = p.array().log();  // BOS -> -inf -> prob 0
    p = softmax(logits / temperature);
  }
  return {p};
}

namespace {

template <typename T>
void write_raw(std::ostream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T read_raw(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!in) throw ParseError("truncated n-gram model file");
  return v;
}

}  // namespace

void NgramModel::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open model file for write: " + path);
  out.write(kMagic, 5);
  write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(order_));
  write_raw<double>(out, add_k_);
  write_raw<std::uint64_t>(out, vocab_.hash());
  write_raw<std::uint64_t>(out, counts_.size());
  for (const auto& [ctx, c] : counts_) {
    write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(ctx.size()));
    for (TokenId id : ctx) write_raw<std::uint32_t>(out, id);
    write_raw<std::uint64_t>(out, c.total);
    write_raw<std::uint32_t>(out, static_cast<std::uint32_t>(c.by_token.size()));
    for (const auto& [tok, n] : c.by_token) {
      write_raw<std::uint32_t>(out, tok);
      write_raw<std::uint64_t>(out, n);
    }
  }
}

NgramModel NgramModel::load(const std::string& path, Vocabulary vocab) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model file: " + path);
  char magic[5];
  in.read(magic, 5);
  if (!in || std::string(magic, 5) != std::string(kMagic, 5))
    throw ParseError("bad magic bytes in model file: " + path);
  const auto order = read_raw<std::uint32_t>(in);
  const auto k = read_raw<double>(in);
  const auto vhash = read_raw<std::uint64_t>(in);
  if (vhash != vocab.hash())
    throw VocabMismatch("model was trained with a different vocabulary");
  NgramModel model(std::move(vocab), static_cast<int>(order), k);
  const auto n_ctx = read_raw<std::uint64_t>(in);
  for (std::uint64_t i = 0; i < n_ctx; ++i) {
    const auto len = read_raw<std::uint32_t>(in);
    TokenSequence ctx(len);
    for (auto& id : ctx) id = read_raw<std::uint32_t>(in);
    ContextCounts c;
    c.total = read_raw<std::uint64_t>(in);
    const auto n_entries = read_raw<std::uint32_t>(in);
    for (std::uint32_t e = 0; e < n_entries; ++e) {
      const auto tok = read_raw<std::uint32_t>(in);
      c.by_token[tok] = read_raw<std::uint64_t>(in);
    }
    model.counts_.emplace(std::move(ctx), std::move(c));
  }
  return model;
}

}  // namespace cafie
