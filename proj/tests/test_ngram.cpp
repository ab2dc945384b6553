#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "cafie/errors.hpp"
#include "cafie/ngram.hpp"

using namespace cafie;

namespace {

NgramModel make_model(const std::string& corpus, int order, double k) {
  std::istringstream vin(corpus);
  Vocabulary vocab = build_vocab(vin, 1);
  std::istringstream tin(corpus);
  return NgramModel::train(tin, vocab, order, k);
}

}  // namespace

TEST_CASE("small add-k limit recovers the ML estimate") {
  NgramModel m = make_model("a b\na b", 2, 1e-9);
  TokenSequence ctx = {Vocabulary::kBos, m.vocab().id("a")};
  auto d = m.next_token_distribution(ctx, 1.0);
  CHECK(d.probs[m.vocab().id("b")] == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("uniform-trained bigram gives a uniform distribution") {
  // every ordered pair of {a,b} seen exactly once
  NgramModel m = make_model("a a\na b\nb a\nb b", 2, 0.5);
  TokenSequence ctx = {Vocabulary::kBos, m.vocab().id("a")};
  auto d = m.next_token_distribution(ctx, 1.0);
  CHECK(d.probs[m.vocab().id("a")] ==
        doctest::Approx(d.probs[m.vocab().id("b")]).epsilon(1e-12));
}

TEST_CASE("BOS is never predicted") {
  NgramModel m = make_model("a b c\nb c a", 3, 0.1);
  for (TokenId t : {m.vocab().id("a"), m.vocab().id("b")}) {
    auto d = m.next_token_distribution({Vocabulary::kBos, t}, 1.0);
    CHECK(d.probs[Vocabulary::kBos] == 0.0);
    CHECK(is_valid_distribution(d.probs));
  }
}

TEST_CASE("count ratio survives smoothing on a 90/10 context") {
  std::ostringstream corpus;
  for (int i = 0; i < 90; ++i) corpus << "he works as a doctor\n";
  for (int i = 0; i < 10; ++i) corpus << "he works as a nurse\n";
  NgramModel m = make_model(corpus.str(), 3, 0.001);
  TokenSequence ctx = {m.vocab().id("as"), m.vocab().id("a")};
  auto d = m.next_token_distribution(ctx, 1.0);
  const double ratio =
      d.probs[m.vocab().id("doctor")] / d.probs[m.vocab().id("nurse")];
  CHECK(ratio == doctest::Approx(9.0).epsilon(0.01));
}

TEST_CASE("distributions are valid and temperature flattens monotonically") {
  NgramModel m = make_model("the cat sat on the mat\nthe dog sat", 3, 0.05);
  TokenSequence ctx = {Vocabulary::kBos, m.vocab().id("the")};
  double prev_ratio = std::numeric_limits<double>::infinity();
  TokenId argmax_at_1 = 0;
  m.next_token_distribution(ctx, 1.0).probs.maxCoeff(&argmax_at_1);
  for (double t : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    auto d = m.next_token_distribution(ctx, t);
    CHECK(is_valid_distribution(d.probs));
    double mx = d.probs.maxCoeff();
    double mn = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < d.probs.size(); ++i)
      if (d.probs[i] > 0.0) mn = std::min(mn, d.probs[i]);
    const double ratio = mx / mn;
    CHECK(ratio <= prev_ratio * (1 + 1e-12));
    prev_ratio = ratio;
    TokenId am = 0;
    d.probs.maxCoeff(&am);
    CHECK(am == argmax_at_1);  // temperature never moves the argmax
  }
}

TEST_CASE("temperature must be positive and order must be 2..5") {
  NgramModel m = make_model("a b", 2, 0.1);
  CHECK_THROWS_AS(m.next_token_distribution({Vocabulary::kBos}, 0.0),
                  ConfigError);
  std::istringstream in("a b");
  Vocabulary v = build_vocab(in, 1);
  std::istringstream c1("a b"), c2("a b");
  CHECK_THROWS_AS(NgramModel::train(c1, v, 1, 0.1), ConfigError);
  CHECK_THROWS_AS(NgramModel::train(c2, v, 6, 0.1), ConfigError);
}

TEST_CASE("empty corpus is rejected") {
  std::istringstream vin("a b");
  Vocabulary v = build_vocab(vin, 1);
  std::istringstream empty("  \n");
  CHECK_THROWS_AS(NgramModel::train(empty, v, 2, 0.1), EmptyCorpus);
}

TEST_CASE("sequence_logprob chain rule is exact") {
  NgramModel m = make_model("a b c d\nb c d a\nc d a b", 3, 0.1);
  std::mt19937_64 rng(31);
  const TokenId toks[] = {m.vocab().id("a"), m.vocab().id("b"),
                          m.vocab().id("c"), m.vocab().id("d")};
  for (int trial = 0; trial < 50; ++trial) {
    TokenSequence ctx = {Vocabulary::kBos};
    TokenSequence part_a, part_b;
    for (int i = 0; i < 3; ++i) part_a.push_back(toks[rng() % 4]);
    for (int i = 0; i < 3; ++i) part_b.push_back(toks[rng() % 4]);
    TokenSequence all = part_a;
    all.insert(all.end(), part_b.begin(), part_b.end());
    TokenSequence ctx_a = ctx;
    ctx_a.insert(ctx_a.end(), part_a.begin(), part_a.end());
    const double whole = m.sequence_logprob(ctx, all, 1.0);
    const double split = m.sequence_logprob(ctx, part_a, 1.0) +
                         m.sequence_logprob(ctx_a, part_b, 1.0);
    CHECK(whole == doctest::Approx(split).epsilon(1e-12));
    CHECK(whole <= 0.0);
  }
}

TEST_CASE("single-token logprob matches the step distribution") {
  NgramModel m = make_model("x y z\ny z x", 2, 0.2);
  TokenSequence ctx = {Vocabulary::kBos, m.vocab().id("x")};
  auto d = m.next_token_distribution(ctx, 1.0);
  const TokenId y = m.vocab().id("y");
  CHECK(m.sequence_logprob(ctx, {y}, 1.0) ==
        doctest::Approx(std::log(d.probs[y])).epsilon(1e-12));
}

TEST_CASE("save/load round-trip is byte-deterministic and exact") {
  NgramModel m = make_model("the red fox ran\nthe red dog sat", 3, 0.01);
  const std::string p1 = "ngram_a.tmp", p2 = "ngram_b.tmp";
  m.save(p1);
  m.save(p2);
  std::ifstream f1(p1, std::ios::binary), f2(p2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK(!s1.str().empty());

  NgramModel back = NgramModel::load(p1, m.vocab());
  TokenSequence ctx = {Vocabulary::kBos, m.vocab().id("the")};
  CHECK((back.next_token_distribution(ctx, 1.0).probs -
         m.next_token_distribution(ctx, 1.0).probs)
            .cwiseAbs()
            .maxCoeff() == 0.0);
  std::remove(p1.c_str());
  std::remove(p2.c_str());
}

TEST_CASE("load rejects wrong magic and wrong vocabulary") {
  NgramModel m = make_model("a b", 2, 0.1);
  const std::string path = "ngram_bad.tmp";
  m.save(path);

  std::istringstream other("x y z");
  Vocabulary wrong = build_vocab(other, 1);
  CHECK_THROWS_AS(NgramModel::load(path, wrong), VocabMismatch);

  std::ofstream junk(path, std::ios::binary);
  junk << "NOPE!";
  junk.close();
  CHECK_THROWS_AS(NgramModel::load(path, m.vocab()), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("training corpus is no harder than a shuffled one") {
  std::ostringstream corpus;
  const char* lines[] = {"the cat sat on the mat", "the dog ran to the park",
                         "a bird flew over the tree"};
  for (int rep = 0; rep < 20; ++rep)
    for (const char* l : lines) corpus << l << "\n";
  NgramModel m = make_model(corpus.str(), 3, 0.05);

  auto ppl_of = [&](const std::string& text) {
    std::istringstream in(text);
    std::string line;
    double ll = 0.0;
    std::size_t n = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      TokenSequence ids = tokenize(line, m.vocab());
      ids.push_back(Vocabulary::kEos);
      ll += m.sequence_logprob({Vocabulary::kBos}, ids, 1.0);
      n += ids.size();
    }
    return std::exp(-ll / static_cast<double>(n));
  };

  // word-shuffled version of the same corpus
  std::mt19937_64 rng(7);
  std::ostringstream shuffled;
  std::istringstream in(corpus.str());
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> words;
    std::istringstream ws(line);
    std::string w;
    while (ws >> w) words.push_back(w);
    std::shuffle(words.begin(), words.end(), rng);
    for (std::size_t i = 0; i < words.size(); ++i)
      shuffled << words[i] << (i + 1 < words.size() ? " " : "");
    shuffled << "\n";
  }
  CHECK(ppl_of(corpus.str()) <= ppl_of(shuffled.str()) + 1e-9);
}
