#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "cafie/calibrator.hpp"
#include "cafie/errors.hpp"
#include "oracle.hpp"

using namespace cafie;

namespace {

NextTokenDistribution dist(std::initializer_list<double> vals) {
  Vector v(static_cast<Eigen::Index>(vals.size()));
  Eigen::Index i = 0;
  for (double x : vals) v[i++] = x;
  return {v};
}

NextTokenDistribution random_dist(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  v /= v.sum();
  return {v};
}

}  // namespace

TEST_CASE("disparity is elementwise subtraction") {
  auto d = disparity(dist({0.5, 0.3, 0.2}), dist({0.3, 0.5, 0.2}));
  CHECK(d[0] == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(d[2] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("disparity of identical distributions is zero and sums to zero") {
  std::mt19937_64 rng(11);
  auto p = random_dist(rng, 7);
  CHECK(disparity(p, p).cwiseAbs().maxCoeff() == 0.0);
  auto q = random_dist(rng, 7);
  CHECK(std::abs(disparity(p, q).sum()) < 1e-12);
}

TEST_CASE("disparity rejects size mismatch") {
  CHECK_THROWS_AS(disparity(dist({0.5, 0.5}), dist({1.0})), VocabMismatch);
}

TEST_CASE("intra_weight frozen values for tanh") {
  Vector d(3);
  d << 0.2, -0.2, 0.0;
  Vector w = intra_weight(d, 1.0, WeightFn::Tanh);
  CHECK(w[0] == doctest::Approx(std::tanh(-0.2) + 1.0).epsilon(1e-12));
  CHECK(w[0] == doctest::Approx(0.80270).epsilon(1e-4));
  CHECK(w[1] == doctest::Approx(1.19738).epsilon(1e-4));
  CHECK(w[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("intra_weight at large lambda suppresses preferred tokens") {
  Vector d(1);
  d << 0.01;
  Vector w = intra_weight(d, 1000.0, WeightFn::Tanh);
  CHECK(w[0] == doctest::Approx(std::tanh(-10.0) + 1.0).epsilon(1e-9));
  CHECK(w[0] == doctest::Approx(4.54e-9).epsilon(1e-2));
}

TEST_CASE("all weight functions fix delta=0 to 1 and decrease in delta") {
  for (WeightFn fn : {WeightFn::Tanh, WeightFn::Arctan, WeightFn::Sigmoid,
                      WeightFn::Softsign}) {
    for (double lambda : {0.0, 1.0, 10.0, 1000.0}) {
      Vector zero = Vector::Zero(4);
      CHECK((intra_weight(zero, lambda, fn).array() == 1.0).all());
    }
    Vector grid(5);
    grid << -0.5, -0.1, 0.0, 0.1, 0.5;
    Vector w = intra_weight(grid, 3.0, fn);
    for (int i = 0; i + 1 < w.size(); ++i) CHECK(w[i] >= w[i + 1]);
    CHECK((w.array() > 0.0).all());
    CHECK((w.array() < 2.0).all());
  }
}

TEST_CASE("combine fixed point: counterfactual equal to source") {
  CalibrationParams params;
  params.lambda = 7.0;
  auto p = dist({0.5, 0.3, 0.2});
  auto out = combine(p, {p}, params);
  CHECK((out.probs - p.probs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("combine frozen worked example, lambda=1, tanh, R=1") {
  CalibrationParams params;
  params.lambda = 1.0;
  auto out =
      combine(dist({0.5, 0.3, 0.2}), {dist({0.3, 0.5, 0.2})}, params);
  // raw = [0.5*(tanh(-0.2)+1), 0.3*(tanh(0.2)+1), 0.2] ~ [0.40131, 0.35921,
  // 0.20000], then renormalized
  const double r0 = 0.5 * (std::tanh(-0.2) + 1.0);
  const double r1 = 0.3 * (std::tanh(0.2) + 1.0);
  const double r2 = 0.2;
  const double z = r0 + r1 + r2;
  CHECK(out.probs[0] == doctest::Approx(r0 / z).epsilon(1e-9));
  CHECK(out.probs[1] == doctest::Approx(r1 / z).epsilon(1e-9));
  CHECK(out.probs[2] == doctest::Approx(r2 / z).epsilon(1e-9));
  CHECK(out.probs[0] == doctest::Approx(0.41786).epsilon(1e-4));
  CHECK(out.probs[1] == doctest::Approx(0.37398).epsilon(1e-4));
  CHECK(out.probs[2] == doctest::Approx(0.20822).epsilon(1e-4));
}

TEST_CASE("combine with duplicated counterfactual equals the R=1 result") {
  std::mt19937_64 rng(23);
  auto p = random_dist(rng, 6);
  auto q = random_dist(rng, 6);
  for (InterWeighting iw : {InterWeighting::Elementwise,
                            InterWeighting::ScalarL1}) {
    CalibrationParams params;
    params.lambda = 4.0;
    params.inter_weighting = iw;
    auto one = combine(p, {q}, params);
    auto two = combine(p, {q, q}, params);
    CHECK((one.probs - two.probs).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("combine suppression direction") {
  std::mt19937_64 rng(37);
  CalibrationParams params;
  params.lambda = 5.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_dist(rng, 8);
    auto q1 = random_dist(rng, 8);
    auto q2 = random_dist(rng, 8);
    auto out = combine(p, {q1, q2}, params);
    // check pre-normalization direction on the raw mass: recover raw as
    // out * Z where Z is unknown; instead verify the ratio ordering that
    // renormalization preserves between two tokens with opposite-sign deltas
    for (int t = 0; t < 8; ++t) {
      const double d1 = p.probs[t] - q1.probs[t];
      const double d2 = p.probs[t] - q2.probs[t];
      for (int s = 0; s < 8; ++s) {
        const double e1 = p.probs[s] - q1.probs[s];
        const double e2 = p.probs[s] - q2.probs[s];
        if (d1 > 0 && d2 > 0 && e1 < 0 && e2 < 0) {
          // t suppressed, s boosted: fair odds must move toward s
          CHECK(out.probs[t] / out.probs[s] <= p.probs[t] / p.probs[s] + 1e-12);
        }
      }
    }
  }
}

TEST_CASE("combine symmetry under token relabeling") {
  // Two-group setup: source prefers token 0, counterfactual prefers token 1.
  CalibrationParams params;
  params.lambda = 3.0;
  auto p = dist({0.6, 0.1, 0.3});
  auto q = dist({0.1, 0.6, 0.3});
  auto a = combine(p, {q}, params);
  auto b = combine(q, {p}, params);
  CHECK(a.probs[0] == doctest::Approx(b.probs[1]).epsilon(1e-12));
  CHECK(a.probs[1] == doctest::Approx(b.probs[0]).epsilon(1e-12));
  CHECK(a.probs[2] == doctest::Approx(b.probs[2]).epsilon(1e-12));
}

TEST_CASE("lambda=0 makes combine the identity for cafie mode") {
  std::mt19937_64 rng(41);
  CalibrationParams params;
  params.lambda = 0.0;
  auto p = random_dist(rng, 9);
  auto q = random_dist(rng, 9);
  auto out = combine(p, {q}, params);
  CHECK((out.probs - p.probs).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("blend endpoints are exact") {
  std::mt19937_64 rng(43);
  auto p = random_dist(rng, 5);
  auto q = random_dist(rng, 5);
  auto at0 = blend(p, q, 0.0);
  auto at1 = blend(p, q, 1.0);
  CHECK((at0.probs.array() == p.probs.array()).all());
  CHECK((at1.probs.array() == q.probs.array()).all());
  auto mid = blend(p, q, 0.25);
  CHECK((mid.probs - (0.25 * q.probs + 0.75 * p.probs)).cwiseAbs().maxCoeff()
        == 0.0);
}

TEST_CASE("ablation combine modes produce valid distributions") {
  std::mt19937_64 rng(47);
  auto p = random_dist(rng, 6);
  auto q1 = random_dist(rng, 6);
  auto q2 = random_dist(rng, 6);
  for (CombineMode m : {CombineMode::Jpdf, CombineMode::Ratio,
                        CombineMode::Weight}) {
    CalibrationParams params;
    params.combine_mode = m;
    auto out = combine(p, {q1, q2}, params);
    CHECK(is_valid_distribution(out.probs));
  }
  // ratio mode is the plain average with a single counterfactual
  CalibrationParams params;
  params.combine_mode = CombineMode::Ratio;
  auto out = combine(p, {q1}, params);
  CHECK((out.probs - 0.5 * (p.probs + q1.probs)).cwiseAbs().maxCoeff()
        < 1e-12);
}

TEST_CASE("degenerate combine raises instead of flattening") {
  // Source is (numerically) one-hot on a token every counterfactual
  // anti-prefers at huge lambda: all mass suppressed below the floor.
  CalibrationParams params;
  params.lambda = 1e9;
  auto p = dist({1.0 - 1e-300, 1e-300, 0.0});
  auto q = dist({0.0, 1.0, 0.0});
  CHECK_THROWS_AS(combine(p, {q}, params), DegenerateDistribution);
}

TEST_CASE("params validation") {
  CalibrationParams params;
  params.alpha = 1.5;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.alpha = 0.5;
  params.lambda = -1.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.lambda = 1.0;
  params.temperature = 0.0;
  CHECK_THROWS_AS(params.validate(), ConfigError);
  params.temperature = 1.0;
  CHECK_NOTHROW(params.validate());
}

TEST_CASE("oracle equivalence over random cases") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> vocab_size(3, 16);
  std::uniform_int_distribution<int> num_cf(1, 4);
  const double lambdas[] = {0.0, 1.0, 10.0, 1000.0};
  const std::pair<WeightFn, oracle::Fn> fns[] = {
      {WeightFn::Tanh, oracle::Fn::Tanh},
      {WeightFn::Arctan, oracle::Fn::Arctan},
      {WeightFn::Sigmoid, oracle::Fn::Sigmoid},
      {WeightFn::Softsign, oracle::Fn::Softsign}};
  const std::pair<InterWeighting, oracle::Inter> inters[] = {
      {InterWeighting::Elementwise, oracle::Inter::Elementwise},
      {InterWeighting::ScalarL1, oracle::Inter::ScalarL1}};

  for (int trial = 0; trial < 1000; ++trial) {
    const int v = vocab_size(rng);
    const int r = num_cf(rng);
    auto p = random_dist(rng, v);
    std::vector<NextTokenDistribution> cfs;
    for (int i = 0; i < r; ++i) cfs.push_back(random_dist(rng, v));

    CalibrationParams params;
    params.lambda = lambdas[trial % 4];
    params.alpha = 0.99;
    params.weight_fn = fns[(trial / 4) % 4].first;
    params.inter_weighting = inters[trial % 2].first;

    oracle::Vec op(p.probs.data(), p.probs.data() + v);
    std::vector<oracle::Vec> ocfs;
    for (const auto& cf : cfs)
      ocfs.emplace_back(cf.probs.data(), cf.probs.data() + v);
    const oracle::Vec expected =
        oracle::fair(op, ocfs, params.lambda, params.alpha,
                     fns[(trial / 4) % 4].second, inters[trial % 2].second);
    REQUIRE(!expected.empty());

    auto fair = blend(p, combine(p, cfs, params), params.alpha);
    double max_err = 0.0;
    for (int t = 0; t < v; ++t)
      max_err = std::max(max_err, std::abs(fair.probs[t] - expected[t]));
    CHECK(max_err < 1e-9);
  }
}
