#include "cafie/calibrator.hpp"

#include <cmath>
#include <numbers>

#include "cafie/errors.hpp"

namespace cafie {

namespace {
constexpr double kDegenerateFloor = 1e-30;
}

WeightFn parse_weight_fn(const std::string& s) {
  if (s == "tanh") return WeightFn::Tanh;
  if (s == "arctan") return WeightFn::Arctan;
  if (s == "sigmoid") return WeightFn::Sigmoid;
  if (s == "softsign") return WeightFn::Softsign;
  throw ConfigError("unknown weight function: " + s);
}

CombineMode parse_combine_mode(const std::string& s) {
  if (s == "cafie") return CombineMode::Cafie;
  if (s == "jpdf") return CombineMode::Jpdf;
  if (s == "ratio") return CombineMode::Ratio;
  if (s == "weight") return CombineMode::Weight;
  throw ConfigError("unknown combine mode: " + s);
}

InterWeighting parse_inter_weighting(const std::string& s) {
  if (s == "elementwise") return InterWeighting::Elementwise;
  if (s == "scalar_l1") return InterWeighting::ScalarL1;
  throw ConfigError("unknown inter-counterfactual weighting: " + s);
}

std::string to_string(WeightFn f) {
  switch (f) {
    case WeightFn::Tanh: return "tanh";
    case WeightFn::Arctan: return "arctan";
    case WeightFn::Sigmoid: return "sigmoid";
    case WeightFn::Softsign: return "softsign";
  }
  return "?";
}

std::string to_string(CombineMode m) {
  switch (m) {
    case CombineMode::Cafie: return "cafie";
    case CombineMode::Jpdf: return "jpdf";
    case CombineMode::Ratio: return "ratio";
    case CombineMode::Weight: return "weight";
  }
  return "?";
}

std::string to_string(InterWeighting w) {
  return w == InterWeighting::Elementwise ? "elementwise" : "scalar_l1";
}

void CalibrationParams::validate() const {
  if (lambda < 0.0) throw ConfigError("lambda must be >= 0");
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("alpha must be in [0, 1]");
  if (temperature <= 0.0) throw ConfigError("temperature must be > 0");
}

Vector disparity(const NextTokenDistribution& p_source,
                 const NextTokenDistribution& p_counterfactual) {
  check_same_size(p_source.size(), p_counterfactual.size());
  return p_source.probs - p_counterfactual.probs;
}

Vector intra_weight(const Vector& delta, double lambda, WeightFn fn) {
  if (lambda < 0.0) throw ConfigError("lambda must be >= 0");
  const Eigen::ArrayXd x = -lambda * delta.array();
  switch (fn) {
    case WeightFn::Tanh:
      return (x.tanh() + 1.0).matrix();
    case WeightFn::Arctan:
      return ((2.0 / std::numbers::pi) * x.atan() + 1.0).matrix();
    case WeightFn::Sigmoid:
      return (2.0 / (1.0 + (-x).exp())).matrix();
    case WeightFn::Softsign:
      return (x / (1.0 + x.abs()) + 1.0).matrix();
  }
  throw ConfigError("unknown weight function");
}

NextTokenDistribution combine(
    const NextTokenDistribution& p_source,
    const std::vector<NextTokenDistribution>& counterfactual_ps,
    const CalibrationParams& params) {
  params.validate();
  if (counterfactual_ps.empty())
    throw ConfigError("combine requires at least one counterfactual");
  const Eigen::Index n = p_source.size();
  for (const auto& p : counterfactual_ps) check_same_size(n, p.size());
  const std::size_t r = counterfactual_ps.size();

  Vector raw;
  switch (params.combine_mode) {
    case CombineMode::Cafie: {
      std::vector<Vector> deltas(r);
      std::vector<Vector> weights(r);
      for (std::size_t i = 0; i < r; ++i) {
        deltas[i] = disparity(p_source, counterfactual_ps[i]);
        weights[i] = intra_weight(deltas[i], params.lambda, params.weight_fn);
      }
      raw = Vector::Zero(n);
      if (params.inter_weighting == InterWeighting::Elementwise) {
        // softmax over the R counterfactuals, independently per vocab entry
        Vector denom = Vector::Zero(n);
        for (std::size_t i = 0; i < r; ++i)
          denom.array() += deltas[i].array().abs().exp();
        for (std::size_t i = 0; i < r; ++i)
          raw.array() += deltas[i].array().abs().exp() / denom.array() *
                         weights[i].array() * p_source.probs.array();
      } else {
        double denom = 0.0;
        std::vector<double> num(r);
        for (std::size_t i = 0; i < r; ++i) {
          num[i] = std::exp(deltas[i].cwiseAbs().sum());
          denom += num[i];
        }
        for (std::size_t i = 0; i < r; ++i)
          raw.array() +=
              (num[i] / denom) * weights[i].array() * p_source.probs.array();
      }
      break;
    }
    case CombineMode::Jpdf: {
      Vector mean = Vector::Zero(n);
      for (const auto& p : counterfactual_ps) mean += p.probs;
      mean /= static_cast<double>(r);
      raw = p_source.probs.cwiseProduct(mean);
      break;
    }
    case CombineMode::Ratio: {
      Vector mean = Vector::Zero(n);
      for (const auto& p : counterfactual_ps) mean += p.probs;
      mean /= static_cast<double>(r);
      raw = 0.5 * (p_source.probs + mean);
      break;
    }
    case CombineMode::Weight: {
      Vector mean_delta = Vector::Zero(n);
      for (const auto& p : counterfactual_ps)
        mean_delta += disparity(p_source, p);
      mean_delta /= static_cast<double>(r);
      raw = (1.0 - softmax(mean_delta).array()) * p_source.probs.array();
      break;
    }
  }

  const double z = raw.sum();
  if (!std::isfinite(z) || z < kDegenerateFloor)
    throw DegenerateDistribution(
        "calibrated distribution has vanishing mass (sum = " +
        std::to_string(z) + ")");
  return {raw / z};
}

NextTokenDistribution blend(const NextTokenDistribution& p_source,
                            const NextTokenDistribution& p_cafie,
                            double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw ConfigError("alpha must be in [0, 1]");
  check_same_size(p_source.size(), p_cafie.size());
  return {alpha * p_cafie.probs + (1.0 - alpha) * p_source.probs};
}

}  // namespace cafie
