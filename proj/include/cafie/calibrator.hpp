#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cafie/distribution.hpp"

namespace cafie {

enum class WeightFn { Tanh, Arctan, Sigmoid, Softsign };
enum class CombineMode { Cafie, Jpdf, Ratio, Weight };
enum class InterWeighting { Elementwise, ScalarL1 };

WeightFn parse_weight_fn(const std::string& s);
CombineMode parse_combine_mode(const std::string& s);
InterWeighting parse_inter_weighting(const std::string& s);
std::string to_string(WeightFn f);
std::string to_string(CombineMode m);
std::string to_string(InterWeighting w);

struct CalibrationParams {
  double lambda = 1000.0;
  double alpha = 0.99;
  double temperature = 1.0;
  std::size_t max_counterfactuals = static_cast<std::size_t>(-1);
  WeightFn weight_fn = WeightFn::Tanh;
  CombineMode combine_mode = CombineMode::Cafie;
  InterWeighting inter_weighting = InterWeighting::Elementwise;

  void validate() const;
};

/// delta = p_source - p_counterfactual, elementwise. Entries lie in [-1, 1].
Vector disparity(const NextTokenDistribution& p_source,
                 const NextTokenDistribution& p_counterfactual);

/// Per-token weight from the disparity. All variants map 0 -> 1 and decrease
/// monotonically in delta:
///   tanh:     tanh(-lambda*d) + 1
///   arctan:   (2/pi)*arctan(-lambda*d) + 1
///   sigmoid:  2*sigmoid(-lambda*d)
///   softsign: (-lambda*d)/(1+|lambda*d|) + 1
Vector intra_weight(const Vector& delta, double lambda, WeightFn fn);

/// Counterfactual-informed adjusted distribution, renormalized.
NextTokenDistribution combine(
    const NextTokenDistribution& p_source,
    const std::vector<NextTokenDistribution>& counterfactual_ps,
    const CalibrationParams& params);

/// alpha * p_cafie + (1 - alpha) * p_source.
NextTokenDistribution blend(const NextTokenDistribution& p_source,
                            const NextTokenDistribution& p_cafie, double alpha);

}  // namespace cafie
