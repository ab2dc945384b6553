// Independent reference implementation of the calibration math, written with
// plain loops and <cmath> only (no Eigen, no shared helpers), so the main
// implementation can be checked against it rather than against itself.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace oracle {

using Vec = std::vector<double>;

enum class Fn { Tanh, Arctan, Sigmoid, Softsign };
enum class Inter { Elementwise, ScalarL1 };

inline double weight(double delta, double lambda, Fn fn) {
  const double x = -lambda * delta;
  switch (fn) {
    case Fn::Tanh:
      return std::tanh(x) + 1.0;
    case Fn::Arctan:
      return (2.0 / M_PI) * std::atan(x) + 1.0;
    case Fn::Sigmoid:
      return 2.0 / (1.0 + std::exp(-x));
    case Fn::Softsign:
      return x / (1.0 + std::fabs(x)) + 1.0;
  }
  return 0.0;
}

// Counterfactually adjusted distribution followed by the alpha blend with the
// source. Returns an empty vector when every token is suppressed (the caller
// treats that as the degenerate case).
inline Vec fair(const Vec& p_src, const std::vector<Vec>& p_cfs, double lambda,
                double alpha, Fn fn, Inter inter) {
  const std::size_t v = p_src.size();
  const std::size_t r = p_cfs.size();

  std::vector<Vec> delta(r, Vec(v));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < v; ++t) delta[i][t] = p_src[t] - p_cfs[i][t];

  std::vector<Vec> w(r, Vec(v));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t t = 0; t < v; ++t)
      w[i][t] = weight(delta[i][t], lambda, fn);

  // coefficients c[i][t]: softmax across the r counterfactuals of either the
  // per-entry |delta| or the L1 norm of delta
  std::vector<Vec> c(r, Vec(v));
  if (inter == Inter::Elementwise) {
    for (std::size_t t = 0; t < v; ++t) {
      double z = 0.0;
      for (std::size_t i = 0; i < r; ++i) z += std::exp(std::fabs(delta[i][t]));
      for (std::size_t i = 0; i < r; ++i)
        c[i][t] = std::exp(std::fabs(delta[i][t])) / z;
    }
  } else {
    Vec norms(r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t t = 0; t < v; ++t) norms[i] += std::fabs(delta[i][t]);
    double z = 0.0;
    for (std::size_t i = 0; i < r; ++i) z += std::exp(norms[i]);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t t = 0; t < v; ++t) c[i][t] = std::exp(norms[i]) / z;
  }

  Vec raw(v, 0.0);
  for (std::size_t t = 0; t < v; ++t)
    for (std::size_t i = 0; i < r; ++i) raw[t] += c[i][t] * w[i][t] * p_src[t];

  double sum = 0.0;
  for (double x : raw) sum += x;
  if (sum < 1e-30) return {};

  Vec out(v);
  for (std::size_t t = 0; t < v; ++t)
    out[t] = alpha * (raw[t] / sum) + (1.0 - alpha) * p_src[t];
  return out;
}

}  // namespace oracle
