#pragma once

#include <Eigen/Dense>

#include "cafie/errors.hpp"

namespace cafie {

using Vector = Eigen::VectorXd;

/// Probability vector over the vocabulary: non-negative, finite, sums to 1.
struct NextTokenDistribution {
  Vector probs;

  Eigen::Index size() const { return probs.size(); }
};

constexpr double kSumTolerance = 1e-9;

inline bool is_valid_distribution(const Vector& p, double tol = kSumTolerance) {
  if (p.size() == 0) return false;
  if (!p.allFinite()) return false;
  if ((p.array() < 0.0).any()) return false;
  return std::abs(p.sum() - 1.0) <= tol;
}

inline void check_distribution(const NextTokenDistribution& d) {
  if (!is_valid_distribution(d.probs))
    throw DegenerateDistribution("invalid probability distribution");
}

inline void check_same_size(Eigen::Index a, Eigen::Index b) {
  if (a != b)
    throw VocabMismatch("vocabulary size mismatch: " + std::to_string(a) +
                        " vs " + std::to_string(b));
}

/// Numerically stable softmax. Entries at -inf map to probability 0.
inline Vector softmax(const Vector& logits) {
  const double m = logits.maxCoeff();
  Vector e = (logits.array() - m).exp();
  // exp(-inf - m) underflows to 0, which is the intended limit
  for (Eigen::Index i = 0; i < e.size(); ++i)
    if (!std::isfinite(logits[i])) e[i] = 0.0;
  const double z = e.sum();
  if (z <= 0.0) throw DegenerateDistribution("softmax over empty support");
  return e / z;
}

/// Half the L1 distance between two probability vectors.
inline double tv_distance(const Vector& a, const Vector& b) {
  check_same_size(a.size(), b.size());
  return 0.5 * (a - b).cwiseAbs().sum();
}

inline double entropy(const Vector& p) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) h -= p[i] * std::log(p[i]);
  return h;
}

}  // namespace cafie
