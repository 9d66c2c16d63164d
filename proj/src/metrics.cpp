#include "driftmon/metrics.hpp"

#include <cmath>

namespace driftmon {

Metrics compute_metrics(const Vector& targets, const Vector& predictions) {
  if (targets.size() != predictions.size()) {
    throw DataError("metrics: targets and predictions differ in length");
  }
  if (targets.size() == 0) throw DataError("metrics: empty inputs");

  Metrics m;
  m.n = targets.size();
  const Vector residual = predictions - targets;
  m.rmse = std::sqrt(residual.squaredNorm() / static_cast<double>(m.n));
  m.mae = residual.array().abs().mean();

  const double mean = targets.mean();
  const double ss_tot = (targets.array() - mean).matrix().squaredNorm();
  if (m.n >= 2 && ss_tot > 0.0) {
    m.r2 = 1.0 - residual.squaredNorm() / ss_tot;
  }
  return m;
}

}  // namespace driftmon
