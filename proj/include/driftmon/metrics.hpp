#pragma once

#include <optional>

#include "driftmon/types.hpp"

namespace driftmon {

struct Metrics {
  // r2 is empty when the targets are constant (variance undefined).
  std::optional<double> r2;
  double rmse = 0.0;
  double mae = 0.0;
  Index n = 0;
};

Metrics compute_metrics(const Vector& targets, const Vector& predictions);

}  // namespace driftmon
