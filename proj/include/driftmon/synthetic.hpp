#pragma once

#include <cstdint>
#include <optional>

#include "driftmon/dataset.hpp"

namespace driftmon {

// Distribution change applied from `start_day` (0-based day offset) onward.
// Scale is applied around the feature's nominal mean, then the mean shift,
// then a correlation-mixing rotation of standardized feature pairs.
struct DriftInjection {
  int start_day = 0;
  Vector mean_shift;          // per input feature, raw units; empty = none
  Vector scale;               // per input feature, > 0; empty = all 1
  double rotation = 0.0;      // correlation mixing strength in [0, 1]
  double new_interval_s = 0.0;  // 0 = sampling interval unchanged

  void validate(Index feature_count) const;
};

struct SyntheticFeature {
  std::string name;
  double base;         // value at zero load
  double load_gain;    // sensitivity to the latent load
  double noise_sigma;  // per-sample Gaussian noise
  double nominal_mean() const;
  double nominal_sd() const;
};

// The eight operating variables of the plant-like generator.
const std::vector<SyntheticFeature>& synthetic_features();
FeatureSchema synthetic_schema();

// Plant-like load-cycling series: a trapezoidal daily load cycle drives
// eight correlated operating variables; the differential-pressure target is
// a smooth nonlinear function of them. Pure function of its arguments.
Dataset generate_synthetic(int days, double interval_s,
                           const std::optional<DriftInjection>& drift,
                           std::uint64_t seed);

}  // namespace driftmon
