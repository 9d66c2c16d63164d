#include "driftmon/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "driftmon/rng.hpp"
#include "driftmon/timeutil.hpp"

namespace driftmon {

namespace {

// Mean and standard deviation of the daily trapezoid below.
constexpr double kLoadMean = 0.725;
constexpr double kLoadSd = 0.2510478;
constexpr double kLoadNoiseSigma = 0.01;

// Generated streams start at 2024-01-01T00:00:00Z.
constexpr std::int64_t kStreamEpoch = 1704067200;

// Daily load cycle: overnight minimum, morning ramp-up, daytime hold,
// evening ramp-down.
double load_at(double hour_of_day) {
  constexpr double low = 0.45;
  if (hour_of_day < 6.0) return low;
  if (hour_of_day < 9.0) return low + (1.0 - low) * (hour_of_day - 6.0) / 3.0;
  if (hour_of_day < 18.0) return 1.0;
  if (hour_of_day < 21.0) return 1.0 - (1.0 - low) * (hour_of_day - 18.0) / 3.0;
  return low;
}

// Differential pressure across the preheater: dominated by a quadratic in
// the secondary air outlet temperature (the cleanest load proxy), with a
// pairwise temperature interaction on top.
double target_dp(const Vector& x) {
  const double u_sec_out = (x[3] - 310.0) / 55.0;
  const double u_flue_in = (x[0] - 320.0) / 60.0;
  const double u_prim_out = (x[5] - 300.0) / 45.0;
  return 600.0 + 420.0 * u_sec_out * u_sec_out + 160.0 * u_sec_out +
         60.0 * u_flue_in * u_prim_out;
}

constexpr double kTargetNoiseSigma = 10.0;  // ~2% of the target range

}  // namespace

double SyntheticFeature::nominal_mean() const {
  return base + load_gain * kLoadMean;
}

double SyntheticFeature::nominal_sd() const {
  const double cyclic = load_gain * kLoadSd;
  return std::sqrt(cyclic * cyclic + noise_sigma * noise_sigma);
}

const std::vector<SyntheticFeature>& synthetic_features() {
  static const std::vector<SyntheticFeature> features = {
      {"flue_gas_inlet_temp_c", 320.0, 60.0, 2.0},
      {"flue_gas_outlet_temp_c", 130.0, 25.0, 1.2},
      {"secondary_air_inlet_temp_c", 28.0, 8.0, 0.8},
      {"secondary_air_outlet_temp_c", 310.0, 55.0, 1.5},
      {"primary_air_inlet_temp_c", 30.0, 6.0, 0.7},
      {"primary_air_outlet_temp_c", 300.0, 45.0, 1.5},
      {"oxygen_inlet_pct", 21.0, -2.5, 0.15},
      {"oxygen_outlet_pct", 6.5, -2.0, 0.12},
  };
  return features;
}

FeatureSchema synthetic_schema() {
  FeatureSchema schema;
  for (const auto& f : synthetic_features()) schema.input_names.push_back(f.name);
  schema.target_name = "flue_gas_dp_pa";
  schema.timestamp_name = "timestamp";
  return schema;
}

void DriftInjection::validate(Index feature_count) const {
  if (mean_shift.size() != 0 && mean_shift.size() != feature_count) {
    throw ConfigError("drift mean_shift must have one entry per input feature");
  }
  if (scale.size() != 0 && scale.size() != feature_count) {
    throw ConfigError("drift scale must have one entry per input feature");
  }
  for (Index i = 0; i < scale.size(); ++i) {
    if (!(scale[i] > 0.0)) throw ConfigError("drift scale factors must be > 0");
  }
  if (rotation < 0.0 || rotation > 1.0) {
    throw ConfigError("drift rotation strength must lie in [0, 1]");
  }
  if (start_day < 0) throw ConfigError("drift start_day must be >= 0");
  if (new_interval_s < 0.0) {
    throw ConfigError("drift sampling interval must be positive (or 0 = keep)");
  }
}

Dataset generate_synthetic(int days, double interval_s,
                           const std::optional<DriftInjection>& drift,
                           std::uint64_t seed) {
  if (days < 1) throw ConfigError("generate_synthetic needs days >= 1");
  if (!(interval_s > 0.0)) throw ConfigError("sampling interval must be > 0");
  const auto& features = synthetic_features();
  const Index d = static_cast<Index>(features.size());
  if (drift) drift->validate(d);

  // Relative sample times; the interval may change at the injection point.
  std::vector<double> rel_times;
  const double total_s = static_cast<double>(days) * kSecondsPerDay;
  const double boundary_s =
      (drift && drift->new_interval_s > 0.0)
          ? std::min(total_s, static_cast<double>(drift->start_day) * kSecondsPerDay)
          : total_s;
  for (double t = 0.0; t < boundary_s; t += interval_s) rel_times.push_back(t);
  if (boundary_s < total_s) {
    for (double t = boundary_s; t < total_s; t += drift->new_interval_s) {
      rel_times.push_back(t);
    }
  }

  Dataset data;
  data.schema = synthetic_schema();
  data.timestamps.reserve(rel_times.size());
  data.rows.resize(static_cast<Index>(rel_times.size()), d + 1);

  Rng rng(seed);
  const double theta = drift ? drift->rotation * (M_PI / 4.0) : 0.0;
  const double cos_t = std::cos(theta);
  const double sin_t = std::sin(theta);

  for (std::size_t k = 0; k < rel_times.size(); ++k) {
    const double rel = rel_times[k];
    const std::int64_t ts = kStreamEpoch + static_cast<std::int64_t>(std::llround(rel));
    data.timestamps.push_back(ts);

    const double day = std::floor(rel / kSecondsPerDay);
    const double hour = (rel - day * kSecondsPerDay) / 3600.0;
    const double load = load_at(hour) + rng.normal(0.0, kLoadNoiseSigma);

    Vector x(d);
    for (Index i = 0; i < d; ++i) {
      const auto& f = features[static_cast<std::size_t>(i)];
      x[i] = f.base + f.load_gain * load + rng.normal(0.0, f.noise_sigma);
    }

    const bool drifted = drift && day >= static_cast<double>(drift->start_day);
    if (drifted) {
      Vector center(d);
      for (Index i = 0; i < d; ++i) {
        const auto& f = features[static_cast<std::size_t>(i)];
        const double m = f.nominal_mean();
        const double scale = drift->scale.size() ? drift->scale[i] : 1.0;
        const double shift = drift->mean_shift.size() ? drift->mean_shift[i] : 0.0;
        x[i] = m + scale * (x[i] - m) + shift;
        center[i] = m + shift;
      }
      if (theta != 0.0) {
        for (Index i = 0; i + 1 < d; i += 2) {
          const double sd_a = features[static_cast<std::size_t>(i)].nominal_sd();
          const double sd_b = features[static_cast<std::size_t>(i + 1)].nominal_sd();
          const double a = (x[i] - center[i]) / sd_a;
          const double b = (x[i + 1] - center[i + 1]) / sd_b;
          x[i] = center[i] + sd_a * (cos_t * a + sin_t * b);
          x[i + 1] = center[i + 1] + sd_b * (cos_t * b - sin_t * a);
        }
      }
    }

    // Target from the observed (possibly drifted) inputs, so the mapping
    // stays learnable and failures come from covariate shift.
    const double dp = target_dp(x) + rng.normal(0.0, kTargetNoiseSigma);

    data.rows.block(static_cast<Index>(k), 0, 1, d) = x.transpose();
    data.rows(static_cast<Index>(k), d) = dp;
  }

  data.sampling_interval_s = interval_s;
  if (data.timestamps.size() >= 2) {
    std::vector<std::int64_t> gaps;
    gaps.reserve(data.timestamps.size() - 1);
    for (std::size_t i = 1; i < data.timestamps.size(); ++i) {
      gaps.push_back(data.timestamps[i] - data.timestamps[i - 1]);
    }
    std::sort(gaps.begin(), gaps.end());
    const std::size_t mid = gaps.size() / 2;
    data.sampling_interval_s =
        gaps.size() % 2 == 1
            ? static_cast<double>(gaps[mid])
            : 0.5 * static_cast<double>(gaps[mid - 1] + gaps[mid]);
  }
  return data;
}

}  // namespace driftmon
