#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "driftmon/types.hpp"

namespace driftmon {

struct FeatureSchema {
  std::vector<std::string> input_names;
  std::string target_name;
  std::string timestamp_name;

  Index input_count() const { return static_cast<Index>(input_names.size()); }

  // Inputs followed by the target; the column order of Dataset::rows.
  std::vector<std::string> column_names() const;

  // Throws ConfigError unless inputs are unique, non-empty, and the target
  // is not among them.
  void validate() const;

  bool operator==(const FeatureSchema&) const = default;
};

// Named multivariate time series. Column layout: inputs then target.
struct Dataset {
  FeatureSchema schema;
  std::vector<std::int64_t> timestamps;  // Unix seconds, strictly increasing
  Matrix rows;
  double sampling_interval_s = 0.0;

  Index row_count() const { return rows.rows(); }
  auto inputs() const { return rows.leftCols(schema.input_count()); }
  auto target() const { return rows.col(schema.input_count()); }
};

// Row range [begin_row, end_row) covering day indices
// [begin_day, end_day) relative to the first calendar day of the stream.
struct Batch {
  Index begin_row = 0;
  Index end_row = 0;
  std::int64_t begin_day = 0;
  std::int64_t end_day = 0;
  double duration_days = 0.0;  // configured batch size
  bool partial = false;

  Index row_count() const { return end_row - begin_row; }
};

// Min-max normalizer. Fitted once on training data and reused unchanged so
// later drift shows up as out-of-range values instead of being absorbed.
struct Scaler {
  std::vector<std::string> fitted_on;
  Vector col_min;
  Vector col_max;

  // (v - min) / (max - min); constant columns map to 0.
  double transform_value(Index column, double v) const;
  double inverse_value(Index column, double v) const;
  Index column_index(const std::string& name) const;  // -1 when unseen
};

Scaler fit_scaler(const Dataset& data, const std::vector<std::string>& columns);

// Normalized copy; every dataset column must be known to the scaler.
Dataset apply_scaler(const Scaler& scaler, const Dataset& data);
Dataset invert_scaler(const Scaler& scaler, const Dataset& data);

// Contiguous calendar-aligned slices of `batch_days` days each; a trailing
// remainder is kept and flagged partial.
std::vector<Batch> make_batches(const Dataset& data, double batch_days);

Dataset slice_rows(const Dataset& data, Index begin_row, Index end_row);

Dataset load_csv(const std::string& path, const FeatureSchema& schema);
void write_csv(const std::string& path, const Dataset& data);

}  // namespace driftmon
