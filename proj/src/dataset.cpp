#include "driftmon/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "driftmon/timeutil.hpp"

namespace driftmon {

std::vector<std::string> FeatureSchema::column_names() const {
  std::vector<std::string> names = input_names;
  names.push_back(target_name);
  return names;
}

void FeatureSchema::validate() const {
  if (input_names.empty()) {
    throw ConfigError("schema needs at least one input feature");
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : input_names) {
    if (!seen.insert(name).second) {
      throw ConfigError("duplicate input feature name: " + name);
    }
  }
  if (seen.count(target_name) != 0) {
    throw ConfigError("target '" + target_name + "' is also listed as input");
  }
  if (target_name.empty() || timestamp_name.empty()) {
    throw ConfigError("schema target/timestamp names must be non-empty");
  }
}

double Scaler::transform_value(Index column, double v) const {
  const double span = col_max[column] - col_min[column];
  if (span == 0.0) return 0.0;
  return (v - col_min[column]) / span;
}

double Scaler::inverse_value(Index column, double v) const {
  const double span = col_max[column] - col_min[column];
  if (span == 0.0) return col_min[column];
  return col_min[column] + v * span;
}

Index Scaler::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < fitted_on.size(); ++i) {
    if (fitted_on[i] == name) return static_cast<Index>(i);
  }
  return -1;
}

Scaler fit_scaler(const Dataset& data, const std::vector<std::string>& columns) {
  if (data.row_count() == 0) throw DataError("cannot fit scaler on empty data");
  const auto dataset_columns = data.schema.column_names();
  Scaler scaler;
  scaler.fitted_on = columns;
  scaler.col_min.resize(static_cast<Index>(columns.size()));
  scaler.col_max.resize(static_cast<Index>(columns.size()));
  for (std::size_t i = 0; i < columns.size(); ++i) {
    const auto it =
        std::find(dataset_columns.begin(), dataset_columns.end(), columns[i]);
    if (it == dataset_columns.end()) {
      throw DataError("scaler column '" + columns[i] + "' not in dataset");
    }
    const Index col = static_cast<Index>(it - dataset_columns.begin());
    scaler.col_min[static_cast<Index>(i)] = data.rows.col(col).minCoeff();
    scaler.col_max[static_cast<Index>(i)] = data.rows.col(col).maxCoeff();
  }
  return scaler;
}

namespace {

Dataset map_columns(const Scaler& scaler, const Dataset& data, bool inverse) {
  Dataset out = data;
  const auto columns = data.schema.column_names();
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const Index scaler_col = scaler.column_index(columns[c]);
    if (scaler_col < 0) {
      throw DataError("column '" + columns[c] + "' was not seen by the scaler");
    }
    const Index col = static_cast<Index>(c);
    for (Index r = 0; r < out.row_count(); ++r) {
      out.rows(r, col) = inverse
                             ? scaler.inverse_value(scaler_col, data.rows(r, col))
                             : scaler.transform_value(scaler_col, data.rows(r, col));
    }
  }
  return out;
}

}  // namespace

Dataset apply_scaler(const Scaler& scaler, const Dataset& data) {
  return map_columns(scaler, data, false);
}

Dataset invert_scaler(const Scaler& scaler, const Dataset& data) {
  return map_columns(scaler, data, true);
}

std::vector<Batch> make_batches(const Dataset& data, double batch_days) {
  if (batch_days <= 0.0) throw ConfigError("batch_days must be positive");
  if (data.row_count() == 0) throw DataError("cannot batch an empty dataset");

  const std::int64_t first_day = day_of(data.timestamps.front());
  std::vector<Batch> batches;
  for (Index r = 0; r < data.row_count(); ++r) {
    const std::int64_t day = day_of(data.timestamps[static_cast<std::size_t>(r)]) - first_day;
    const std::int64_t batch_index =
        static_cast<std::int64_t>(std::floor(static_cast<double>(day) / batch_days));
    if (batches.empty() ||
        static_cast<std::int64_t>(batches.size()) - 1 < batch_index) {
      Batch batch;
      batch.begin_row = r;
      batch.begin_day = day;
      batch.duration_days = batch_days;
      batches.push_back(batch);
    }
    batches.back().end_row = r + 1;
    batches.back().end_day = day + 1;
  }
  for (std::size_t k = 0; k < batches.size(); ++k) {
    const double covered =
        static_cast<double>(batches[k].end_day - batches[k].begin_day);
    batches[k].partial = covered < batch_days - 1e-9;
  }
  return batches;
}

Dataset slice_rows(const Dataset& data, Index begin_row, Index end_row) {
  if (begin_row < 0 || end_row > data.row_count() || begin_row >= end_row) {
    throw DataError("invalid dataset slice [" + std::to_string(begin_row) +
                    ", " + std::to_string(end_row) + ")");
  }
  Dataset out;
  out.schema = data.schema;
  out.sampling_interval_s = data.sampling_interval_s;
  out.timestamps.assign(data.timestamps.begin() + begin_row,
                        data.timestamps.begin() + end_row);
  out.rows = data.rows.middleRows(begin_row, end_row - begin_row);
  return out;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_number(const std::string& text, std::size_t row,
                    const std::string& column) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw DataError("row " + std::to_string(row) + ": value '" + text +
                    "' in column '" + column + "' is not a finite number");
  }
  return v;
}

double median_gap(const std::vector<std::int64_t>& timestamps) {
  if (timestamps.size() < 2) return 0.0;
  std::vector<std::int64_t> gaps;
  gaps.reserve(timestamps.size() - 1);
  for (std::size_t i = 1; i < timestamps.size(); ++i) {
    gaps.push_back(timestamps[i] - timestamps[i - 1]);
  }
  std::sort(gaps.begin(), gaps.end());
  const std::size_t mid = gaps.size() / 2;
  if (gaps.size() % 2 == 1) return static_cast<double>(gaps[mid]);
  return 0.5 * static_cast<double>(gaps[mid - 1] + gaps[mid]);
}

}  // namespace

Dataset load_csv(const std::string& path, const FeatureSchema& schema) {
  schema.validate();
  std::ifstream file(path);
  if (!file) throw DataError("cannot open CSV file: " + path);

  std::string line;
  if (!std::getline(file, line)) throw DataError("empty CSV file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);

  auto column_of = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw DataError("CSV is missing required column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };

  const std::size_t ts_col = column_of(schema.timestamp_name);
  std::vector<std::size_t> value_cols;
  const auto value_names = schema.column_names();
  for (const auto& name : value_names) value_cols.push_back(column_of(name));

  std::vector<std::int64_t> timestamps;
  std::vector<double> values;
  std::size_t row = 0;
  while (std::getline(file, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row;
    const auto fields = split_line(line);
    if (fields.size() < header.size()) {
      throw DataError("row " + std::to_string(row) + ": expected " +
                      std::to_string(header.size()) + " fields, got " +
                      std::to_string(fields.size()));
    }
    const std::int64_t ts = parse_iso8601_utc(fields[ts_col]);
    if (!timestamps.empty() && ts <= timestamps.back()) {
      throw DataError("row " + std::to_string(row) +
                      ": timestamps are not strictly increasing");
    }
    timestamps.push_back(ts);
    for (std::size_t c = 0; c < value_cols.size(); ++c) {
      values.push_back(parse_number(fields[value_cols[c]], row, value_names[c]));
    }
  }
  if (timestamps.empty()) throw DataError("CSV has no data rows: " + path);

  Dataset data;
  data.schema = schema;
  data.timestamps = std::move(timestamps);
  data.rows.resize(static_cast<Index>(data.timestamps.size()),
                   static_cast<Index>(value_names.size()));
  for (Index r = 0; r < data.rows.rows(); ++r) {
    for (Index c = 0; c < data.rows.cols(); ++c) {
      data.rows(r, c) = values[static_cast<std::size_t>(r) * value_names.size() +
                               static_cast<std::size_t>(c)];
    }
  }
  data.sampling_interval_s = median_gap(data.timestamps);
  return data;
}

void write_csv(const std::string& path, const Dataset& data) {
  std::ofstream file(path);
  if (!file) throw DataError("cannot open CSV file for writing: " + path);
  file << data.schema.timestamp_name;
  for (const auto& name : data.schema.column_names()) file << ',' << name;
  file << '\n';
  char buf[40];
  for (Index r = 0; r < data.row_count(); ++r) {
    file << format_iso8601_utc(data.timestamps[static_cast<std::size_t>(r)]);
    for (Index c = 0; c < data.rows.cols(); ++c) {
      std::snprintf(buf, sizeof(buf), "%.10g", data.rows(r, c));
      file << ',' << buf;
    }
    file << '\n';
  }
  if (!file) throw DataError("failed while writing CSV: " + path);
}

}  // namespace driftmon
