#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace gridpca {

/// Hourly ensemble of per-node (or per-line) values. Rows follow `timestamps`,
/// columns follow `labels`. Values are MW, or dimensionless for capacity factors.
struct TimeSeriesEnsemble {
  std::vector<std::int64_t> timestamps;  // unix seconds, strictly increasing, hourly
  std::vector<std::string> labels;
  Eigen::MatrixXd values;  // T x D

  Eigen::Index steps() const { return values.rows(); }
  Eigen::Index dimension() const { return values.cols(); }

  /// Checks strictly increasing uniform hourly timestamps and matching label count.
  void validate() const;
};

/// CSV with a `timestamp` first column (ISO-8601) and one column per label.
TimeSeriesEnsemble read_series_csv(const std::string& path);
void write_series_csv(const TimeSeriesEnsemble& series, const std::string& path);

/// Throws validation_error when timestamps or labels differ.
void require_aligned(const TimeSeriesEnsemble& a, const TimeSeriesEnsemble& b);

}  // namespace gridpca
