#include "gridpca/timeseries.hpp"

#include <fstream>

#include "gridpca/csv.hpp"
#include "gridpca/errors.hpp"
#include "gridpca/timeutil.hpp"

namespace gridpca {

void TimeSeriesEnsemble::validate() const {
  if (static_cast<Eigen::Index>(labels.size()) != values.cols()) {
    throw validation_error("time series: " + std::to_string(labels.size()) + " labels but " +
                           std::to_string(values.cols()) + " value columns");
  }
  if (static_cast<Eigen::Index>(timestamps.size()) != values.rows()) {
    throw validation_error("time series: " + std::to_string(timestamps.size()) +
                           " timestamps but " + std::to_string(values.rows()) + " value rows");
  }
  for (std::size_t t = 1; t < timestamps.size(); ++t) {
    if (timestamps[t] - timestamps[t - 1] != 3600) {
      throw validation_error("time series: timestamps must be strictly increasing with uniform "
                             "hourly spacing; offending step at " +
                             format_iso8601(timestamps[t]));
    }
  }
}

TimeSeriesEnsemble read_series_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (table.header.empty() || table.header[0] != "timestamp") {
    throw validation_error(path + ":1: first column must be 'timestamp'");
  }
  TimeSeriesEnsemble series;
  series.labels.assign(table.header.begin() + 1, table.header.end());
  const Eigen::Index dim = static_cast<Eigen::Index>(series.labels.size());
  series.values.resize(static_cast<Eigen::Index>(table.rows.size()), dim);
  series.timestamps.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const std::size_t line_no = table.line_numbers[r];
    std::int64_t t;
    try {
      t = parse_iso8601(row[0]);
    } catch (const validation_error& e) {
      throw validation_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    series.timestamps.push_back(t);
    for (Eigen::Index c = 0; c < dim; ++c) {
      series.values(static_cast<Eigen::Index>(r), c) =
          parse_double(row[static_cast<std::size_t>(c) + 1], path, line_no,
                       series.labels[static_cast<std::size_t>(c)]);
    }
  }
  series.validate();
  return series;
}

void write_series_csv(const TimeSeriesEnsemble& series, const std::string& path) {
  series.validate();
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write file '" + path + "'");
  out << "timestamp";
  for (const auto& label : series.labels) out << ',' << label;
  out << '\n';
  for (Eigen::Index t = 0; t < series.steps(); ++t) {
    out << format_iso8601(series.timestamps[static_cast<std::size_t>(t)]);
    for (Eigen::Index c = 0; c < series.dimension(); ++c) {
      out << ',' << format_double(series.values(t, c));
    }
    out << '\n';
  }
}

void require_aligned(const TimeSeriesEnsemble& a, const TimeSeriesEnsemble& b) {
  if (a.timestamps != b.timestamps) {
    throw validation_error("time series are not aligned: timestamps differ");
  }
  if (a.labels != b.labels) {
    throw validation_error("time series are not aligned: labels differ");
  }
}

}  // namespace gridpca
