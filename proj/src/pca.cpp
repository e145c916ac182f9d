#include "gridpca/pca.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <complex>
#include <limits>

#include "gridpca/errors.hpp"
#include "gridpca/numeric.hpp"
#include "gridpca/timeutil.hpp"

namespace gridpca {

Eigen::MatrixXd covariance(const TimeSeriesEnsemble& series) {
  series.validate();
  const Eigen::Index t = series.steps();
  if (t < 2) throw validation_error("covariance: need at least 2 time steps");
  const Eigen::RowVectorXd mean = series.values.colwise().mean();
  const Eigen::MatrixXd centered = series.values.rowwise() - mean;
  return centered.transpose() * centered / static_cast<double>(t - 1);
}

PcaResult pca(const Eigen::MatrixXd& cov) {
  if (cov.rows() != cov.cols()) throw validation_error("pca: covariance must be square");
  if (!cov.allFinite()) throw validation_error("pca: covariance has non-finite entries");
  const Eigen::MatrixXd sym = 0.5 * (cov + cov.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  if (es.info() != Eigen::Success) throw numeric_error("pca: eigendecomposition failed");

  const Eigen::Index d = cov.rows();
  PcaResult result;
  result.eigenvalues.resize(d);
  result.axes.resize(d, d);
  // Solver returns ascending order; store descending with negatives clamped.
  for (Eigen::Index i = 0; i < d; ++i) {
    result.eigenvalues[i] = std::max(es.eigenvalues()[d - 1 - i], 0.0);
    result.axes.col(i) = es.eigenvectors().col(d - 1 - i);
  }
  fix_column_signs(result.axes);
  const double total = result.eigenvalues.sum();
  result.normalized_eigenvalues =
      total > 0.0 ? (result.eigenvalues / total).eval() : Eigen::VectorXd::Zero(d).eval();
  return result;
}

Eigen::MatrixXd amplitudes(const TimeSeriesEnsemble& series, const PcaResult& result) {
  series.validate();
  if (series.dimension() != result.axes.rows()) {
    throw validation_error("amplitudes: series dimension " + std::to_string(series.dimension()) +
                           " does not match axes dimension " + std::to_string(result.axes.rows()));
  }
  const Eigen::RowVectorXd mean = series.values.colwise().mean();
  return (series.values.rowwise() - mean) * result.axes;
}

PcaResult analyze(const TimeSeriesEnsemble& series) {
  PcaResult result = pca(covariance(series));
  result.mean = series.values.colwise().mean().transpose();
  result.amplitudes = amplitudes(series, result);
  return result;
}

int count_k(const Eigen::VectorXd& normalized_eigenvalues, double threshold) {
  if (normalized_eigenvalues.size() == 0) throw validation_error("count_k: empty spectrum");
  if (!(threshold > 0.0) || threshold > 1.0) {
    throw validation_error("count_k: threshold must lie in (0, 1]");
  }
  double cumulative = 0.0;
  for (Eigen::Index k = 0; k < normalized_eigenvalues.size(); ++k) {
    cumulative += normalized_eigenvalues[k];
    // Slack absorbs round-off when the eigenvalues sum to 1 - eps and the
    // threshold is exactly 1.
    if (cumulative >= threshold - 1e-9) return static_cast<int>(k) + 1;
  }
  return static_cast<int>(normalized_eigenvalues.size());
}

std::vector<PsdPoint> psd(const Eigen::VectorXd& amplitude, double sample_interval_hours) {
  const Eigen::Index t = amplitude.size();
  if (t < 4) throw validation_error("psd: need at least 4 samples");
  if (!(sample_interval_hours > 0.0)) throw validation_error("psd: sample interval must be positive");

  const double mean = amplitude.mean();
  std::vector<double> centered(static_cast<std::size_t>(t));
  for (Eigen::Index i = 0; i < t; ++i) centered[static_cast<std::size_t>(i)] = amplitude[i] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, centered);

  const Eigen::Index half = t / 2;
  std::vector<PsdPoint> points;
  points.reserve(static_cast<std::size_t>(half) + 1);
  for (Eigen::Index k = 0; k <= half; ++k) {
    const bool edge = (k == 0) || (t % 2 == 0 && k == half);
    const double weight = edge ? 1.0 : 2.0;
    const double mag2 = std::norm(spectrum[static_cast<std::size_t>(k)]);
    points.push_back({static_cast<double>(k) /
                          (static_cast<double>(t) * sample_interval_hours),
                      weight * mag2 / static_cast<double>(t)});
  }
  return points;
}

DaytimeProfile daytime_profile(const Eigen::VectorXd& amplitude,
                               const std::vector<std::int64_t>& timestamps) {
  if (static_cast<std::size_t>(amplitude.size()) != timestamps.size()) {
    throw validation_error("daytime_profile: amplitude and timestamps differ in length");
  }
  DaytimeProfile profile;
  profile.mean.fill(0.0);
  profile.samples.fill(0);
  for (std::size_t i = 0; i < timestamps.size(); ++i) {
    const int h = hour_of_day(timestamps[i]);
    profile.mean[static_cast<std::size_t>(h)] += amplitude[static_cast<Eigen::Index>(i)];
    ++profile.samples[static_cast<std::size_t>(h)];
  }
  for (int h = 0; h < 24; ++h) {
    if (profile.samples[static_cast<std::size_t>(h)] > 0) {
      profile.mean[static_cast<std::size_t>(h)] /= profile.samples[static_cast<std::size_t>(h)];
    } else {
      profile.mean[static_cast<std::size_t>(h)] = std::numeric_limits<double>::quiet_NaN();
    }
  }
  return profile;
}

}  // namespace gridpca
