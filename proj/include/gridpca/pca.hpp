#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "gridpca/timeseries.hpp"

namespace gridpca {

/// Eigendecomposition of a covariance matrix: eigenvalues sorted descending
/// (negative round-off clamped to zero), normalized eigenvalues summing to
/// one, orthonormal axes with the largest-magnitude entry of each axis made
/// positive. `mean` and `amplitudes` stay empty until computed from a series.
struct PcaResult {
  Eigen::VectorXd mean;                    // D
  Eigen::VectorXd eigenvalues;             // D, descending
  Eigen::VectorXd normalized_eigenvalues;  // D, sums to 1
  Eigen::MatrixXd axes;                    // D x D, one axis per column
  Eigen::MatrixXd amplitudes;              // T x D, projections of mean-free data
};

/// Sample covariance with divisor T-1, columns centered. Requires T >= 2.
Eigen::MatrixXd covariance(const TimeSeriesEnsemble& series);

/// Symmetrizes the input (average with its transpose) and eigendecomposes.
PcaResult pca(const Eigen::MatrixXd& cov);

/// Projections of the mean-free series onto the axes, one column per axis.
Eigen::MatrixXd amplitudes(const TimeSeriesEnsemble& series, const PcaResult& result);

/// covariance + pca + mean and amplitudes in one pass.
PcaResult analyze(const TimeSeriesEnsemble& series);

/// Smallest K whose leading normalized eigenvalues sum to at least `threshold`.
int count_k(const Eigen::VectorXd& normalized_eigenvalues, double threshold = 0.95);

struct PsdPoint {
  double frequency_per_hour;
  double power;
};

/// One-sided periodogram |DFT|^2 / T of the mean-removed amplitude, interior
/// bins doubled so the total power equals the energy sum((x - mean)^2).
/// Frequencies run from 0 to Nyquist. Requires T >= 4.
std::vector<PsdPoint> psd(const Eigen::VectorXd& amplitude, double sample_interval_hours);

/// Average amplitude per hour of day. Hours without samples carry NaN and a
/// zero sample count.
struct DaytimeProfile {
  std::array<double, 24> mean;
  std::array<int, 24> samples;
};
DaytimeProfile daytime_profile(const Eigen::VectorXd& amplitude,
                               const std::vector<std::int64_t>& timestamps);

}  // namespace gridpca
