#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "gridpca/network.hpp"
#include "gridpca/timeseries.hpp"

namespace gridpca {

/// Parameters of the synthetic weather generator: exponential spatial
/// correlation kernels factorized into Gaussian random fields, AR(1) temporal
/// noise, and a clipped diurnal/seasonal solar envelope.
struct WeatherParams {
  double wind_correlation_length_km = 273.0;
  double solar_correlation_length_km = 400.0;
  double wind_mean_cf = 0.35;
  double wind_noise_std = 0.18;
  double wind_seasonal_amp = 0.25;          // winter boost of the wind mean
  double wind_seasonal_phase_days = 15.0;   // day of year of the wind maximum
  double solar_clear_sky_cf = 0.75;         // clear-sky envelope peak
  double solar_seasonal_amp = 0.40;         // summer boost, peak around day 172
  double solar_noise_std = 0.25;            // cloud-field noise
  double solar_peak_hour = 12.0;            // local hour of the envelope maximum
  double east_west_km_per_hour = 1180.0;    // local-time shift per km easting
  double noise_autocorr_hours = 6.0;
  double kernel_jitter = 1e-10;             // diagonal added before factorization
  std::uint64_t seed = 0;

  void validate() const;
};

/// Per-country wind share alpha and the per-node installed capacities that
/// realize it (capacity proportional to the mean capacity factor).
struct ShareProfile {
  std::vector<std::string> countries;   // sorted
  std::vector<double> alpha;            // aligned with countries, in [0,1]
  Eigen::VectorXd wind_capacity_mw;     // per node, network order
  Eigen::VectorXd solar_capacity_mw;

  double alpha_for(const std::string& country) const;
};

struct WeatherFields {
  TimeSeriesEnsemble wind_cf;
  TimeSeriesEnsemble solar_cf;
};

/// Capacity-factor fields in [0,1], bit-reproducible for a fixed seed.
/// Requires hours >= 24.
WeatherFields synth_weather(const Network& network, const WeatherParams& params, int hours,
                            std::int64_t start_time);

/// Deterministic load profile mean_load * (1 + 0.2 diurnal + 0.1 weekly).
TimeSeriesEnsemble synth_load(const Network& network, int hours, std::int64_t start_time);

/// Per-country wind share minimizing the summed nodal generation variance,
/// subject to 100% average renewable penetration. Closed-form quadratic
/// minimum clipped to [0,1].
ShareProfile optimize_shares(const TimeSeriesEnsemble& wind_cf,
                             const TimeSeriesEnsemble& solar_cf, const TimeSeriesEnsemble& load,
                             const Network& network);

/// g_n(t) = wind_capacity_n * wind_cf_n(t) + solar_capacity_n * solar_cf_n(t).
TimeSeriesEnsemble renewable_generation(const ShareProfile& shares,
                                        const TimeSeriesEnsemble& wind_cf,
                                        const TimeSeriesEnsemble& solar_cf);

/// Elementwise generation minus load on aligned ensembles.
TimeSeriesEnsemble compute_mismatch(const TimeSeriesEnsemble& generation,
                                    const TimeSeriesEnsemble& load);

struct BalancingResult {
  TimeSeriesEnsemble balancing;   // b: curtailment minus load-proportional backup
  TimeSeriesEnsemble injections;  // p = mismatch - balancing, sums to zero per snapshot
};

/// Curtailment proportional to the nodal excess, backup proportional to the
/// mean load: b_n(t) = max(0, d_n(t)) - (<l_n> / sum <l>) * sum_m max(0, -d_m(t)).
BalancingResult apply_balancing(const TimeSeriesEnsemble& mismatch,
                                const Eigen::VectorXd& mean_loads);

}  // namespace gridpca
