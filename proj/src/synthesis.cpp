#include "gridpca/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gridpca/errors.hpp"
#include "gridpca/timeutil.hpp"

namespace gridpca {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kYearDays = 365.25;

void check_series_matches_network(const TimeSeriesEnsemble& series, const Network& network,
                                  const char* name) {
  if (series.labels != network.node_ids()) {
    throw validation_error(std::string(name) + " labels do not match the network node order");
  }
}

// Factor of an exponential-kernel covariance matrix, so that factor * z with
// iid standard normal z has covariance exp(-d/length).
Eigen::MatrixXd kernel_factor(const Network& network, double length_km, double jitter) {
  const Eigen::Index n = network.node_count();
  Eigen::MatrixXd kernel(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const auto& a = network.nodes[static_cast<std::size_t>(i)];
      const auto& b = network.nodes[static_cast<std::size_t>(j)];
      const double d = std::hypot(a.x_km - b.x_km, a.y_km - b.y_km);
      kernel(i, j) = kernel(j, i) = std::exp(-d / length_km);
    }
    kernel(i, i) += jitter;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(kernel);
  if (es.info() != Eigen::Success) throw numeric_error("synth_weather: kernel factorization failed");
  const double max_eig = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-8 * std::max(max_eig, 1.0)) {
    throw validation_error(
        "synth_weather: kernel matrix not positive semidefinite after jitter; "
        "increase kernel_jitter");
  }
  return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

void WeatherParams::validate() const {
  if (!(wind_correlation_length_km > 0.0) || !(solar_correlation_length_km > 0.0)) {
    throw validation_error("weather: correlation lengths must be positive");
  }
  if (!(noise_autocorr_hours > 0.0)) {
    throw validation_error("weather: noise autocorrelation time must be positive");
  }
  if (!(east_west_km_per_hour > 0.0)) {
    throw validation_error("weather: east_west_km_per_hour must be positive");
  }
  if (wind_mean_cf < 0.0 || wind_mean_cf > 1.0 || solar_clear_sky_cf < 0.0 ||
      solar_clear_sky_cf > 1.0) {
    throw validation_error("weather: mean capacity factors must lie in [0,1]");
  }
  if (kernel_jitter < 0.0) throw validation_error("weather: kernel_jitter must be nonnegative");
}

double ShareProfile::alpha_for(const std::string& country) const {
  for (std::size_t i = 0; i < countries.size(); ++i) {
    if (countries[i] == country) return alpha[i];
  }
  throw validation_error("no share computed for country '" + country + "'");
}

WeatherFields synth_weather(const Network& network, const WeatherParams& params, int hours,
                            std::int64_t start_time) {
  network.validate();
  params.validate();
  if (hours < 24) throw validation_error("synth_weather: need at least 24 hours");

  const Eigen::Index n = network.node_count();
  const Eigen::MatrixXd wind_factor =
      kernel_factor(network, params.wind_correlation_length_km, params.kernel_jitter);
  const Eigen::MatrixXd solar_factor =
      kernel_factor(network, params.solar_correlation_length_km, params.kernel_jitter);

  const double phi = std::exp(-1.0 / params.noise_autocorr_hours);
  const double innovation = std::sqrt(1.0 - phi * phi);

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  WeatherFields fields;
  for (TimeSeriesEnsemble* series : {&fields.wind_cf, &fields.solar_cf}) {
    series->labels = network.node_ids();
    series->values.resize(hours, n);
    series->timestamps.resize(static_cast<std::size_t>(hours));
  }

  Eigen::VectorXd wind_state(n), solar_state(n), draw(n);
  for (int t = 0; t < hours; ++t) {
    const std::int64_t now = start_time + 3600ll * t;
    fields.wind_cf.timestamps[static_cast<std::size_t>(t)] = now;
    fields.solar_cf.timestamps[static_cast<std::size_t>(t)] = now;

    for (Eigen::Index i = 0; i < n; ++i) draw[i] = normal(rng);
    wind_state = (t == 0) ? draw : (phi * wind_state + innovation * draw).eval();
    for (Eigen::Index i = 0; i < n; ++i) draw[i] = normal(rng);
    solar_state = (t == 0) ? draw : (phi * solar_state + innovation * draw).eval();

    const Eigen::VectorXd wind_field = wind_factor * wind_state;
    const Eigen::VectorXd solar_field = solar_factor * solar_state;

    const double doy = day_of_year(now);
    const double hod = static_cast<double>(hour_of_day(now));
    const double wind_season =
        1.0 + params.wind_seasonal_amp *
                  std::cos(kTwoPi * (doy - params.wind_seasonal_phase_days) / kYearDays);
    const double solar_season =
        1.0 + params.solar_seasonal_amp * std::cos(kTwoPi * (doy - 172.0) / kYearDays);

    for (Eigen::Index i = 0; i < n; ++i) {
      const double wind = params.wind_mean_cf * wind_season +
                          params.wind_noise_std * wind_field[i];
      fields.wind_cf.values(t, i) = std::clamp(wind, 0.0, 1.0);

      const double local_hour =
          hod + network.nodes[static_cast<std::size_t>(i)].x_km / params.east_west_km_per_hour;
      const double envelope =
          std::max(0.0, std::cos(kTwoPi * (local_hour - params.solar_peak_hour) / 24.0));
      const double cloud = std::clamp(0.75 + params.solar_noise_std * solar_field[i], 0.0, 1.0);
      fields.solar_cf.values(t, i) =
          std::min(1.0, params.solar_clear_sky_cf * envelope * solar_season * cloud);
    }
  }
  return fields;
}

TimeSeriesEnsemble synth_load(const Network& network, int hours, std::int64_t start_time) {
  network.validate();
  if (hours < 1) throw validation_error("synth_load: need at least 1 hour");
  TimeSeriesEnsemble load;
  load.labels = network.node_ids();
  load.values.resize(hours, network.node_count());
  load.timestamps.resize(static_cast<std::size_t>(hours));
  for (int t = 0; t < hours; ++t) {
    const std::int64_t now = start_time + 3600ll * t;
    load.timestamps[static_cast<std::size_t>(t)] = now;
    const double diurnal = std::cos(kTwoPi * (hour_of_day(now) - 18.0) / 24.0);
    const double weekly = std::cos(kTwoPi * hour_of_week(now) / 168.0);
    const double shape = 1.0 + 0.2 * diurnal + 0.1 * weekly;
    for (Eigen::Index i = 0; i < network.node_count(); ++i) {
      load.values(t, i) = network.nodes[static_cast<std::size_t>(i)].mean_load_mw * shape;
    }
  }
  return load;
}

ShareProfile optimize_shares(const TimeSeriesEnsemble& wind_cf,
                             const TimeSeriesEnsemble& solar_cf, const TimeSeriesEnsemble& load,
                             const Network& network) {
  network.validate();
  require_aligned(wind_cf, solar_cf);
  require_aligned(wind_cf, load);
  check_series_matches_network(wind_cf, network, "capacity factor");
  const Eigen::Index t = wind_cf.steps();
  if (t < 2) throw validation_error("optimize_shares: need at least 2 time steps");
  const Eigen::Index n = network.node_count();

  const Eigen::RowVectorXd wind_mean = wind_cf.values.colwise().mean();
  const Eigen::RowVectorXd solar_mean = solar_cf.values.colwise().mean();
  const Eigen::RowVectorXd load_mean = load.values.colwise().mean();
  const Eigen::MatrixXd wind_centered = wind_cf.values.rowwise() - wind_mean;
  const Eigen::MatrixXd solar_centered = solar_cf.values.rowwise() - solar_mean;
  const double divisor = static_cast<double>(t - 1);

  std::map<std::string, std::vector<Eigen::Index>> members;
  for (Eigen::Index i = 0; i < n; ++i) {
    members[network.nodes[static_cast<std::size_t>(i)].country].push_back(i);
  }

  ShareProfile shares;
  shares.wind_capacity_mw = Eigen::VectorXd::Zero(n);
  shares.solar_capacity_mw = Eigen::VectorXd::Zero(n);

  for (const auto& [country, nodes] : members) {
    double sum_load = 0.0, wind_sq = 0.0, solar_sq = 0.0;
    for (const Eigen::Index i : nodes) {
      sum_load += load_mean[i];
      wind_sq += wind_mean[i] * wind_mean[i];
      solar_sq += solar_mean[i] * solar_mean[i];
    }
    if (!(sum_load > 0.0)) {
      throw validation_error("optimize_shares: country '" + country +
                             "' has non-positive average load");
    }
    const bool has_wind = wind_sq > 0.0;
    const bool has_solar = solar_sq > 0.0;
    if (!has_wind && !has_solar) {
      throw validation_error("optimize_shares: country '" + country +
                             "' has zero wind and zero solar resource");
    }

    // With capacity at node i proportional to the mean capacity factor, a full
    // wind build-out produces a_i(t) = kw * <w_i> * w_i(t) covering the load on
    // average; same for solar. The share alpha scales between them and the
    // summed nodal variance is a quadratic in alpha.
    const double kw = has_wind ? sum_load / wind_sq : 0.0;
    const double ks = has_solar ? sum_load / solar_sq : 0.0;

    double alpha;
    if (!has_wind) {
      alpha = 0.0;
    } else if (!has_solar) {
      alpha = 1.0;
    } else {
      double var_wind = 0.0, var_solar = 0.0, cov = 0.0;
      for (const Eigen::Index i : nodes) {
        const double vw = wind_centered.col(i).squaredNorm() / divisor;
        const double vs = solar_centered.col(i).squaredNorm() / divisor;
        const double cws = wind_centered.col(i).dot(solar_centered.col(i)) / divisor;
        var_wind += kw * kw * wind_mean[i] * wind_mean[i] * vw;
        var_solar += ks * ks * solar_mean[i] * solar_mean[i] * vs;
        cov += kw * ks * wind_mean[i] * solar_mean[i] * cws;
      }
      const double denom = var_wind + var_solar - 2.0 * cov;  // = sum Var(a_i - b_i) >= 0
      if (denom > 0.0) {
        alpha = std::clamp((var_solar - cov) / denom, 0.0, 1.0);
      } else {
        alpha = var_wind < var_solar ? 1.0 : (var_wind > var_solar ? 0.0 : 0.5);
      }
    }

    shares.countries.push_back(country);
    shares.alpha.push_back(alpha);
    for (const Eigen::Index i : nodes) {
      shares.wind_capacity_mw[i] = alpha * kw * wind_mean[i];
      shares.solar_capacity_mw[i] = (1.0 - alpha) * ks * solar_mean[i];
    }
  }
  return shares;
}

TimeSeriesEnsemble renewable_generation(const ShareProfile& shares,
                                        const TimeSeriesEnsemble& wind_cf,
                                        const TimeSeriesEnsemble& solar_cf) {
  require_aligned(wind_cf, solar_cf);
  if (wind_cf.dimension() != shares.wind_capacity_mw.size()) {
    throw validation_error("renewable_generation: capacity vector does not match series");
  }
  TimeSeriesEnsemble generation;
  generation.timestamps = wind_cf.timestamps;
  generation.labels = wind_cf.labels;
  generation.values =
      wind_cf.values * shares.wind_capacity_mw.asDiagonal() +
      solar_cf.values * shares.solar_capacity_mw.asDiagonal();
  return generation;
}

TimeSeriesEnsemble compute_mismatch(const TimeSeriesEnsemble& generation,
                                    const TimeSeriesEnsemble& load) {
  require_aligned(generation, load);
  TimeSeriesEnsemble mismatch;
  mismatch.timestamps = generation.timestamps;
  mismatch.labels = generation.labels;
  mismatch.values = generation.values - load.values;
  return mismatch;
}

BalancingResult apply_balancing(const TimeSeriesEnsemble& mismatch,
                                const Eigen::VectorXd& mean_loads) {
  mismatch.validate();
  if (mismatch.dimension() != mean_loads.size()) {
    throw validation_error("apply_balancing: mean loads do not match the series dimension");
  }
  if (mean_loads.minCoeff() < 0.0) {
    throw validation_error("apply_balancing: mean loads must be nonnegative");
  }
  const double total_load = mean_loads.sum();
  if (!(total_load > 0.0)) {
    throw validation_error("apply_balancing: mean loads are all zero");
  }
  const Eigen::VectorXd backup_share = mean_loads / total_load;

  BalancingResult result;
  result.balancing.timestamps = mismatch.timestamps;
  result.balancing.labels = mismatch.labels;
  result.injections.timestamps = mismatch.timestamps;
  result.injections.labels = mismatch.labels;

  const Eigen::MatrixXd excess = mismatch.values.cwiseMax(0.0);
  const Eigen::VectorXd deficit_total = (-mismatch.values).cwiseMax(0.0).rowwise().sum();
  result.balancing.values = excess - deficit_total * backup_share.transpose();
  result.injections.values = mismatch.values - result.balancing.values;
  return result;
}

}  // namespace gridpca
