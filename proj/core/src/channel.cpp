#include "itlinq/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace itlinq {

namespace {
constexpr double kSpeedOfLight = 299792458.0;  // m/s
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double v) { return 10.0 * std::log10(v); }

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double pathloss_gain(double d, double g0, double alpha) {
  if (d <= 0.0)
    throw std::invalid_argument("pathloss_gain: d must be > 0");
  return g0 * std::pow(d, -alpha);
}

double rayleigh_fade(Rng& rng) { return rng.exponential(1.0); }

double itu1411_loss_db(double d, double carrier_hz, double h_b, double h_m) {
  if (d <= 0.0)
    throw std::invalid_argument("itu1411_loss_db: d must be > 0");
  const double lambda = kSpeedOfLight / carrier_hz;
  const double r_bp = 4.0 * h_b * h_m / lambda;
  const double l_bp =
      std::abs(20.0 * std::log10(lambda * lambda / (8.0 * std::numbers::pi_v<double> * h_b * h_m)));
  const double slope = d <= r_bp ? 20.0 : 40.0;
  return l_bp + 6.0 + slope * std::log10(d / r_bp);
}

double lognormal_shadow_db(Rng& rng, double sigma_db) {
  if (sigma_db < 0.0)
    throw std::invalid_argument("lognormal_shadow_db: sigma must be >= 0");
  if (sigma_db == 0.0) return 0.0;
  return rng.gaussian(0.0, sigma_db);
}

double noise_power_dbm(double psd_dbm_hz, double bandwidth_hz,
                       double noise_figure_db) {
  if (bandwidth_hz <= 0.0)
    throw std::invalid_argument("noise_power_dbm: bandwidth must be > 0");
  return psd_dbm_hz + 10.0 * std::log10(bandwidth_hz) + noise_figure_db;
}

namespace {

double link_distance(const LinkTopology& t, int dest, int src) {
  return std::hypot(t.dst[dest].x - t.src[src].x, t.dst[dest].y - t.src[src].y);
}

GainTable pathloss_table(const LinkTopology& t, double g0, double alpha) {
  GainTable out;
  out.n = t.n;
  out.g.resize(static_cast<std::size_t>(t.n) * t.n);
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j)
      out.at(i, j) = pathloss_gain(link_distance(t, i, j), g0, alpha);
  return out;
}

}  // namespace

GainTable compute_gain_table(const LinkTopology& t, const ChannelModel& m,
                             Rng& rng) {
  if (const auto* pl = std::get_if<PathLossModel>(&m))
    return pathloss_table(t, pl->g0, pl->alpha);

  if (const auto* rl = std::get_if<RayleighPathLossModel>(&m)) {
    GainTable out = pathloss_table(t, rl->g0, rl->alpha);
    for (int i = 0; i < t.n; ++i)
      for (int j = 0; j < t.n; ++j) out.at(i, j) *= rayleigh_fade(rng);
    return out;
  }

  const auto& itu = std::get<Itu1411Model>(m);
  GainTable out;
  out.n = t.n;
  out.g.resize(static_cast<std::size_t>(t.n) * t.n);
  const double ant_db = 2.0 * itu.antenna_gain_db_per_device;  // both ends
  for (int i = 0; i < t.n; ++i)
    for (int j = 0; j < t.n; ++j) {
      const double loss =
          itu1411_loss_db(link_distance(t, i, j), itu.carrier_hz, itu.h_b, itu.h_m);
      out.at(i, j) = db_to_linear(-loss + ant_db);
    }
  if (itu.shadow_scope == ShadowScope::All) {
    for (int i = 0; i < t.n; ++i)
      for (int j = 0; j < t.n; ++j)
        out.at(i, j) *= db_to_linear(lognormal_shadow_db(rng, itu.shadow_sigma_db));
  } else {
    for (int i = 0; i < t.n; ++i)
      out.at(i, i) *= db_to_linear(lognormal_shadow_db(rng, itu.shadow_sigma_db));
  }
  return out;
}

SnrTable compute_snr_table(const GainTable& g, const LinkBudget& b) {
  const double p_over_n = db_to_linear(b.tx_power_dbm - b.noise_power_dbm);
  SnrTable s;
  s.n = g.n;
  s.snr.resize(g.n);
  s.inr.resize(static_cast<std::size_t>(g.n) * g.n, 0.0);
  for (int i = 0; i < g.n; ++i) {
    s.snr[i] = p_over_n * g.at(i, i);
    for (int j = 0; j < g.n; ++j)
      if (j != i) s.inr[static_cast<std::size_t>(i) * g.n + j] = p_over_n * g.at(i, j);
  }
  return s;
}

}  // namespace itlinq
