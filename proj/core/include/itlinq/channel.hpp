#pragma once

#include <variant>
#include <vector>

#include "itlinq/rng.hpp"
#include "itlinq/topology.hpp"

namespace itlinq {

// g0 * d^(-alpha), deterministic.
struct PathLossModel {
  double g0 = 1.0;
  double alpha = 2.5;
};

// PathLoss times an independent Exp(1) power fade per entry, one draw per
// scheduling block.
struct RayleighPathLossModel {
  double g0 = 1.0;
  double alpha = 2.5;
};

enum class ShadowScope { All, DirectOnly };

// LoS street-level model with breakpoint slope change, log-normal
// shadowing, and a fixed per-device antenna gain.
struct Itu1411Model {
  double carrier_hz = 2.4e9;
  double h_b = 1.5;  // base antenna height (m)
  double h_m = 1.5;  // mobile antenna height (m)
  double shadow_sigma_db = 10.0;
  double antenna_gain_db_per_device = -2.5;  // applied twice per path
  ShadowScope shadow_scope = ShadowScope::All;
};

using ChannelModel =
    std::variant<PathLossModel, RayleighPathLossModel, Itu1411Model>;

struct LinkBudget {
  double tx_power_dbm = 0.0;
  double noise_power_dbm = 0.0;  // already includes bandwidth and noise figure
  double bandwidth_hz = 1.0;     // for dimensioned rate output only
};

// Linear power gains; g[i*n+j] = squared gain from source j to destination i.
struct GainTable {
  int n = 0;
  std::vector<double> g;

  double at(int i, int j) const { return g[static_cast<std::size_t>(i) * n + j]; }
  double& at(int i, int j) { return g[static_cast<std::size_t>(i) * n + j]; }
};

// Linear-scale SNR/INR. inr[i*n+j] is the interference-to-noise ratio at
// destination i from source j; the diagonal is stored as 0 and unused.
struct SnrTable {
  int n = 0;
  std::vector<double> snr;
  std::vector<double> inr;

  double inr_at(int i, int j) const {
    return inr[static_cast<std::size_t>(i) * n + j];
  }
};

double db_to_linear(double db);
double linear_to_db(double v);
double dbm_to_mw(double dbm);

// g0 * d^(-alpha); d = 0 is rejected (the generators cannot produce it, so
// it indicates a topology bug).
double pathloss_gain(double d, double g0, double alpha);

// Exp(mean 1) power fade.
double rayleigh_fade(Rng& rng);

// Piecewise LoS loss in dB: L_bp + 6 + 20*log10(d/R_bp) below the
// breakpoint, 40*log10 above, with R_bp = 4*h_b*h_m/lambda and
// L_bp = |20*log10(lambda^2/(8*pi*h_b*h_m))|.
double itu1411_loss_db(double d, double carrier_hz, double h_b, double h_m);

// Gaussian in dB, mean 0, std sigma_db.
double lognormal_shadow_db(Rng& rng, double sigma_db);

// psd + 10*log10(bandwidth) + noise_figure, all dB terms.
double noise_power_dbm(double psd_dbm_hz, double bandwidth_hz,
                       double noise_figure_db);

// Assemble the n x n gain table from geometry under the given model.
// Random draws (fades, shadowing) come from `rng` in a fixed documented
// order: row-major over (dest, src) pairs; DirectOnly shadowing draws the
// n diagonal samples in index order.
GainTable compute_gain_table(const LinkTopology& t, const ChannelModel& m,
                             Rng& rng);

// snr[i] = P*g[i][i]/N, inr[i][j] = P*g[i][j]/N; P and N converted from
// dBm once.
SnrTable compute_snr_table(const GainTable& g, const LinkBudget& b);

}  // namespace itlinq
