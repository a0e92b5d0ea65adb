#include "itlinq/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "itlinq/channel.hpp"
#include "itlinq/itis.hpp"
#include "itlinq/rates.hpp"
#include "itlinq/rng.hpp"
#include "itlinq/scheduling.hpp"
#include "itlinq/topology.hpp"

namespace itlinq {

std::uint64_t trial_stream(std::uint64_t master_seed, std::uint64_t n_index,
                           std::uint64_t trial) {
  return Rng::substream(master_seed, (n_index << 32) + trial);
}

std::uint64_t role_stream(std::uint64_t trial_seed, StreamRole role) {
  return Rng::substream(trial_seed, static_cast<std::uint64_t>(role));
}

namespace {

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe mean_se(const std::vector<double>& xs) {
  MeanSe out;
  const std::size_t k = xs.size();
  if (k == 0) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(k);
  if (k < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / static_cast<double>(k - 1)) /
           std::sqrt(static_cast<double>(k));
  return out;
}

double median(std::vector<double> xs) {
  const std::size_t k = xs.size();
  std::sort(xs.begin(), xs.end());
  if (k % 2 == 1) return xs[k / 2];
  return 0.5 * (xs[k / 2 - 1] + xs[k / 2]);
}

std::string fmt_beta(double beta) {
  std::ostringstream os;
  os << "beta=" << beta;
  return os.str();
}

// Runs fn(t) for t in [0, trials). Work items only write to their own
// preallocated slots, so the thread count cannot influence the result.
template <typename F>
void parallel_trials(int threads, int trials, F&& fn) {
  if (threads == 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw == 0 ? 1 : static_cast<int>(hw);
  }
  threads = std::min(threads, trials);
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const int t = next.fetch_add(1, std::memory_order_relaxed);
        if (t >= trials) return;
        try {
          fn(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

LinkTopology make_topology(const ExperimentConfig& cfg, int n, double beta,
                           std::uint64_t seed) {
  switch (cfg.topology.model) {
    case TopologyModel::Disk:
      return gen_disk_topology(n, cfg.topology.R, cfg.topology.r0, beta, seed);
    case TopologyModel::Square:
      return gen_square_topology(n, cfg.topology.side, cfg.topology.len_min,
                                 cfg.topology.len_max, seed);
    case TopologyModel::ClosestSource:
      return gen_closest_source_topology(n, cfg.topology.R, seed);
  }
  throw ConfigError("unhandled topology model");
}

SnrTable trial_snr(const ExperimentConfig& cfg, const LinkTopology& topo,
                   std::uint64_t channel_seed) {
  Rng rng(channel_seed);
  const GainTable gains = compute_gain_table(topo, cfg.channel, rng);
  return compute_snr_table(gains, cfg.budget);
}

bool scheme_uses_priority(const SchemeSpec& s) {
  return s.scheme == "itlinq" || s.scheme == "fair_itlinq" ||
         s.scheme == "flashlinq";
}

Schedule run_scheme(const SchemeSpec& s, const SnrTable& snr,
                    const std::vector<int>& perm, int tdma_slot) {
  if (s.scheme == "itlinq") return itlinq_schedule(snr, perm, s.itlinq);
  if (s.scheme == "fair_itlinq") return fair_itlinq_schedule(snr, perm, s.fair);
  if (s.scheme == "flashlinq")
    return flashlinq_schedule(snr, perm, s.gamma_tx_db, s.gamma_rx_db,
                              s.rx_aggregate);
  if (s.scheme == "tdma") return tdma_schedule(snr.n, tdma_slot);
  return all_on_schedule(snr.n);
}

void sort_rows(std::vector<ResultRow>& rows) {
  std::sort(rows.begin(), rows.end(),
            [](const ResultRow& a, const ResultRow& b) {
              return std::tie(a.experiment, a.n, a.scheme, a.statistic) <
                     std::tie(b.experiment, b.n, b.scheme, b.statistic);
            });
}

void append_rate_rows(std::vector<RateRow>& out, int trial,
                      const std::string& scheme, const Schedule& sch,
                      const SnrTable& snr, const RateReport& rates) {
  for (int link = 0; link < snr.n; ++link) {
    RateRow row;
    row.trial = trial;
    row.scheme = scheme;
    row.link = link;
    row.active = sch.is_active(link);
    row.sinr_db = row.active ? linear_to_db(sinr(sch, snr, link))
                             : -std::numeric_limits<double>::infinity();
    row.rate_bits_s_hz = rates.per_link_bits_s_hz[link];
    out.push_back(std::move(row));
  }
}

// gamma for the theoretical curves. The normalized choice makes the
// beta < 1 prefactor 2*pi*R^2/(sqrt(3)*gamma^2) equal to one.
double theory_gamma(const ExperimentConfig& cfg, bool normalized) {
  if (normalized)
    return cfg.topology.R *
           std::sqrt(2.0 * std::acos(-1.0) / std::sqrt(3.0));
  const auto& pl = std::get<PathLossModel>(cfg.channel);
  const double p_over_n =
      db_to_linear(cfg.budget.tx_power_dbm - cfg.budget.noise_power_dbm);
  return gamma_constant(p_over_n, 1.0, pl.g0, cfg.topology.r0, pl.alpha);
}

struct CoverTrialOut {
  double inv_kappa_plain = 0.0;
  double kappa_plain = 0.0;
  double inv_kappa_fading = 0.0;
  double kappa_fading = 0.0;
  double gap_plain = 0.0;
  double gap_fading = 0.0;
};

// Shared driver for the three cover-statistics experiments. Per trial:
// disk drop, deterministic pathloss cover, and optionally a Rayleigh-faded
// cover on the same drop (fade draws from the Fading stream).
std::vector<CoverTrialOut> run_cover_trials(const ExperimentConfig& cfg,
                                            std::uint64_t series_index,
                                            int n, double beta, bool fading) {
  const auto& pl = std::get<PathLossModel>(cfg.channel);
  std::vector<CoverTrialOut> slots(static_cast<std::size_t>(cfg.trials));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  const double log2_3n = std::log2(3.0 * n);
  parallel_trials(cfg.threads, cfg.trials, [&](int t) {
    const std::uint64_t ts = trial_stream(cfg.master_seed, series_index,
                                          static_cast<std::uint64_t>(t));
    const LinkTopology topo = gen_disk_topology(
        n, cfg.topology.R, cfg.topology.r0, beta,
        role_stream(ts, StreamRole::Topology));
    CoverTrialOut& out = slots[static_cast<std::size_t>(t)];
    {
      Rng rng(role_stream(ts, StreamRole::Channel));
      const GainTable g = compute_gain_table(topo, ChannelModel{pl}, rng);
      const SnrTable snr = compute_snr_table(g, cfg.budget);
      const CoverResult cover = greedy_itis_cover(snr, order);
      out.kappa_plain = cover.kappa;
      out.inv_kappa_plain = 1.0 / cover.kappa;
      out.gap_plain = log2_3n / cover.kappa;
    }
    if (fading) {
      Rng rng(role_stream(ts, StreamRole::Fading));
      const GainTable g = compute_gain_table(
          topo, ChannelModel{RayleighPathLossModel{pl.g0, pl.alpha}}, rng);
      const SnrTable snr = compute_snr_table(g, cfg.budget);
      const CoverResult cover = greedy_itis_cover(snr, order);
      out.kappa_fading = cover.kappa;
      out.inv_kappa_fading = 1.0 / cover.kappa;
      out.gap_fading = log2_3n / cover.kappa;
    }
  });
  return slots;
}

std::vector<double> pluck(const std::vector<CoverTrialOut>& xs,
                          double CoverTrialOut::*field) {
  std::vector<double> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(x.*field);
  return out;
}

}  // namespace

ExperimentResult run_sum_rate_sweep(const ExperimentConfig& cfg) {
  ExperimentResult result;
  const std::string exp_name = experiment_name(cfg.experiment);
  const std::size_t n_schemes = cfg.schemes.size();

  for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
    const int n = cfg.n_list[ni];
    struct TrialOut {
      std::vector<double> sum_rate;     // per scheme
      std::vector<double> active;      // per scheme
      std::vector<RateRow> rate_rows;  // when dump_rates
    };
    std::vector<TrialOut> slots(static_cast<std::size_t>(cfg.trials));
    parallel_trials(cfg.threads, cfg.trials, [&](int t) {
      const std::uint64_t ts = trial_stream(cfg.master_seed, ni,
                                            static_cast<std::uint64_t>(t));
      const LinkTopology topo = make_topology(
          cfg, n, cfg.topology.beta, role_stream(ts, StreamRole::Topology));
      const SnrTable snr =
          trial_snr(cfg, topo, role_stream(ts, StreamRole::Channel));
      Rng prio(role_stream(ts, StreamRole::Priority));
      TrialOut& out = slots[static_cast<std::size_t>(t)];
      out.sum_rate.resize(n_schemes);
      out.active.resize(n_schemes);
      // Priority draws happen in scheme-list order; schemes that ignore
      // priority consume none, keeping the stream stable under edits to
      // the tail of the scheme list.
      for (std::size_t si = 0; si < n_schemes; ++si) {
        const SchemeSpec& spec = cfg.schemes[si];
        std::vector<int> perm;
        if (scheme_uses_priority(spec)) perm = prio.permutation(n);
        const Schedule sch = run_scheme(spec, snr, perm, t % n);
        const RateReport rates = link_rates(sch, snr);
        out.sum_rate[si] = rates.sum_bits_s_hz;
        out.active[si] = sch.active_count();
        if (cfg.dump_rates)
          append_rate_rows(out.rate_rows, t, spec.label, sch, snr, rates);
      }
    });

    for (std::size_t si = 0; si < n_schemes; ++si) {
      std::vector<double> sums, actives;
      for (const auto& s : slots) {
        sums.push_back(s.sum_rate[si]);
        actives.push_back(s.active[si]);
      }
      const MeanSe sr = mean_se(sums);
      const MeanSe ac = mean_se(actives);
      const std::string& label = cfg.schemes[si].label;
      result.rows.push_back({exp_name, n, label, "sum_rate_mean", sr.mean, sr.se});
      result.rows.push_back(
          {exp_name, n, label, "sum_rate_median", median(sums), 0.0});
      result.rows.push_back({exp_name, n, label, "active_mean", ac.mean, ac.se});
    }
    if (cfg.dump_rates)
      for (auto& s : slots)
        result.rate_rows.insert(result.rate_rows.end(), s.rate_rows.begin(),
                                s.rate_rows.end());
  }
  sort_rows(result.rows);
  return result;
}

ExperimentResult run_link_rate_cdf(const ExperimentConfig& cfg) {
  ExperimentResult result;
  const std::string exp_name = experiment_name(cfg.experiment);
  const int n = cfg.n_list.at(0);
  const std::size_t n_schemes = cfg.schemes.size();
  const int draws = cfg.priority_draws;

  struct TrialOut {
    // Per scheme: per-link rate averaged over the priority draws, the
    // matching per-trial mean sum rate, and mean active count.
    std::vector<std::vector<double>> link_avg;
    std::vector<double> sum_avg;
    std::vector<double> active_avg;
    std::vector<RateRow> rate_rows;
  };
  std::vector<TrialOut> slots(static_cast<std::size_t>(cfg.trials));

  parallel_trials(cfg.threads, cfg.trials, [&](int t) {
    const std::uint64_t ts =
        trial_stream(cfg.master_seed, 0, static_cast<std::uint64_t>(t));
    const LinkTopology topo = make_topology(
        cfg, n, cfg.topology.beta, role_stream(ts, StreamRole::Topology));
    const SnrTable snr =
        trial_snr(cfg, topo, role_stream(ts, StreamRole::Channel));
    Rng prio(role_stream(ts, StreamRole::Priority));
    TrialOut& out = slots[static_cast<std::size_t>(t)];
    out.link_avg.assign(n_schemes, std::vector<double>(n, 0.0));
    out.sum_avg.assign(n_schemes, 0.0);
    out.active_avg.assign(n_schemes, 0.0);
    for (int d = 0; d < draws; ++d) {
      const int block = t * draws + d;
      // One permutation per draw, shared by every scheme, so the fairness
      // comparison sees identical priorities.
      const std::vector<int> perm = prio.permutation(n);
      for (std::size_t si = 0; si < n_schemes; ++si) {
        const Schedule sch = run_scheme(cfg.schemes[si], snr, perm, block % n);
        const RateReport rates = link_rates(sch, snr);
        for (int link = 0; link < n; ++link)
          out.link_avg[si][link] += rates.per_link_bits_s_hz[link] / draws;
        out.sum_avg[si] += rates.sum_bits_s_hz / draws;
        out.active_avg[si] += static_cast<double>(sch.active_count()) / draws;
        if (cfg.dump_rates)
          append_rate_rows(out.rate_rows, block, cfg.schemes[si].label, sch,
                           snr, rates);
      }
    }
  });

  for (std::size_t si = 0; si < n_schemes; ++si) {
    const std::string& label = cfg.schemes[si].label;
    std::vector<double> pooled;  // per (trial, link) averaged rates
    std::vector<double> sums, actives;
    pooled.reserve(static_cast<std::size_t>(cfg.trials) * n);
    for (const auto& s : slots) {
      pooled.insert(pooled.end(), s.link_avg[si].begin(), s.link_avg[si].end());
      sums.push_back(s.sum_avg[si]);
      actives.push_back(s.active_avg[si]);
    }
    const MeanSe sr = mean_se(sums);
    const MeanSe ac = mean_se(actives);
    std::size_t below = 0;
    for (double r : pooled)
      if (r < cfg.tail_threshold_bits) ++below;
    const double p = static_cast<double>(below) / pooled.size();
    const double p_se = std::sqrt(p * (1.0 - p) / pooled.size());
    result.rows.push_back({exp_name, n, label, "sum_rate_mean", sr.mean, sr.se});
    result.rows.push_back(
        {exp_name, n, label, "sum_rate_median", median(sums), 0.0});
    result.rows.push_back({exp_name, n, label, "active_mean", ac.mean, ac.se});
    result.rows.push_back({exp_name, n, label, "tail_fraction", p, p_se});
    result.cdfs.push_back({label, "link_rate", empirical_cdf(pooled)});
    result.cdfs.push_back({label, "sum_rate", empirical_cdf(sums)});
  }
  if (cfg.dump_rates)
    for (auto& s : slots)
      result.rate_rows.insert(result.rate_rows.end(), s.rate_rows.begin(),
                              s.rate_rows.end());
  sort_rows(result.rows);
  return result;
}

ExperimentResult run_fraction_vs_n(const ExperimentConfig& cfg) {
  ExperimentResult result;
  const std::string exp_name = experiment_name(cfg.experiment);
  const double gamma = theory_gamma(cfg, /*normalized=*/false);
  for (std::size_t bi = 0; bi < cfg.fraction.beta_list.size(); ++bi) {
    const double beta = cfg.fraction.beta_list[bi];
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      const int n = cfg.n_list[ni];
      const std::uint64_t series = bi * cfg.n_list.size() + ni;
      const auto slots =
          run_cover_trials(cfg, series, n, beta, cfg.fraction.fading);
      const std::string label = fmt_beta(beta);
      const MeanSe inv = mean_se(pluck(slots, &CoverTrialOut::inv_kappa_plain));
      const MeanSe kap = mean_se(pluck(slots, &CoverTrialOut::kappa_plain));
      result.rows.push_back(
          {exp_name, n, label, "inv_kappa_mean", inv.mean, inv.se});
      result.rows.push_back({exp_name, n, label, "kappa_mean", kap.mean, kap.se});
      if (beta != 1.0 || n >= 3) {
        const TheoreticalFraction tf =
            theoretical_fraction(beta, n, cfg.topology.R, gamma);
        result.rows.push_back(
            {exp_name, n, label, "lambda_theory", tf.lambda, 0.0});
      }
      if (cfg.fraction.fading) {
        const MeanSe invf =
            mean_se(pluck(slots, &CoverTrialOut::inv_kappa_fading));
        const MeanSe kapf = mean_se(pluck(slots, &CoverTrialOut::kappa_fading));
        result.rows.push_back({exp_name, n, label + "_fading",
                               "inv_kappa_mean", invf.mean, invf.se});
        result.rows.push_back({exp_name, n, label + "_fading", "kappa_mean",
                               kapf.mean, kapf.se});
      }
    }
  }
  for (int n : cfg.n_list)
    result.rows.push_back(
        {exp_name, n, "one_over_n", "fraction_theory", 1.0 / n, 0.0});
  sort_rows(result.rows);
  return result;
}

ExperimentResult run_fading_fraction(const ExperimentConfig& cfg) {
  ExperimentResult result;
  const std::string exp_name = experiment_name(cfg.experiment);
  for (std::size_t bi = 0; bi < cfg.fraction.beta_list.size(); ++bi) {
    const double beta = cfg.fraction.beta_list[bi];
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      const int n = cfg.n_list[ni];
      const std::uint64_t series = bi * cfg.n_list.size() + ni;
      const auto slots = run_cover_trials(cfg, series, n, beta, /*fading=*/true);
      const std::string label = fmt_beta(beta);
      const MeanSe plain =
          mean_se(pluck(slots, &CoverTrialOut::inv_kappa_plain));
      const MeanSe faded =
          mean_se(pluck(slots, &CoverTrialOut::inv_kappa_fading));
      std::vector<double> diff;
      diff.reserve(slots.size());
      for (const auto& s : slots)
        diff.push_back(s.inv_kappa_fading - s.inv_kappa_plain);
      const MeanSe d = mean_se(diff);
      result.rows.push_back(
          {exp_name, n, label, "inv_kappa_mean", plain.mean, plain.se});
      result.rows.push_back({exp_name, n, label + "_fading", "inv_kappa_mean",
                             faded.mean, faded.se});
      result.rows.push_back({exp_name, n, label + "_diff",
                             "inv_kappa_diff_mean", d.mean, d.se});
    }
  }
  sort_rows(result.rows);
  return result;
}

ExperimentResult run_gap_vs_n(const ExperimentConfig& cfg) {
  ExperimentResult result;
  const std::string exp_name = experiment_name(cfg.experiment);
  const double gamma = theory_gamma(cfg, /*normalized=*/false);
  for (std::size_t bi = 0; bi < cfg.fraction.beta_list.size(); ++bi) {
    const double beta = cfg.fraction.beta_list[bi];
    for (std::size_t ni = 0; ni < cfg.n_list.size(); ++ni) {
      const int n = cfg.n_list[ni];
      const std::uint64_t series = bi * cfg.n_list.size() + ni;
      const auto slots =
          run_cover_trials(cfg, series, n, beta, cfg.fraction.fading);
      const std::string label = fmt_beta(beta);
      const MeanSe gap = mean_se(pluck(slots, &CoverTrialOut::gap_plain));
      result.rows.push_back({exp_name, n, label, "gap_mean", gap.mean, gap.se});
      if (beta != 1.0 || n >= 3) {
        const TheoreticalFraction tf =
            theoretical_fraction(beta, n, cfg.topology.R, gamma);
        result.rows.push_back(
            {exp_name, n, label, "gap_theory", tf.gap_bits, 0.0});
      }
      if (cfg.fraction.fading) {
        const MeanSe gapf = mean_se(pluck(slots, &CoverTrialOut::gap_fading));
        result.rows.push_back(
            {exp_name, n, label + "_fading", "gap_mean", gapf.mean, gapf.se});
      }
    }
  }
  sort_rows(result.rows);
  return result;
}

ExperimentResult run_theory_curves(const ExperimentConfig& cfg) {
  ExperimentResult result;
  const std::string exp_name = experiment_name(cfg.experiment);
  const double gamma = theory_gamma(cfg, cfg.theory.normalized);
  for (double beta : cfg.theory.beta_list) {
    const std::string label = fmt_beta(beta);
    for (int n : cfg.n_list) {
      if (beta == 1.0 && n < 3) continue;  // curve undefined below n = 3
      const TheoreticalFraction tf =
          theoretical_fraction(beta, n, cfg.topology.R, gamma);
      result.rows.push_back(
          {exp_name, n, label, "lambda_theory", tf.lambda, 0.0});
      result.rows.push_back(
          {exp_name, n, label, "gap_theory", tf.gap_bits, 0.0});
    }
  }
  for (int n : cfg.n_list)
    result.rows.push_back(
        {exp_name, n, "one_over_n", "fraction_theory", 1.0 / n, 0.0});
  sort_rows(result.rows);
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.experiment) {
    case Experiment::SumRateSweep: return run_sum_rate_sweep(cfg);
    case Experiment::LinkRateCdf: return run_link_rate_cdf(cfg);
    case Experiment::FractionVsN: return run_fraction_vs_n(cfg);
    case Experiment::FadingFraction: return run_fading_fraction(cfg);
    case Experiment::GapVsN: return run_gap_vs_n(cfg);
    case Experiment::TheoryCurves: return run_theory_curves(cfg);
  }
  throw ConfigError("unhandled experiment");
}

}  // namespace itlinq
