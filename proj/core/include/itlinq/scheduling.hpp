#pragma once

#include <vector>

#include "itlinq/channel.hpp"

namespace itlinq {

// One transmission slot: which links transmit, plus the priority
// permutation that produced the decision. priority[k] is the link id at
// rank k (rank 0 = highest).
struct Schedule {
  std::vector<std::uint8_t> active;
  std::vector<int> priority;

  bool is_active(int link) const { return active[link] != 0; }
  int active_count() const;
};

struct ItlinqParams {
  double eta = 0.7;
  double m_db = 25.0;  // margin, applied as 10^(m_db/10) * snr^eta
};

struct FairItlinqParams {
  ItlinqParams base;
  double snr_th_db = 110.0;  // above this the source check tightens
  double eta_bar = 0.6;
  double m_bar_db = 20.0;
};

enum class RxAggregate { Sum, Max };

// Greedy pass in priority order; the top link is always active. Link j
// joins when, against every already-active i, both
//   inr[j][i] <= M * snr[j]^eta   (its destination tolerates i)
//   inr[i][j] <= M * snr[j]^eta   (its source spares destination i)
// hold. Ties admit.
Schedule itlinq_schedule(const SnrTable& s, const std::vector<int>& priority,
                         const ItlinqParams& p);

// Same pass, but when snr[j] exceeds snr_th the source check switches to
// the tighter (m_bar, eta_bar) margin; the destination check always uses
// the base margin.
Schedule fair_itlinq_schedule(const SnrTable& s,
                              const std::vector<int>& priority,
                              const FairItlinqParams& p);

// Threshold baseline. RX check: snr[j] against the aggregate interference
// from active links (Sum: snr/sum(inr) >= g_rx; Max: per-interferer
// snr/inr >= g_rx). TX check: every active victim keeps
// snr[i]/inr[i][j] >= g_tx. Ties admit.
Schedule flashlinq_schedule(const SnrTable& s, const std::vector<int>& priority,
                            double gamma_tx_db, double gamma_rx_db,
                            RxAggregate rx_aggregate = RxAggregate::Sum);

// Exactly link `slot` active.
Schedule tdma_schedule(int n, int slot);

Schedule all_on_schedule(int n);

}  // namespace itlinq
