#include "itlinq/scheduling.hpp"

#include <cmath>
#include <stdexcept>

namespace itlinq {

int Schedule::active_count() const {
  int c = 0;
  for (auto a : active) c += a != 0;
  return c;
}

namespace {

void check_priority(const SnrTable& s, const std::vector<int>& priority) {
  if (static_cast<int>(priority.size()) != s.n)
    throw std::invalid_argument("priority permutation size mismatch");
}

}  // namespace

Schedule itlinq_schedule(const SnrTable& s, const std::vector<int>& priority,
                         const ItlinqParams& p) {
  check_priority(s, priority);
  Schedule sch;
  sch.priority = priority;
  sch.active.assign(s.n, 0);

  const double m_lin = db_to_linear(p.m_db);
  std::vector<int> on;  // active links, in priority order
  on.reserve(s.n);
  for (int rank = 0; rank < s.n; ++rank) {
    const int j = priority[rank];
    const double threshold = m_lin * std::pow(s.snr[j], p.eta);
    bool ok = true;
    for (int i : on) {
      if (s.inr_at(j, i) > threshold || s.inr_at(i, j) > threshold) {
        ok = false;
        break;
      }
    }
    if (ok) {
      sch.active[j] = 1;
      on.push_back(j);
    }
  }
  return sch;
}

Schedule fair_itlinq_schedule(const SnrTable& s,
                              const std::vector<int>& priority,
                              const FairItlinqParams& p) {
  check_priority(s, priority);
  Schedule sch;
  sch.priority = priority;
  sch.active.assign(s.n, 0);

  const double m_lin = db_to_linear(p.base.m_db);
  const double m_bar_lin = db_to_linear(p.m_bar_db);
  const double snr_th = db_to_linear(p.snr_th_db);
  std::vector<int> on;
  on.reserve(s.n);
  for (int rank = 0; rank < s.n; ++rank) {
    const int j = priority[rank];
    const double dest_threshold = m_lin * std::pow(s.snr[j], p.base.eta);
    const double src_threshold =
        s.snr[j] > snr_th ? m_bar_lin * std::pow(s.snr[j], p.eta_bar)
                          : dest_threshold;
    bool ok = true;
    for (int i : on) {
      if (s.inr_at(j, i) > dest_threshold || s.inr_at(i, j) > src_threshold) {
        ok = false;
        break;
      }
    }
    if (ok) {
      sch.active[j] = 1;
      on.push_back(j);
    }
  }
  return sch;
}

Schedule flashlinq_schedule(const SnrTable& s, const std::vector<int>& priority,
                            double gamma_tx_db, double gamma_rx_db,
                            RxAggregate rx_aggregate) {
  check_priority(s, priority);
  Schedule sch;
  sch.priority = priority;
  sch.active.assign(s.n, 0);

  const double g_tx = db_to_linear(gamma_tx_db);
  const double g_rx = db_to_linear(gamma_rx_db);
  std::vector<int> on;
  on.reserve(s.n);
  for (int rank = 0; rank < s.n; ++rank) {
    const int j = priority[rank];
    bool ok = true;

    if (rx_aggregate == RxAggregate::Sum) {
      double agg = 0.0;
      for (int i : on) agg += s.inr_at(j, i);
      ok = agg == 0.0 || s.snr[j] >= g_rx * agg;
    } else {
      for (int i : on)
        if (s.snr[j] < g_rx * s.inr_at(j, i)) {
          ok = false;
          break;
        }
    }

    if (ok) {
      for (int i : on)
        if (s.snr[i] < g_tx * s.inr_at(i, j)) {
          ok = false;
          break;
        }
    }

    if (ok) {
      sch.active[j] = 1;
      on.push_back(j);
    }
  }
  return sch;
}

Schedule tdma_schedule(int n, int slot) {
  if (slot < 0 || slot >= n)
    throw std::out_of_range("tdma_schedule: slot out of range");
  Schedule sch;
  sch.active.assign(n, 0);
  sch.active[slot] = 1;
  sch.priority.resize(n);
  for (int i = 0; i < n; ++i) sch.priority[i] = i;
  return sch;
}

Schedule all_on_schedule(int n) {
  Schedule sch;
  sch.active.assign(n, 1);
  sch.priority.resize(n);
  for (int i = 0; i < n; ++i) sch.priority[i] = i;
  return sch;
}

}  // namespace itlinq
