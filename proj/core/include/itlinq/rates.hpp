#pragma once

#include <utility>
#include <vector>

#include "itlinq/channel.hpp"
#include "itlinq/itis.hpp"
#include "itlinq/scheduling.hpp"

namespace itlinq {

struct RateReport {
  std::vector<double> per_link_bits_s_hz;  // inactive links are 0
  double sum_bits_s_hz = 0.0;
};

// snr[i] / (1 + sum of inr[i][j] over active j != i). Querying an
// inactive link throws.
double sinr(const Schedule& sch, const SnrTable& s, int i);

// log2(1 + sinr) for active links, 0 for inactive.
RateReport link_rates(const Schedule& sch, const SnrTable& s);

// Each link gets a 1/n slot share: (1/n) * log2(1 + snr[i]).
RateReport time_sharing_rate(const SnrTable& s);

struct FractionReport {
  int kappa = 0;
  double lambda = 0.0;
  double gap_bits = 0.0;  // log2(3n) / kappa
};

FractionReport fraction_from_cover(const CoverResult& cover, int n);

// Right-continuous empirical CDF as sorted (value, fraction <= value)
// pairs; duplicates collapse to the last fraction. Rejects empty input.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples);

}  // namespace itlinq
