#include "itlinq/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace itlinq {

double sinr(const Schedule& sch, const SnrTable& s, int i) {
  if (i < 0 || i >= s.n) throw std::out_of_range("sinr: link out of range");
  if (!sch.is_active(i))
    throw std::invalid_argument("sinr: link " + std::to_string(i) +
                                " is not active");
  double interference = 0.0;
  for (int j = 0; j < s.n; ++j)
    if (j != i && sch.is_active(j)) interference += s.inr_at(i, j);
  return s.snr[i] / (1.0 + interference);
}

RateReport link_rates(const Schedule& sch, const SnrTable& s) {
  RateReport r;
  r.per_link_bits_s_hz.assign(s.n, 0.0);
  for (int i = 0; i < s.n; ++i) {
    if (!sch.is_active(i)) continue;
    r.per_link_bits_s_hz[i] = std::log2(1.0 + sinr(sch, s, i));
    r.sum_bits_s_hz += r.per_link_bits_s_hz[i];
  }
  return r;
}

RateReport time_sharing_rate(const SnrTable& s) {
  if (s.n < 1) throw std::invalid_argument("time_sharing_rate: n >= 1");
  RateReport r;
  r.per_link_bits_s_hz.assign(s.n, 0.0);
  for (int i = 0; i < s.n; ++i) {
    r.per_link_bits_s_hz[i] = std::log2(1.0 + s.snr[i]) / s.n;
    r.sum_bits_s_hz += r.per_link_bits_s_hz[i];
  }
  return r;
}

FractionReport fraction_from_cover(const CoverResult& cover, int n) {
  if (cover.kappa < 1)
    throw std::invalid_argument("fraction_from_cover: kappa >= 1");
  FractionReport f;
  f.kappa = cover.kappa;
  f.lambda = 1.0 / cover.kappa;
  f.gap_bits = std::log2(3.0 * n) / cover.kappa;
  return f;
}

std::vector<std::pair<double, double>> empirical_cdf(
    std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical_cdf: empty");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  std::vector<std::pair<double, double>> cdf;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double frac = (i + 1) / n;
    if (!cdf.empty() && cdf.back().first == samples[i])
      cdf.back().second = frac;  // duplicates collapse to the last fraction
    else
      cdf.emplace_back(samples[i], frac);
  }
  return cdf;
}

}  // namespace itlinq
