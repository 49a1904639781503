#include "deconv/schedules.hpp"

#include "deconv/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace deconv {

double StepsizeSchedule::at(std::size_t k) const {
  if (!(gamma0 > 0.0)) throw std::invalid_argument("StepsizeSchedule: gamma0 must be positive");
  if (k == 0) throw std::invalid_argument("StepsizeSchedule: index starts at 1");
  return gamma0 / static_cast<double>(k);
}

double BandwidthSchedule::at(std::size_t k) const {
  if (!(c > 0.0)) throw std::invalid_argument("BandwidthSchedule: c must be positive");
  if (!(a >= 0.0 && a < 1.0)) throw std::invalid_argument("BandwidthSchedule: a must lie in [0,1)");
  if (k == 0) throw std::invalid_argument("BandwidthSchedule: index starts at 1");
  if (a == 0.0) return c;
  return c * std::pow(static_cast<double>(k), -a);
}

double PilotBandwidthSpec::at(std::size_t k) const {
  if (!(scale > 0.0)) throw std::invalid_argument("PilotBandwidthSpec: scale must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("PilotBandwidthSpec: beta must lie in (0,1)");
  if (k == 0) throw std::invalid_argument("PilotBandwidthSpec: index starts at 1");
  return scale * std::pow(static_cast<double>(k), -beta);
}

double pilot_scale(std::span<const double> sample) {
  if (sample.size() < 2) throw std::invalid_argument("pilot_scale: need at least two observations");
  double sd = stats::sample_sd(sample);
  if (!(sd > 0.0)) throw std::invalid_argument("pilot_scale: degenerate sample (zero scale)");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  double iqr = stats::quantile_type7(sorted, 0.75) - stats::quantile_type7(sorted, 0.25);
  if (iqr > 0.0) return std::min(sd, iqr / 1.349);
  return sd;
}

PilotBandwidthSpec make_pilot(std::span<const double> sample, double beta) {
  return PilotBandwidthSpec{beta, pilot_scale(sample)};
}

double gs_index_probe(std::span<const double> seq) {
  if (seq.size() < 3) throw std::invalid_argument("gs_index_probe: need at least three terms");
  for (double v : seq)
    if (!(v > 0.0)) throw std::invalid_argument("gs_index_probe: all terms must be positive");
  auto n = static_cast<double>(seq.size());
  return n * (1.0 - seq[seq.size() - 2] / seq[seq.size() - 1]);
}

} // namespace deconv
