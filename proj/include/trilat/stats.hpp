#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

namespace trilat {

struct Aggregate {
  double mean = 0.0;
  double stdev = 0.0;
};

/// Arithmetic mean and sample (n-1) standard deviation. A single value has
/// stdev 0 by convention. Summation is left to right so recomputation from
/// the same values reproduces results bit for bit.
inline Aggregate aggregate(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("aggregate of no values");
  double sum = 0.0;
  for (double v : values) sum += v;
  Aggregate a;
  a.mean = sum / static_cast<double>(values.size());
  if (values.size() < 2) return a;
  double ss = 0.0;
  for (double v : values) ss += (v - a.mean) * (v - a.mean);
  a.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  return a;
}

}  // namespace trilat
