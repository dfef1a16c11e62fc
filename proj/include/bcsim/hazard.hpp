#pragma once

#include <cmath>
#include <stdexcept>

namespace bcsim {

inline constexpr int kCyclesPerYear = 52;

enum class RateUnit { PerYear, PerCycle };

// Nonnegative event rate with an explicit time unit. Unit conversions are
// spelled out so per-year and per-cycle quantities cannot be mixed silently.
struct HazardRate {
  double value;
  RateUnit unit;

  HazardRate(double v, RateUnit u) : value(v), unit(u) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw std::domain_error("hazard rate must be a finite nonnegative value");
  }

  HazardRate per_cycle() const {
    if (unit == RateUnit::PerCycle) return *this;
    return HazardRate(value / kCyclesPerYear, RateUnit::PerCycle);
  }

  HazardRate per_year() const {
    if (unit == RateUnit::PerYear) return *this;
    return HazardRate(value * kCyclesPerYear, RateUnit::PerYear);
  }
};

// P(event by time t) for a constant-rate process: 1 - e^(-rate*t).
// t must be expressed in the rate's own unit.
inline double rate_to_probability(const HazardRate& rate, double t) {
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::domain_error("duration must be a finite nonnegative value");
  return -std::expm1(-rate.value * t);
}

// Per-cycle probability equivalent to an annual one under weekly cycles:
// 1 - (1-p)^(1/52). Compounding 52 cycles recovers the annual probability.
inline double annual_to_cycle_probability(double p_annual) {
  if (!(p_annual >= 0.0 && p_annual <= 1.0))
    throw std::domain_error("annual probability out of [0,1]");
  return 1.0 - std::pow(1.0 - p_annual, 1.0 / kCyclesPerYear);
}

}  // namespace bcsim
