#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bcsim/hazard.hpp"
#include "bcsim/model.hpp"

namespace bcsim::calibration {

// Registry prevalence observations used for the trend projection.
struct PrevalenceSeries {
  // (year, patient count); years strictly increasing after normalization
  std::vector<std::pair<int, std::int64_t>> points;
};

// National screening-programme statistics for one year.
struct ScreeningStats {
  std::int64_t mammograms_performed = 0;
  double positivity_rate = 0.0;  // positive fraction among attendees
  double attendance_rate = 0.0;
  std::int64_t detected_cases = 0;

  void validate() const;
};

// Annual all-cause mortality rate implied by a 5-year survival fraction:
// -ln(s5)/5.
HazardRate lambda_from_survival(double s5);

// Fits the healing exponent so that the cumulative probability of healing
// over 260 weekly cycles, 1 - prod_{t=1..260} (1 - k*(1 - e^(-lambda*t))),
// equals the 5-year disease-free survival target. Bisection on lambda with
// the bracket expanded until it straddles the target; residual tolerance
// 1e-9, at most 200 iterations.
double fit_healing_lambda(double dfs5, double k);

// Probability of healing within `cycles` under the fitted exponent; exposed
// so the fit can be verified by direct forward evaluation.
double cumulative_healing(double lambda, double k, int cycles);

// Least-squares linear trend over the observation sequence, extrapolated by
// calendar-year offset from the final observation and rounded to the nearest
// integer. The fit runs on observation index rather than calendar year: the
// registry series has a one-year gap that the published projection treats as
// a uniform step, and fitting on the raw years does not reproduce it.
std::vector<std::int64_t> project_prevalence(const PrevalenceSeries& series,
                                             const std::vector<int>& target_years);

// Size of the undetected-positive pool implied by screening attendance:
// the population that skipped screening, times the positive fraction.
std::int64_t estimate_undiagnosed(const ScreeningStats& stats);

// Annual probability that an existing case gets diagnosed, from positive /
// false-negative / never-screened counts.
double diagnosis_rate(std::int64_t l_pos, std::int64_t l_fneg, std::int64_t l_nm);

// Fills params.healing_lambda from params.dfs5 / params.healing_k.
void calibrate_healing(TransitionParams& params);

}  // namespace bcsim::calibration
