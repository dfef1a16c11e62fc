#include "bcsim/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bcsim/errors.hpp"

namespace bcsim::calibration {

namespace {
constexpr int kHorizonCycles = 5 * kCyclesPerYear;  // 260
constexpr double kResidualTol = 1e-9;
constexpr int kMaxIterations = 200;
}  // namespace

void ScreeningStats::validate() const {
  if (mammograms_performed < 0) throw ConfigError("screening: mammogram count < 0");
  if (detected_cases < 0) throw ConfigError("screening: detected cases < 0");
  if (detected_cases > mammograms_performed)
    throw ConfigError("screening: detected cases exceed mammograms performed");
  if (!(positivity_rate >= 0.0 && positivity_rate <= 1.0))
    throw ConfigError("screening: positivity rate out of [0,1]");
  if (!(attendance_rate >= 0.0 && attendance_rate <= 1.0))
    throw ConfigError("screening: attendance rate out of [0,1]");
}

HazardRate lambda_from_survival(double s5) {
  if (!(s5 > 0.0 && s5 <= 1.0))
    throw std::domain_error("5-year survival must lie in (0,1]");
  return HazardRate(-std::log(s5) / 5.0, RateUnit::PerYear);
}

double cumulative_healing(double lambda, double k, int cycles) {
  // work in log space; the stage-1 target leaves a survivor product ~1e-2
  // but tighter targets would underflow a plain product
  double log_stay = 0.0;
  for (int t = 1; t <= cycles; ++t) {
    const double p = k * -std::expm1(-lambda * t);
    log_stay += std::log1p(-p);
  }
  return -std::expm1(log_stay);
}

double fit_healing_lambda(double dfs5, double k) {
  if (!(dfs5 >= 0.0 && dfs5 < 1.0)) throw std::domain_error("dfs5 must lie in [0,1)");
  if (!(k > 0.0 && k <= 1.0)) throw std::domain_error("k must lie in (0,1]");
  if (dfs5 == 0.0) return 0.0;

  const double reachable = -std::expm1(kHorizonCycles * std::log1p(-k));
  if (dfs5 >= reachable)
    throw ConfigError("healing calibration: DFS target " + std::to_string(dfs5) +
                      " is unreachable with k = " + std::to_string(k));

  double lo = 0.0;
  double hi = 1e-6;
  while (cumulative_healing(hi, k, kHorizonCycles) < dfs5) hi *= 2.0;

  double mid = hi;
  for (int i = 0; i < kMaxIterations; ++i) {
    mid = 0.5 * (lo + hi);
    const double c = cumulative_healing(mid, k, kHorizonCycles);
    if (std::abs(c - dfs5) <= kResidualTol) return mid;
    if (c < dfs5)
      lo = mid;
    else
      hi = mid;
  }
  return mid;
}

std::vector<std::int64_t> project_prevalence(const PrevalenceSeries& series,
                                             const std::vector<int>& target_years) {
  auto points = series.points;
  if (points.size() < 2)
    throw std::domain_error("prevalence trend needs at least two observations");
  std::sort(points.begin(), points.end());
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].first == points[i - 1].first)
      throw std::domain_error("prevalence series has duplicate years");

  const auto n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double x = static_cast<double>(i);
    const double y = static_cast<double>(points[i].second);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
  const double intercept = (sy - slope * sx) / n;

  const double last_index = n - 1.0;
  const int last_year = points.back().first;
  std::vector<std::int64_t> out;
  out.reserve(target_years.size());
  for (int year : target_years) {
    const double x = last_index + (year - last_year);
    out.push_back(std::llround(intercept + slope * x));
  }
  return out;
}

std::int64_t estimate_undiagnosed(const ScreeningStats& stats) {
  stats.validate();
  if (stats.attendance_rate <= 0.0)
    throw std::domain_error("attendance rate must be positive");
  const double attended = static_cast<double>(stats.mammograms_performed);
  const double non_attending =
      attended / stats.attendance_rate * (1.0 - stats.attendance_rate);
  return std::llround(non_attending * stats.positivity_rate);
}

double diagnosis_rate(std::int64_t l_pos, std::int64_t l_fneg, std::int64_t l_nm) {
  if (l_pos < 0 || l_fneg < 0 || l_nm < 0)
    throw std::domain_error("diagnosis rate counts must be nonnegative");
  const std::int64_t denom = l_pos + l_fneg + l_nm;
  if (denom == 0) throw std::domain_error("diagnosis rate denominator is zero");
  return static_cast<double>(l_pos) / static_cast<double>(denom);
}

void calibrate_healing(TransitionParams& params) {
  for (int s = 0; s < kNumStages; ++s) {
    params.healing_lambda.normal[s] = fit_healing_lambda(params.dfs5.normal[s], params.healing_k);
    params.healing_lambda.lockdown[s] =
        fit_healing_lambda(params.dfs5.lockdown[s], params.healing_k);
  }
}

}  // namespace bcsim::calibration
