#include "bcsim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcsim::stats {

namespace {

// Continued fraction for I_x(a,b) (modified Lentz).
double beta_cf(double a, double b, double x) {
  constexpr int kMaxIter = 500;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kFpMin = std::numeric_limits<double>::min() / kEps;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

double sample_sd(const std::vector<double>& xs, double mean) {
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0));
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("incomplete_beta: a, b must be > 0");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("incomplete_beta: x out of [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
  return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::domain_error("student_t_cdf: df must be > 0");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * incomplete_beta(0.5 * df, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double df) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("student_t_quantile: p out of (0,1)");
  if (p == 0.5) return 0.0;
  // symmetric: solve on the upper half
  const bool upper = p > 0.5;
  const double target = upper ? p : 1.0 - p;
  double lo = 0.0, hi = 1.0;
  while (student_t_cdf(hi, df) < target) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, df) < target)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-12 * std::max(1.0, hi)) break;
  }
  const double q = 0.5 * (lo + hi);
  return upper ? q : -q;
}

SampleSummary mean_ci(const std::vector<double>& samples, double level) {
  if (samples.size() < 2) throw std::domain_error("mean_ci needs at least two samples");
  if (!(level > 0.0 && level < 1.0)) throw std::domain_error("confidence level out of (0,1)");
  SampleSummary s;
  s.n = samples.size();
  s.confidence_level = level;
  double sum = 0.0;
  for (double x : samples) sum += x;
  s.mean = sum / static_cast<double>(s.n);
  s.sd = sample_sd(samples, s.mean);
  const double tq = student_t_quantile(0.5 * (1.0 + level), static_cast<double>(s.n - 1));
  const double half = tq * s.sd / std::sqrt(static_cast<double>(s.n));
  s.ci_low = s.mean - half;
  s.ci_high = s.mean + half;
  return s;
}

double welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::domain_error("welch_t_test needs at least two samples per group");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double ma = 0.0, mb = 0.0;
  for (double x : a) ma += x;
  for (double x : b) mb += x;
  ma /= na;
  mb /= nb;
  const double sda = sample_sd(a, ma);
  const double sdb = sample_sd(b, mb);
  const double va = sda * sda / na;
  const double vb = sdb * sdb / nb;
  if (va + vb == 0.0) {
    if (ma == mb) return 1.0;  // identical constants
    throw std::domain_error("welch_t_test: zero variance with unequal means");
  }
  const double t = (ma - mb) / std::sqrt(va + vb);
  const double df = (va + vb) * (va + vb) /
                    (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  return 2.0 * (1.0 - student_t_cdf(std::abs(t), df));
}

std::vector<double> scale_results(const std::vector<double>& series, double scale_factor) {
  if (!(scale_factor > 0.0)) throw std::domain_error("scale factor must be positive");
  std::vector<double> out(series.size());
  std::transform(series.begin(), series.end(), out.begin(),
                 [scale_factor](double v) { return v * scale_factor; });
  return out;
}

}  // namespace bcsim::stats
