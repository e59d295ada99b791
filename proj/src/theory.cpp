#include "hornfall/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hornfall/errors.hpp"

namespace hornfall {

namespace {

constexpr double kScanStep = 1e-4;
constexpr double kGrazeTol = 3e-8;        // |LHS| local-minimum flag level
constexpr double kMultiplicityTol = 1e-6; // |derivative| below => not simple
constexpr double kScanEnd = 1.0 - 1e-9;

void check_density(const DensityVector& dv) {
  if (dv.k() < 1) throw DomainError("density vector needs k >= 1");
  if (!(dv.d1() >= 0.0) || !(dv.d1() < 1.0)) {
    throw DomainError("d1 must satisfy 0 <= d1 < 1");
  }
  for (double dj : dv.d) {
    if (!(dj >= 0.0)) throw DomainError("densities must be >= 0");
  }
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

}  // namespace

double root_equation_lhs(const DensityVector& dv, double t) {
  double acc = std::log1p(-t) - std::log1p(-dv.d1());
  double tp = 1.0;
  for (int j = 2; j <= dv.k(); ++j) {
    tp *= t;
    acc += dv.d[j - 1] * tp;
  }
  return acc;
}

double root_equation_derivative(const DensityVector& dv, double t) {
  double acc = -1.0 / (1.0 - t);
  double tp = 1.0;
  for (int j = 2; j <= dv.k(); ++j) {
    acc += (j - 1) * dv.d[j - 1] * tp;
    tp *= t;
  }
  return acc;
}

PredictionResult root_t0(const DensityVector& dv, double tol) {
  check_density(dv);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (tol < 1e-15) {
    throw ToleranceTooSmall("tolerance " + std::to_string(tol) +
                            " below bisection resolution 1e-15");
  }

  // Scan at fixed step for the first sign change. The t=0 sample is given
  // sign +1: for d1 > 0 the left side really is positive there, and for
  // d1 = 0 (where it is exactly 0) this reproduces the d1 -> 0+ limit, so
  // subcritical parameters land on t0 = 0, phi = 1.
  int prev_sign = 1;
  double prev_t = 0.0;
  bool found = false;
  double lo = 0.0, hi = 0.0;

  // Grazes: a strictly one-signed local minimum of |LHS| below kGrazeTol
  // before the root means the curve nearly touched zero (a near-double
  // root passed by); flag the result as not simple. The t=0 boundary
  // sample stays out of the pattern: |LHS(0)| ~ d1 is small by
  // construction, not a graze.
  bool grazed = false;
  double m2 = std::numeric_limits<double>::infinity();  // |v| two back
  double m1 = std::numeric_limits<double>::infinity();  // |v| one back

  for (double t = kScanStep;; t += kScanStep) {
    if (t > kScanEnd) t = kScanEnd;
    const double v = root_equation_lhs(dv, t);
    const int sign = sign_of(v);
    if (sign == 0) {
      lo = hi = t;
      found = true;
      break;
    }
    if (sign != prev_sign) {
      lo = prev_t;
      hi = t;
      found = true;
      break;
    }
    const double av = std::abs(v);
    if (m2 > m1 && av >= m1 && m1 < kGrazeTol) grazed = true;
    m2 = m1;
    m1 = av;
    prev_t = t;
    if (t >= kScanEnd) break;
  }

  PredictionResult res;
  if (!found) {
    res.t0 = 0.0;
    res.phi = 1.0;
    res.derivative_at_root = root_equation_derivative(dv, 0.0);
    res.simple = !grazed;
    return res;
  }

  // Bisection keeps the invariant sign(lo side) = prev_sign.
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const int s = sign_of(root_equation_lhs(dv, mid));
    if (s == 0) {
      lo = hi = mid;
      break;
    }
    if (s == prev_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double t0 = 0.5 * (lo + hi);

  // Newton polish pushes the residual from |f'| * tol toward rounding
  // level; skipped where the root is too shallow for Newton to be safe.
  for (int it = 0; it < 3; ++it) {
    const double f = root_equation_lhs(dv, t0);
    const double df = root_equation_derivative(dv, t0);
    if (std::abs(df) < 1e-3) break;
    const double next = t0 - f / df;
    if (!(next > lo - kScanStep) || !(next < hi + kScanStep)) break;
    t0 = next;
  }

  res.t0 = t0;
  res.phi = (1.0 - t0) / (1.0 - dv.d1());
  res.derivative_at_root = root_equation_derivative(dv, t0);
  res.simple = std::abs(res.derivative_at_root) > kMultiplicityTol && !grazed;
  return res;
}

double lambert_w(double x) {
  const double branch = -std::exp(-1.0);  // -1/e
  if (x > 0.0) throw DomainError("lambert_w defined here only on [-1/e, 0]");
  if (x == 0.0) return 0.0;
  if (x < branch) {
    // Allow a hair of rounding slack below the branch point, where the
    // value is exactly -1.
    if (x >= branch - 1e-15) return -1.0;
    throw DomainError("lambert_w argument below -1/e");
  }

  // Distance to the branch point, computed as a difference so the
  // cancellation in 1 + e*x is avoided: p^2 = 2 e (x + 1/e).
  const double p2 = 2.0 * std::exp(1.0) * (x - branch);
  if (p2 <= 0.0) return -1.0;
  const double p = std::sqrt(p2);
  if (p < 1e-4) {
    // Series around the branch point; truncation error O(p^4) keeps the
    // residual far below 1e-12 in this range.
    return -1.0 + p * (1.0 + p * (-1.0 / 3.0 + p * (11.0 / 72.0)));
  }

  double w = x > -0.25 ? x * (1.0 - x) : -1.0 + p * (1.0 - p / 3.0);
  for (int it = 0; it < 40; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::abs(f) < 1e-15) break;
    // Halley step.
    const double d1f = ew * (w + 1.0);
    const double step = f / (d1f - f * (w + 2.0) / (2.0 * (w + 1.0)));
    w -= step;
    if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

double phi_12(double d1, double d2) {
  if (!(d1 >= 0.0) || !(d1 < 1.0)) throw DomainError("need 0 <= d1 < 1");
  if (!(d2 > 0.0)) throw DomainError("need d2 > 0");
  const double a = (1.0 - d1) * d2;
  // a * e^-d2 <= d2 e^-d2 <= 1/e, so x stays in W's domain; the clamp
  // only absorbs last-ulp rounding.
  const double x = std::max(-a * std::exp(-d2), -std::exp(-1.0));
  return -lambert_w(x) / a;
}

GammaPoint gamma_curve(double d3) {
  if (!(d3 >= 2.0)) throw DomainError("curve is real only for d3 >= 2");
  const double r = std::sqrt(d3) - std::sqrt(d3 - 2.0);
  const double d1 =
      1.0 - std::exp(0.25 * r * r) / (d3 - std::sqrt(d3 * (d3 - 2.0)));
  const double t_tan = 0.5 * (1.0 - std::sqrt(1.0 - 2.0 / d3));
  return GammaPoint{d3, d1, t_tan};
}

TrajectoryPoint trajectory_closed_form(const DensityVector& dv, double t) {
  check_density(dv);
  if (!(t >= 0.0) || !(t < 1.0)) throw DomainError("need 0 <= t < 1");
  const int k = dv.k();
  TrajectoryPoint out{t, std::vector<double>(static_cast<std::size_t>(k))};

  double expo = 0.0, tp = 1.0;
  for (int j = 2; j <= k; ++j) {
    tp *= t;
    expo += dv.d[j - 1] * tp;
  }
  out.s[0] = 1.0 - t - (1.0 - dv.d1()) * std::exp(-expo);

  const double omt = 1.0 - t;
  for (int j = 2; j <= k; ++j) {
    double sum = 0.0;
    double tpow = 1.0;   // t^(l-j)
    double binom = 1.0;  // C(l-1, j-1), built incrementally over l
    for (int l = j; l <= k; ++l) {
      if (l > j) {
        binom = binom * static_cast<double>(l - 1) /
                static_cast<double>(l - j);
        tpow *= t;
      }
      sum += binom * dv.d[l - 1] * tpow;
    }
    out.s[j - 1] = std::pow(omt, j) * sum;
  }
  return out;
}

namespace {

void flow_rhs(int k, double t, const std::vector<double>& s,
              std::vector<double>& out) {
  const double omt = 1.0 - t;
  const double s2 = k >= 2 ? s[1] : 0.0;
  out[0] = ((omt - s[0]) / omt) * (s2 / omt) - 1.0;
  for (int j = 2; j <= k; ++j) {
    const double next = j < k ? s[j] : 0.0;
    out[j - 1] = static_cast<double>(j) * (next - s[j - 1]) / omt;
  }
}

// Dormand-Prince 5(4) pair. Returns the embedded error estimate scaled by
// rtol * (1 + |y|); the 5th-order result lands in y_out.
double dp45_step(int k, double t, double h, const std::vector<double>& y,
                 std::vector<double>& y_out, double rtol,
                 std::vector<std::vector<double>>& ks,
                 std::vector<double>& scratch) {
  static const double a[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
       -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784,
       11.0 / 84}};
  static const double c[7] = {0.0,       1.0 / 5, 3.0 / 10, 4.0 / 5,
                              8.0 / 9,   1.0,     1.0};
  static const double err_w[7] = {71.0 / 57600,     0.0,
                                  -71.0 / 16695,    71.0 / 1920,
                                  -17253.0 / 339200, 22.0 / 525,
                                  -1.0 / 40};

  const std::size_t dim = y.size();
  for (int stage = 0; stage < 7; ++stage) {
    for (std::size_t i = 0; i < dim; ++i) {
      double acc = y[i];
      for (int prev = 0; prev < stage; ++prev) {
        acc += h * a[stage][prev] * ks[prev][i];
      }
      scratch[i] = acc;
    }
    if (stage == 6) {
      y_out = scratch;  // stage 7 input is the 5th-order solution
    }
    flow_rhs(k, t + c[stage] * h, scratch, ks[stage]);
  }

  double err = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    double e = 0.0;
    for (int stage = 0; stage < 7; ++stage) {
      e += err_w[stage] * ks[stage][i];
    }
    e *= h;
    const double scale = rtol * (1.0 + std::abs(y_out[i]));
    err = std::max(err, std::abs(e) / scale);
  }
  return err;
}

}  // namespace

std::vector<TrajectoryPoint> trajectory_integrate(const DensityVector& dv,
                                                  double t_end, double rtol) {
  check_density(dv);
  if (!(t_end >= 0.0) || !(t_end < 1.0)) {
    throw DomainError("need 0 <= t_end < 1");
  }
  if (!(rtol > 0.0)) throw DomainError("rtol must be positive");
  const double hard_stop = 1.0 - 1e-6;
  if (t_end > hard_stop) {
    throw StepFailure("t_end beyond the 1 - 1e-6 singularity guard");
  }

  const int k = dv.k();
  std::vector<TrajectoryPoint> path;
  std::vector<double> y(dv.d.begin(), dv.d.end());  // s_j(0) = d_j
  path.push_back(TrajectoryPoint{0.0, y});
  if (t_end == 0.0) return path;

  std::vector<std::vector<double>> ks(
      7, std::vector<double>(static_cast<std::size_t>(k)));
  std::vector<double> scratch(static_cast<std::size_t>(k));
  std::vector<double> y_next(static_cast<std::size_t>(k));

  double t = 0.0;
  double h = std::min(1e-3, t_end);
  while (t < t_end) {
    if (h < 1e-14) throw StepFailure("step size underflow near t=1");
    h = std::min(h, t_end - t);
    const double err = dp45_step(k, t, h, y, y_next, rtol, ks, scratch);
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.25));
      continue;
    }

    if (y[0] > 0.0 && y_next[0] < 0.0) {
      // s1 crosses zero inside this step: bisect the step length so the
      // returned final point sits on the crossing.
      double lo_h = 0.0, hi_h = h;
      for (int it = 0; it < 80 && hi_h - lo_h > rtol * std::max(t, 1e-3);
           ++it) {
        const double mid = 0.5 * (lo_h + hi_h);
        dp45_step(k, t, mid, y, y_next, rtol, ks, scratch);
        if (y_next[0] >= 0.0) {
          lo_h = mid;
        } else {
          hi_h = mid;
        }
      }
      dp45_step(k, t, 0.5 * (lo_h + hi_h), y, y_next, rtol, ks, scratch);
      path.push_back(TrajectoryPoint{t + 0.5 * (lo_h + hi_h), y_next});
      return path;
    }

    t += h;
    y = y_next;
    path.push_back(TrajectoryPoint{t, y});
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(err, 1e-10),
                                                    -0.2)));
  }
  return path;
}

DensityVector hypergraph_params(const std::vector<double>& beta) {
  if (beta.empty()) throw DomainError("need at least beta1");
  for (double b : beta) {
    if (!(b >= 0.0)) throw DomainError("rates must be >= 0");
  }
  std::vector<double> d(beta.size());
  d[0] = -std::expm1(-beta[0]);  // 1 - e^-beta1
  for (std::size_t j = 1; j < beta.size(); ++j) {
    d[j] = static_cast<double>(j + 1) * beta[j];
  }
  return DensityVector::of(std::move(d));
}

}  // namespace hornfall
