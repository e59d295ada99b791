#pragma once

#include <vector>

#include "hornfall/formula.hpp"

namespace hornfall {

// Analytic predictions are built on the root equation
//   ln((1-t)/(1-d1)) + sum_{j=2..k} dj * t^(j-1) = 0,
// whose smallest positive root t0 is the limiting backbone fraction; the
// limiting satisfiability probability is phi = (1-t0)/(1-d1).

struct PredictionResult {
  double t0;                  // smallest positive root, 0 if none
  double phi;                 // (1-t0)/(1-d1)
  double derivative_at_root;  // d/dt of the root equation's left side at t0
  bool simple;                // false near a double root (see root_t0)
};

struct TrajectoryPoint {
  double t;
  std::vector<double> s;  // s[0..k-1] = s1(t)..sk(t)
};

// One point of the discontinuity curve in the (d1, d3) plane (k=3, d2=0):
// the locus where the root equation's left side is tangent to zero at its
// first contact, so t0 (and phi) jump as the parameters cross it.
struct GammaPoint {
  double d3;
  double d1;
  double t_tangent;  // double-root location, (1 - sqrt(1-2/d3))/2
};

// Left side of the root equation and its t-derivative.
double root_equation_lhs(const DensityVector& dv, double t);
double root_equation_derivative(const DensityVector& dv, double t);

// Locates t0 by scanning (0,1) at step 1e-4 for the first sign change and
// bisecting to within tol. The scan's start sample at t=0 carries the sign
// of the d1 -> 0+ limit, so for d1=0 the result is the limiting value (in
// particular t0=0, phi=1 when no positive root exists). simple is false
// when |derivative_at_root| <= 1e-6 or when the left side grazes zero
// (a strictly positive local minimum below 1e-8) before the root.
// Throws ToleranceTooSmall for tol < 1e-15 and DomainError for bad dv.
PredictionResult root_t0(const DensityVector& dv, double tol = 1e-12);

// Principal-branch Lambert W on [-1/e, 0]: the solution W >= -1 of
// W * e^W = x, accurate to |W e^W - x| < 1e-12. Throws DomainError
// outside the interval. Values within a few ulp of -1/e return exactly -1.
double lambert_w(double x);

// Closed form for k=2: phi(d1,d2) = -W(-(1-d1) d2 e^-d2) / ((1-d1) d2).
// The argument of W always lies in [-1/e, 0) because u e^-u <= 1/e for all
// real u, with equality only at u=1. Throws DomainError unless
// 0 <= d1 < 1 and d2 > 0.
double phi_12(double d1, double d2);

// The discontinuity curve for k=3, d2=0:
//   d1 = 1 - exp((sqrt(d3)-sqrt(d3-2))^2 / 4) / (d3 - sqrt(d3 (d3-2))),
// defined for d3 >= 2 (DomainError below), ending at the critical point
// d3=2, d1 = 1 - sqrt(e)/2, where phi turns continuous with an infinite
// one-sided slope.
GammaPoint gamma_curve(double d3);

// Closed-form clause-density trajectory at rescaled stage t in [0,1):
//   sj(t) = (1-t)^j * sum_{l=j..k} C(l-1, j-1) dl t^(l-j)   for j >= 2,
//   s1(t) = 1 - t - (1-d1) exp(-sum_{j=2..k} dj t^(j-1)).
// s1 hits zero exactly at the roots of the root equation.
TrajectoryPoint trajectory_closed_form(const DensityVector& dv, double t);

// Numerically integrates the density flow
//   s1' = ((1-t-s1)/(1-t)) * (s2/(1-t)) - 1,
//   sj' = j (s_{j+1} - sj) / (1-t)   (s_{k+1} = 0)
// with an adaptive embedded Runge-Kutta pair at relative tolerance rtol,
// from t=0 toward t_end. Integration halts early where s1 crosses zero
// (the crossing is located to within rtol) and hard-stops at t = 1-1e-6;
// StepFailure is thrown if the step size underflows or t_end lies beyond
// the hard stop. Returns the accepted steps, including t=0 and the final
// point.
std::vector<TrajectoryPoint> trajectory_integrate(const DensityVector& dv,
                                                  double t_end,
                                                  double rtol = 1e-9);

// Maps branching-process rates to ensemble densities: d1 = 1 - e^-beta1,
// dj = j * betaj for j >= 2. With this map the root equation becomes
// ln(1-t) + sum_j j betaj t^(j-1) = 0. Throws DomainError for negative
// rates.
DensityVector hypergraph_params(const std::vector<double>& beta);

}  // namespace hornfall
