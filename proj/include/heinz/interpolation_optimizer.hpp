#pragma once

#include <cmath>
#include <vector>

#include "heinz/errors.hpp"
#include "heinz/quadrature.hpp"
#include "heinz/scalar_means.hpp"

namespace heinz {

// ell(tau) = 8 tau^3 - 12 tau^2 + 1, Horner form.
inline double cubic_ell(double tau) {
  return ((8.0 * tau - 12.0) * tau) * tau + 1.0;
}

struct TauStarResult {
  double tau;       // root in (0, 1/2)
  double mirror;    // 1 - tau, minimizer by symmetry
  double residual;  // |ell(tau)|
};

// Root of ell on (0,1/2): bisection to width 1e-12, then two Newton steps.
// ell(0) = 1 > 0 > -1 = ell(1/2) guarantees the bracket.
inline TauStarResult tau_star(double tol = 1e-12) {
  if (!(tol >= 1e-15)) throw domain_error("tau_star: tol must be >= 1e-15");
  double lo = 0.0, hi = 0.5;
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    double v = cubic_ell(mid);
    if (v == 0.0) {
      lo = hi = mid;
      break;
    }
    (v > 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 2; ++i) {
    double d = 24.0 * x * (x - 1.0);
    x -= cubic_ell(x) / d;
  }
  double res = std::fabs(cubic_ell(x));
  if (!(res <= tol))
    throw numerical_error("tau_star: residual above requested tolerance");
  return {x, 1.0 - x, res};
}

// G(tau) = integral over [0,1/2] of |H(t) - F_tau(t)| with a = 1.  The
// integrand is smooth on each side of t = tau and the sign of H - F_tau is
// known there, so the absolute value splits into two signed integrals.
struct ErrorFunctional {
  double b;
  double quad_tol;
  double kink = 0.0;  // tau of the most recent evaluation

  ErrorFunctional(double b_, double quad_tol_) : b(b_), quad_tol(quad_tol_) {
    if (!(std::isfinite(b) && b > 0.0))
      throw domain_error("ErrorFunctional: b must be finite and > 0");
    if (!(quad_tol > 0.0))
      throw domain_error("ErrorFunctional: quad_tol must be > 0");
  }

  double operator()(double tau) {
    if (!(tau > 0.0 && tau <= 0.5))
      throw domain_error("ErrorFunctional: tau must lie in (0,1/2]");
    kink = tau;
    PositivePair p(1.0, b);
    double anb = 0.5 * (1.0 + b);
    double coef = 0.5 * heinz_sum_gap(p, tau) / (tau * (1.0 - tau));
    auto H = [&](double t) { return 0.5 * heinz_sum(p, t); };
    auto F = [&](double t) { return anb - coef * t * (1.0 - t); };
    // F - H >= 0 on [0,tau], H - F >= 0 on [tau,1/2]; the right piece is
    // empty at tau = 1/2, where F is the upper quadratic envelope.
    double share = 2.0 * quad_tol * tau;  // proportional to piece length
    double left =
        integrate([&](double t) { return F(t) - H(t); }, 0.0, tau, share);
    double right = tau < 0.5
                       ? integrate([&](double t) { return H(t) - F(t); }, tau,
                                   0.5, quad_tol - share)
                       : 0.0;
    return left + right;
  }
};

inline double l1_error(double b, double tau, double quad_tol) {
  ErrorFunctional g(b, quad_tol);
  return g(tau);
}

struct MinimizeResult {
  double tau_min;
  double g_min;
};

// Coarse 49-point grid over [0.01,0.49] picks the bracket; golden-section
// narrows it to width 1e-5.
inline MinimizeResult minimize_l1(double b, double quad_tol) {
  ErrorFunctional g(b, quad_tol);
  int best = 1;
  double best_val = g(0.01);
  for (int k = 2; k <= 49; ++k) {
    double val = g(0.01 * k);
    if (val < best_val) {
      best_val = val;
      best = k;
    }
  }
  double lo = 0.01 * std::max(best - 1, 1);
  double hi = 0.01 * std::min(best + 1, 49);

  const double inv_phi = 0.6180339887498948482;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = g(x1);
  double f2 = g(x2);
  while (hi - lo > 1e-5) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = g(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = g(x2);
    }
  }
  double tau_min = 0.5 * (lo + hi);
  return {tau_min, g(tau_min)};
}

enum class TighterReverse { LOG, KM, TIE };

inline const char* to_string(TighterReverse t) {
  switch (t) {
    case TighterReverse::LOG: return "LOG";
    case TighterReverse::KM: return "KM";
    default: return "TIE";
  }
}

struct ReverseComparison {
  double log_gap;  // slack of the log-refined reverse bound
  double km_gap;   // slack of the max-weight reverse, unsquared scale
  TighterReverse tighter;
};

// Puts the two reverse bounds on the same additive scale: each gap is
// (upper bound for a+b) - (a+b), the squared bound via a square root.
inline ReverseComparison compare_reverses(const PositivePair& p, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw domain_error("compare_reverses: t must lie in (0,1)");
  double sum = p.a + p.b;
  double gap = heinz_sum_gap(p, t);
  double s = sum - gap;
  double log_gap = t * (1.0 - t) * (p.b - p.a) * log_ratio(p.b, p.a) - gap;
  double d = p.a - p.b;
  double km_gap =
      std::sqrt(s * s + 2.0 * std::max(t, 1.0 - t) * d * d) - sum;
  TighterReverse tag;
  if (std::fabs(log_gap - km_gap) <=
      1e-12 * (1.0 + std::max(std::fabs(log_gap), std::fabs(km_gap))))
    tag = TighterReverse::TIE;
  else
    tag = log_gap < km_gap ? TighterReverse::LOG : TighterReverse::KM;
  return {log_gap, km_gap, tag};
}

}  // namespace heinz
