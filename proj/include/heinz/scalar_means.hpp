#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heinz/errors.hpp"

namespace heinz {

// Classification margin around the region boundary; values closer than this
// to r(tau) or R(tau) are BOUNDARY and need an explicit opt-in.
inline constexpr double kBoundaryDelta = 1e-3;

// Parameters closer than this to the poles of t(1-t) are rejected.
inline constexpr double kPoleGuard = 1e-6;

struct PositivePair {
  double a;
  double b;
  double c;  // a/b, fixed at construction

  PositivePair(double a_, double b_) : a(a_), b(b_), c(a_ / b_) {
    if (!(std::isfinite(a) && std::isfinite(b)) || a <= 0.0 || b <= 0.0)
      throw domain_error("PositivePair: a and b must be finite and > 0");
  }
};

enum class Region { Outside, Inside, Boundary, None };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::Outside: return "OUTSIDE";
    case Region::Inside: return "INSIDE";
    case Region::Boundary: return "BOUNDARY";
    default: return "NONE";
  }
}

// A (nu, tau) parameter pair together with its region relative to
// [r(tau), R(tau)], r = min(tau, 1-tau), R = 1 - r.
struct ParamPair {
  double nu;
  double tau;
  double r;
  double R;
  Region region;

  ParamPair(double nu_, double tau_, double delta = kBoundaryDelta)
      : nu(nu_), tau(tau_) {
    if (!(nu > 0.0 && nu < 1.0) || !(tau > 0.0 && tau < 1.0))
      throw domain_error("ParamPair: nu and tau must lie in (0,1)");
    r = std::min(tau, 1.0 - tau);
    R = 1.0 - r;
    if (nu <= r - delta || nu >= R + delta)
      region = Region::Outside;
    else if (nu >= r + delta && nu <= R - delta)
      region = Region::Inside;
    else
      region = Region::Boundary;
  }
};

// log(x/y) without cancellation when x is close to y.
inline double log_ratio(double x, double y) {
  double q = x / y;
  if (q > 0.5 && q < 2.0) return std::log1p((x - y) / y);
  return std::log(q);
}

// S(t) = a^t b^(1-t) + a^(1-t) b^t, the two-term Heinz sum.
inline double heinz_sum(const PositivePair& p, double t) {
  return std::pow(p.a, t) * std::pow(p.b, 1.0 - t) +
         std::pow(p.a, 1.0 - t) * std::pow(p.b, t);
}

// a + b - S(t) in the factored form (a^t - b^t)(a^(1-t) - b^(1-t)),
// which is nonnegative by construction and immune to the catastrophic
// cancellation of the direct difference when a is close to b.
inline double heinz_sum_gap(const PositivePair& p, double t) {
  if (p.a == p.b) return 0.0;
  double L = log_ratio(p.a, p.b);
  return p.b * std::expm1(t * L) * std::expm1((1.0 - t) * L);
}

inline double heinz(const PositivePair& p, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw domain_error("heinz: t must lie in [0,1]");
  return 0.5 * heinz_sum(p, t);
}

inline double heron(const PositivePair& p, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw domain_error("heron: t must lie in [0,1]");
  return (1.0 - t) * (std::sqrt(p.a) * std::sqrt(p.b)) + t * 0.5 * (p.a + p.b);
}

struct WeightedMeans {
  double arith;  // (1-t)a + tb
  double geo;    // a^(1-t) b^t
};

inline WeightedMeans weighted_means(const PositivePair& p, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("weighted_means: t must lie in [0,1]");
  return {(1.0 - t) * p.a + t * p.b,
          std::pow(p.a, 1.0 - t) * std::pow(p.b, t)};
}

namespace detail {
inline void check_open_unit(double t, const char* who) {
  if (!(t > 0.0 && t < 1.0))
    throw domain_error(std::string(who) + ": t must lie in (0,1)");
  if (t < kPoleGuard || t > 1.0 - kPoleGuard)
    throw domain_error(std::string(who) +
                       ": t within 1e-6 of the poles at {0,1} is rejected");
}
}  // namespace detail

// f(t) = (1 + c - (c^t + c^(1-t))) / (t(1-t)); decreasing on (0,1/2),
// convex, minimal at t = 1/2.
inline double f_ratio(double c, double t) {
  if (!(std::isfinite(c) && c > 0.0))
    throw domain_error("f_ratio: c must be finite and > 0");
  detail::check_open_unit(t, "f_ratio");
  double L = std::log(c);
  return std::expm1(t * L) * std::expm1((1.0 - t) * L) / (t * (1.0 - t));
}

// ((1 + c) / (c^t + c^(1-t)))^(1/(t(1-t))); maximal at t = 1/2.
inline double mult_ratio(double c, double t) {
  if (!(std::isfinite(c) && c > 0.0))
    throw domain_error("mult_ratio: c must be finite and > 0");
  detail::check_open_unit(t, "mult_ratio");
  double L = std::log(c);
  double s = std::pow(c, t) + std::pow(c, 1.0 - t);
  double gap = std::expm1(t * L) * std::expm1((1.0 - t) * L);
  return std::exp(std::log1p(gap / s) / (t * (1.0 - t)));
}

// F_tau(t) = a nabla b - ((a nabla b - H_tau)/(tau(1-tau))) t(1-t), the
// quadratic through (0, a nabla b), (tau, H_tau), (1, a nabla b).
inline double interpolator_F(const PositivePair& p, double tau, double t) {
  if (!(tau > 0.0 && tau < 1.0))
    throw domain_error("interpolator_F: tau must lie in (0,1)");
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("interpolator_F: t must lie in [0,1]");
  double anb = 0.5 * (p.a + p.b);
  double coef = 0.5 * heinz_sum_gap(p, tau) / (tau * (1.0 - tau));
  return anb - coef * t * (1.0 - t);
}

inline double alpha(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw domain_error("alpha: t must lie in [0,1]");
  double d = 1.0 - 2.0 * t;
  return d * d;
}

enum class ScalarRelationId {
  CORE_COMPARISON,
  QUAD_REFINEMENT,
  HERON_BOUND,
  SQUARED,
  LOG_REVERSE,
  KITT_MAN_REVERSE,
  SQUARED_LOG,
  MULTIPLICATIVE,
  MULT_REVERSE_HALF,
  GEOMETRIC_REFINEMENT,
};

inline const char* relation_name(ScalarRelationId id) {
  switch (id) {
    case ScalarRelationId::CORE_COMPARISON: return "CORE_COMPARISON";
    case ScalarRelationId::QUAD_REFINEMENT: return "QUAD_REFINEMENT";
    case ScalarRelationId::HERON_BOUND: return "HERON_BOUND";
    case ScalarRelationId::SQUARED: return "SQUARED";
    case ScalarRelationId::LOG_REVERSE: return "LOG_REVERSE";
    case ScalarRelationId::KITT_MAN_REVERSE: return "KITT_MAN_REVERSE";
    case ScalarRelationId::SQUARED_LOG: return "SQUARED_LOG";
    case ScalarRelationId::MULTIPLICATIVE: return "MULTIPLICATIVE";
    case ScalarRelationId::MULT_REVERSE_HALF: return "MULT_REVERSE_HALF";
    case ScalarRelationId::GEOMETRIC_REFINEMENT: return "GEOMETRIC_REFINEMENT";
  }
  return "?";
}

inline const std::vector<ScalarRelationId>& scalar_relation_ids() {
  static const std::vector<ScalarRelationId> ids = {
      ScalarRelationId::CORE_COMPARISON,
      ScalarRelationId::QUAD_REFINEMENT,
      ScalarRelationId::HERON_BOUND,
      ScalarRelationId::SQUARED,
      ScalarRelationId::LOG_REVERSE,
      ScalarRelationId::KITT_MAN_REVERSE,
      ScalarRelationId::SQUARED_LOG,
      ScalarRelationId::MULTIPLICATIVE,
      ScalarRelationId::MULT_REVERSE_HALF,
      ScalarRelationId::GEOMETRIC_REFINEMENT,
  };
  return ids;
}

// True for the comparison relations parameterized by a (nu, tau) pair whose
// direction flips with the region.
inline bool relation_takes_pair(ScalarRelationId id) {
  return id == ScalarRelationId::CORE_COMPARISON ||
         id == ScalarRelationId::SQUARED ||
         id == ScalarRelationId::MULTIPLICATIVE;
}

struct RelationOutcome {
  std::string relation;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs; >= 0 means the inequality holds
  bool holds = false;
  Region region = Region::None;
  std::vector<std::pair<std::string, double>> params;
  std::string norm;  // norm label for norm-parameterized relations, else ""
};

struct ScalarEvalOptions {
  double tol_rel = 1e-9;
  bool allow_boundary = false;
};

using ScalarParams = std::variant<double, ParamPair>;

namespace detail {

inline void finish(RelationOutcome& out, double tol_rel) {
  out.margin = out.rhs - out.lhs;
  double scale = std::max({std::fabs(out.lhs), std::fabs(out.rhs), 1.0});
  out.holds = out.margin >= -tol_rel * scale;
}

// (a nabla b - H_x)/(x(1-x)), through the factored gap.
inline double core_quotient(const PositivePair& p, double x) {
  return 0.5 * heinz_sum_gap(p, x) / (x * (1.0 - x));
}

// ((a nabla b)^2 - H_x^2)/(x(1-x)), through the factored gap.
inline double squared_quotient(const PositivePair& p, double x) {
  double s = heinz_sum(p, x);
  return 0.25 * heinz_sum_gap(p, x) * (p.a + p.b + s) / (x * (1.0 - x));
}

// ((a nabla b)/H_x)^(1/(x(1-x))) evaluated through log1p of the gap ratio.
inline double mult_quotient(const PositivePair& p, double x) {
  double s = heinz_sum(p, x);
  double gap = heinz_sum_gap(p, x);
  return std::exp(std::log1p(gap / s) / (x * (1.0 - x)));
}

}  // namespace detail

inline RelationOutcome evaluate_scalar_relation(
    ScalarRelationId rel, const PositivePair& p, const ScalarParams& params,
    const ScalarEvalOptions& opts = {}) {
  RelationOutcome out;
  out.relation = relation_name(rel);

  if (relation_takes_pair(rel)) {
    if (!std::holds_alternative<ParamPair>(params))
      throw usage_error(std::string(relation_name(rel)) +
                        " takes a (nu, tau) parameter pair");
    const ParamPair& q = std::get<ParamPair>(params);
    if (q.region == Region::Boundary && !opts.allow_boundary)
      throw precondition_error(
          "BOUNDARY region rejected without opt-in: direction is undefined "
          "up to tolerance");
    detail::check_open_unit(q.nu, relation_name(rel));
    detail::check_open_unit(q.tau, relation_name(rel));
    out.region = q.region;
    out.params = {{"a", p.a}, {"b", p.b}, {"nu", q.nu}, {"tau", q.tau}};
    // BOUNDARY (opted in) uses the OUTSIDE orientation; at the exact
    // boundary both orientations agree up to tolerance.
    bool outside = q.region != Region::Inside;

    double at_nu = 0.0, at_tau = 0.0;
    switch (rel) {
      case ScalarRelationId::CORE_COMPARISON:
        at_nu = detail::core_quotient(p, q.nu);
        at_tau = detail::core_quotient(p, q.tau);
        break;
      case ScalarRelationId::SQUARED:
        at_nu = detail::squared_quotient(p, q.nu);
        at_tau = detail::squared_quotient(p, q.tau);
        break;
      default:
        at_nu = detail::mult_quotient(p, q.nu);
        at_tau = detail::mult_quotient(p, q.tau);
        break;
    }
    if (rel == ScalarRelationId::MULTIPLICATIVE) {
      // the multiplicative quotient peaks at t = 1/2, so the farther
      // parameter sits on the small side
      out.lhs = outside ? at_nu : at_tau;
      out.rhs = outside ? at_tau : at_nu;
    } else {
      out.lhs = outside ? at_tau : at_nu;
      out.rhs = outside ? at_nu : at_tau;
    }
    detail::finish(out, opts.tol_rel);
    return out;
  }

  if (!std::holds_alternative<double>(params))
    throw usage_error(std::string(relation_name(rel)) +
                      " takes a single parameter");
  double t = std::get<double>(params);
  out.params = {{"a", p.a}, {"b", p.b}, {"t", t}};
  double sum = p.a + p.b;

  switch (rel) {
    case ScalarRelationId::QUAD_REFINEMENT: {
      if (!(t >= 0.0 && t <= 1.0))
        throw domain_error("QUAD_REFINEMENT: t must lie in [0,1]");
      double d = p.a - p.b;
      double sq = std::sqrt(p.a) + std::sqrt(p.b);
      double root_gap_sq = (d * d) / (sq * sq);  // (sqrt a - sqrt b)^2
      out.lhs = (sum - heinz_sum_gap(p, t)) + 4.0 * t * (1.0 - t) * root_gap_sq;
      out.rhs = sum;
      break;
    }
    case ScalarRelationId::HERON_BOUND: {
      out.lhs = heinz(p, t);
      out.rhs = heron(p, alpha(t));
      break;
    }
    case ScalarRelationId::LOG_REVERSE: {
      if (!(t >= 0.0 && t <= 1.0))
        throw domain_error("LOG_REVERSE: t must lie in [0,1]");
      double term = t * (1.0 - t) * (p.b - p.a) * log_ratio(p.b, p.a);
      out.lhs = sum;
      out.rhs = (sum - heinz_sum_gap(p, t)) + term;
      break;
    }
    case ScalarRelationId::KITT_MAN_REVERSE: {
      if (!(t >= 0.0 && t <= 1.0))
        throw domain_error("KITT_MAN_REVERSE: t must lie in [0,1]");
      double s = sum - heinz_sum_gap(p, t);
      double d = p.a - p.b;
      out.lhs = sum * sum;
      out.rhs = s * s + 2.0 * std::max(t, 1.0 - t) * d * d;
      break;
    }
    case ScalarRelationId::SQUARED_LOG: {
      if (!(t >= 0.0 && t <= 1.0))
        throw domain_error("SQUARED_LOG: t must lie in [0,1]");
      double s = sum - heinz_sum_gap(p, t);
      double term =
          2.0 * t * (1.0 - t) * (p.b - p.a) * sum * log_ratio(p.b, p.a);
      out.lhs = sum * sum;
      out.rhs = s * s + term;
      break;
    }
    case ScalarRelationId::MULT_REVERSE_HALF: {
      if (!(t >= 0.0 && t <= 1.0))
        throw domain_error("MULT_REVERSE_HALF: t must lie in [0,1]");
      double g2 = 2.0 * std::sqrt(p.a) * std::sqrt(p.b);
      double d = p.a - p.b;
      double sq = std::sqrt(p.a) + std::sqrt(p.b);
      double u = (d * d) / (sq * sq) / g2;  // (a nabla b)/(a # b) = 1 + u
      double factor = std::exp(4.0 * t * (1.0 - t) * std::log1p(u));
      out.lhs = sum;
      out.rhs = factor * (sum - heinz_sum_gap(p, t));
      break;
    }
    case ScalarRelationId::GEOMETRIC_REFINEMENT: {
      detail::check_open_unit(t, "GEOMETRIC_REFINEMENT");
      double g2 = 2.0 * std::sqrt(p.a) * std::sqrt(p.b);
      double gap = heinz_sum_gap(p, t);
      double s = sum - gap;
      double mid =
          sum * std::exp(std::log1p(-gap / sum) / (4.0 * t * (1.0 - t)));
      // chain: 2 sqrt(ab) <= mid <= S(t); the outcome carries the ends and
      // the binding margin
      out.lhs = g2;
      out.rhs = s;
      out.margin = std::min(mid - g2, s - mid);
      double scale = std::max({std::fabs(out.lhs), std::fabs(out.rhs), 1.0});
      out.holds = out.margin >= -opts.tol_rel * scale;
      return out;
    }
    default:
      throw usage_error("unhandled scalar relation");
  }
  detail::finish(out, opts.tol_rel);
  return out;
}

}  // namespace heinz
