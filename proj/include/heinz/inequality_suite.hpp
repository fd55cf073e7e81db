#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heinz/errors.hpp"
#include "heinz/linalg.hpp"
#include "heinz/matrix_means.hpp"
#include "heinz/report.hpp"
#include "heinz/rng.hpp"
#include "heinz/scalar_means.hpp"

namespace heinz {

enum class MatrixRelationId {
  HS_SQUARED_REFINEMENT,
  HS_DIFFERENCE,
  KANTOROVICH_REVERSE,
  UI_NORM_REFINEMENT,
  MATRIX_HOLDER,
  AM_GM_NORM,
  TRACE_REVERSE_LEMMA,
  TRACE_REFINEMENT,
  TRACE_REVERSE,
  DET_REFINEMENT,
  DET_SQUARED,
  DET_MULTIPLICATIVE,
  LOEWNER_CORE,
  LOEWNER_SQUARED_PARAM,
};

inline const char* relation_name(MatrixRelationId id) {
  switch (id) {
    case MatrixRelationId::HS_SQUARED_REFINEMENT: return "HS_SQUARED_REFINEMENT";
    case MatrixRelationId::HS_DIFFERENCE: return "HS_DIFFERENCE";
    case MatrixRelationId::KANTOROVICH_REVERSE: return "KANTOROVICH_REVERSE";
    case MatrixRelationId::UI_NORM_REFINEMENT: return "UI_NORM_REFINEMENT";
    case MatrixRelationId::MATRIX_HOLDER: return "MATRIX_HOLDER";
    case MatrixRelationId::AM_GM_NORM: return "AM_GM_NORM";
    case MatrixRelationId::TRACE_REVERSE_LEMMA: return "TRACE_REVERSE_LEMMA";
    case MatrixRelationId::TRACE_REFINEMENT: return "TRACE_REFINEMENT";
    case MatrixRelationId::TRACE_REVERSE: return "TRACE_REVERSE";
    case MatrixRelationId::DET_REFINEMENT: return "DET_REFINEMENT";
    case MatrixRelationId::DET_SQUARED: return "DET_SQUARED";
    case MatrixRelationId::DET_MULTIPLICATIVE: return "DET_MULTIPLICATIVE";
    case MatrixRelationId::LOEWNER_CORE: return "LOEWNER_CORE";
    case MatrixRelationId::LOEWNER_SQUARED_PARAM: return "LOEWNER_SQUARED_PARAM";
  }
  throw usage_error("unknown matrix relation id");
}

inline std::vector<MatrixRelationId> matrix_relation_ids() {
  return {
      MatrixRelationId::HS_SQUARED_REFINEMENT,
      MatrixRelationId::HS_DIFFERENCE,
      MatrixRelationId::KANTOROVICH_REVERSE,
      MatrixRelationId::UI_NORM_REFINEMENT,
      MatrixRelationId::MATRIX_HOLDER,
      MatrixRelationId::AM_GM_NORM,
      MatrixRelationId::TRACE_REVERSE_LEMMA,
      MatrixRelationId::TRACE_REFINEMENT,
      MatrixRelationId::TRACE_REVERSE,
      MatrixRelationId::DET_REFINEMENT,
      MatrixRelationId::DET_SQUARED,
      MatrixRelationId::DET_MULTIPLICATIVE,
      MatrixRelationId::LOEWNER_CORE,
      MatrixRelationId::LOEWNER_SQUARED_PARAM,
  };
}

// Where a two-parameter relation is claimed to hold.
enum class RegionRule { Both, OutsideOnly, InsideOnly, SingleParam };

inline RegionRule relation_region_rule(MatrixRelationId id) {
  switch (id) {
    case MatrixRelationId::HS_SQUARED_REFINEMENT:
    case MatrixRelationId::HS_DIFFERENCE:
    case MatrixRelationId::DET_MULTIPLICATIVE:
    case MatrixRelationId::LOEWNER_CORE:
    case MatrixRelationId::LOEWNER_SQUARED_PARAM:
      return RegionRule::Both;
    case MatrixRelationId::KANTOROVICH_REVERSE:
    case MatrixRelationId::UI_NORM_REFINEMENT:
    case MatrixRelationId::TRACE_REFINEMENT:
    case MatrixRelationId::DET_REFINEMENT:
    case MatrixRelationId::DET_SQUARED:
      return RegionRule::OutsideOnly;
    case MatrixRelationId::TRACE_REVERSE:
      return RegionRule::InsideOnly;
    case MatrixRelationId::MATRIX_HOLDER:
    case MatrixRelationId::AM_GM_NORM:
    case MatrixRelationId::TRACE_REVERSE_LEMMA:
      return RegionRule::SingleParam;
  }
  throw usage_error("unknown matrix relation id");
}

inline bool relation_takes_norm(MatrixRelationId id) {
  return id == MatrixRelationId::UI_NORM_REFINEMENT ||
         id == MatrixRelationId::MATRIX_HOLDER ||
         id == MatrixRelationId::AM_GM_NORM;
}

inline bool relation_requires_pd(MatrixRelationId id) {
  switch (id) {
    case MatrixRelationId::KANTOROVICH_REVERSE:
    case MatrixRelationId::TRACE_REVERSE_LEMMA:
    case MatrixRelationId::TRACE_REFINEMENT:
    case MatrixRelationId::TRACE_REVERSE:
    case MatrixRelationId::DET_REFINEMENT:
    case MatrixRelationId::DET_SQUARED:
    case MatrixRelationId::DET_MULTIPLICATIVE:
    case MatrixRelationId::LOEWNER_CORE:
    case MatrixRelationId::LOEWNER_SQUARED_PARAM:
      return true;
    default:
      return false;
  }
}

struct MatrixEvalOptions {
  double tol_rel = 1e-8;
  bool allow_boundary = false;
};

using MatrixParams = std::variant<double, ParamPair>;

namespace detail {

inline la::EigenDecomposition require_pd(const la::HermitianMatrix& H,
                                         const char* who) {
  la::EigenDecomposition e = la::eigh(H);
  if (e.lambda.back() <= 0.0)
    throw precondition_error(std::string(who) +
                             ": matrix must be positive definite");
  return e;
}

// Geometric mean of n nonnegative factors, i.e. (prod f_i)^(1/n).  Any zero
// factor collapses the product; logs keep products of size-1e8 values finite.
inline double geometric_product(const std::vector<double>& f) {
  double acc = 0.0;
  for (double v : f) {
    if (v <= 0.0) return 0.0;
    acc += std::log(v);
  }
  return std::exp(acc / static_cast<double>(f.size()));
}

inline double hs_norm(const la::ComplexMatrix& m) {
  return la::ui_norm(m, la::NormKind::hilbert_schmidt());
}

// Eigenvalues of A^{-1/2} B A^{-1/2}; both inputs must be positive definite.
// Trace, determinant, and order comparisons of the mean family reduce to
// scalar inequalities in these eigenvalues, which keeps the verdicts immune
// to the eigensolver's off-diagonal dust.
struct CongruenceData {
  la::ComplexMatrix a_half;
  la::EigenDecomposition inner;  // of A^{-1/2} B A^{-1/2}
};

inline CongruenceData congruence_split(const MeanTriple& T, const char* who) {
  require_pd(T.A, who);
  require_pd(T.B, who);
  la::ComplexMatrix a_half = la::matrix_power(T.A, 0.5).matrix();
  la::ComplexMatrix a_inv_half = la::matrix_power(T.A, -0.5).matrix();
  la::HermitianMatrix inner(a_inv_half * T.B.matrix() * a_inv_half);
  la::EigenDecomposition e = la::eigh(inner);
  if (e.lambda.back() <= 0.0)
    throw precondition_error(std::string(who) +
                             ": congruence spectrum not positive");
  return CongruenceData{std::move(a_half), std::move(e)};
}

inline RelationOutcome finish_matrix(MatrixRelationId rel, double lhs,
                                     double rhs, Region region,
                                     std::vector<std::pair<std::string, double>> params,
                                     std::string norm, double tol_rel) {
  RelationOutcome out;
  out.relation = relation_name(rel);
  out.lhs = lhs;
  out.rhs = rhs;
  out.margin = rhs - lhs;
  double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
  out.holds = out.margin >= -tol_rel * scale;
  out.region = region;
  out.params = std::move(params);
  out.norm = std::move(norm);
  return out;
}

}  // namespace detail

inline RelationOutcome evaluate_matrix_relation(
    MatrixRelationId rel, const MeanTriple& T, const MatrixParams& params,
    std::optional<la::NormKind> norm = std::nullopt,
    const MatrixEvalOptions& opts = {}) {
  const RegionRule rule = relation_region_rule(rel);
  const bool single = rule == RegionRule::SingleParam;

  if (single != std::holds_alternative<double>(params))
    throw usage_error(std::string(relation_name(rel)) +
                      (single ? ": expects a single parameter t"
                              : ": expects a parameter pair (nu, tau)"));
  if (relation_takes_norm(rel)) {
    if (!norm) throw usage_error(std::string(relation_name(rel)) +
                                 ": requires a norm argument");
  } else if (norm) {
    throw usage_error(std::string(relation_name(rel)) +
                      ": does not take a norm argument");
  }

  const char* who = relation_name(rel);
  const double tol = opts.tol_rel;
  const la::ComplexMatrix& A = T.A.matrix();
  const la::ComplexMatrix& B = T.B.matrix();

  // ---- single-parameter relations ----
  if (single) {
    double t = std::get<double>(params);
    std::vector<std::pair<std::string, double>> pv{{"t", t}};
    switch (rel) {
      case MatrixRelationId::MATRIX_HOLDER: {
        if (!(t >= 0.0 && t <= 1.0))
          throw domain_error("MATRIX_HOLDER: t must lie in [0, 1]");
        double x = la::ui_norm(A * T.X, *norm);
        double y = la::ui_norm(T.X * B, *norm);
        la::ComplexMatrix mid = la::matrix_power(T.A, t).matrix() * T.X *
                                la::matrix_power(T.B, 1.0 - t).matrix();
        double lhs = la::ui_norm(mid, *norm);
        double rhs = std::pow(x, t) * std::pow(y, 1.0 - t);
        return detail::finish_matrix(rel, lhs, rhs, Region::None,
                                     std::move(pv), norm->name(), tol);
      }
      case MatrixRelationId::AM_GM_NORM: {
        // Fixed-form relation: t is echoed into the outcome but does not
        // enter the formula.
        la::ComplexMatrix mid = la::matrix_power(T.A, 0.5).matrix() * T.X *
                                la::matrix_power(T.B, 0.5).matrix();
        double lhs = 2.0 * la::ui_norm(mid, *norm);
        double rhs = la::ui_norm(A * T.X + T.X * B, *norm);
        return detail::finish_matrix(rel, lhs, rhs, Region::None,
                                     std::move(pv), norm->name(), tol);
      }
      case MatrixRelationId::TRACE_REVERSE_LEMMA: {
        if (!(t >= 0.0 && t <= 1.0))
          throw domain_error("TRACE_REVERSE_LEMMA: t must lie in [0, 1]");
        detail::require_pd(T.A, who);
        detail::require_pd(T.B, who);
        double ta = A.trace().real();
        double tb = B.trace().real();
        double th = trace_power_product(T.A, T.B, t);
        double th_half = trace_power_product(T.A, T.B, 0.5);
        double q = ta * tb / (th_half * th_half);
        double lhs = std::pow(ta, t) * std::pow(tb, 1.0 - t);
        double rhs = th * std::pow(q, std::max(t, 1.0 - t));
        return detail::finish_matrix(rel, lhs, rhs, Region::None,
                                     std::move(pv), "", tol);
      }
      default:
        throw usage_error("unreachable single-parameter relation");
    }
  }

  // ---- two-parameter relations ----
  const ParamPair& pp = std::get<ParamPair>(params);
  if (pp.region == Region::Boundary && !opts.allow_boundary)
    throw precondition_error(std::string(who) +
                             ": (nu, tau) lies on the region boundary; "
                             "enable allow_boundary to evaluate anyway");
  const bool outside = pp.region != Region::Inside;
  switch (rule) {
    case RegionRule::OutsideOnly:
      if (pp.region == Region::Inside)
        throw usage_error(std::string(who) +
                          ": only claimed for nu outside [tau, 1-tau]");
      break;
    case RegionRule::InsideOnly:
      if (outside)
        throw usage_error(std::string(who) +
                          ": only claimed for nu inside [tau, 1-tau]");
      break;
    default:
      break;
  }

  const double nu = pp.nu;
  const double tau = pp.tau;
  detail::check_open_unit(nu, who);
  detail::check_open_unit(tau, who);
  const double rho = (nu * (1.0 - nu)) / (tau * (1.0 - tau));
  std::vector<std::pair<std::string, double>> pv{{"nu", nu}, {"tau", tau}};

  switch (rel) {
    case MatrixRelationId::HS_SQUARED_REFINEMENT: {
      la::ComplexMatrix w = A * T.X + T.X * B;
      double nw = detail::hs_norm(w);
      double ns_nu = detail::hs_norm(heinz_sandwich(T, nu));
      double ns_tau = detail::hs_norm(heinz_sandwich(T, tau));
      double refined = ns_nu * ns_nu + rho * (nw * nw - ns_tau * ns_tau);
      double lhs = outside ? refined : nw * nw;
      double rhs = outside ? nw * nw : refined;
      return detail::finish_matrix(rel, lhs, rhs, pp.region, std::move(pv),
                                   la::NormKind::hilbert_schmidt().name(), tol);
    }
    case MatrixRelationId::HS_DIFFERENCE: {
      la::ComplexMatrix w = A * T.X + T.X * B;
      double d_nu = detail::hs_norm(w - heinz_sandwich(T, nu)) / (nu * (1.0 - nu));
      double d_tau =
          detail::hs_norm(w - heinz_sandwich(T, tau)) / (tau * (1.0 - tau));
      double lhs = outside ? d_tau : d_nu;
      double rhs = outside ? d_nu : d_tau;
      return detail::finish_matrix(rel, lhs, rhs, pp.region, std::move(pv),
                                   la::NormKind::hilbert_schmidt().name(), tol);
    }
    case MatrixRelationId::KANTOROVICH_REVERSE: {
      SpectralBounds sb = spectral_bounds(T.A, T.B);
      double base = (sb.M + sb.m) / (2.0 * std::sqrt(sb.m) * std::sqrt(sb.M));
      la::ComplexMatrix w = A * T.X + T.X * B;
      double lhs = detail::hs_norm(w);
      double rhs = std::pow(base, rho) * detail::hs_norm(heinz_sandwich(T, nu));
      return detail::finish_matrix(rel, lhs, rhs, pp.region, std::move(pv),
                                   la::NormKind::hilbert_schmidt().name(), tol);
    }
    case MatrixRelationId::UI_NORM_REFINEMENT: {
      double x = la::ui_norm(A * T.X, *norm);
      double y = la::ui_norm(T.X * B, *norm);
      if (x <= 0.0 || y <= 0.0)
        throw precondition_error(
            "UI_NORM_REFINEMENT: factor norms must be positive");
      double bracket = heinz_sum_gap(PositivePair(x, y), tau);
      double lhs = la::ui_norm(heinz_sandwich(T, nu), *norm) + rho * bracket;
      double rhs = x + y;
      return detail::finish_matrix(rel, lhs, rhs, pp.region, std::move(pv),
                                   norm->name(), tol);
    }
    case MatrixRelationId::TRACE_REFINEMENT:
    case MatrixRelationId::TRACE_REVERSE: {
      detail::require_pd(T.A, who);
      detail::require_pd(T.B, who);
      double ta = A.trace().real();
      double tb = B.trace().real();
      double th_half = trace_power_product(T.A, T.B, 0.5);
      double q = ta * tb / (th_half * th_half);
      double trs_nu = trace_power_product(T.A, T.B, nu) +
                      trace_power_product(T.A, T.B, 1.0 - nu);
      double trs_tau = trace_power_product(T.A, T.B, tau) +
                       trace_power_product(T.A, T.B, 1.0 - tau);
      double tr_ab = ta + tb;
      if (rel == MatrixRelationId::TRACE_REFINEMENT) {
        double lhs =
            trs_nu + rho * (tr_ab - std::pow(q, std::max(tau, 1.0 - tau)) * trs_tau);
        return detail::finish_matrix(rel, lhs, tr_ab, pp.region, std::move(pv),
                                     "", tol);
      }
      double rhs = std::pow(q, std::max(nu, 1.0 - nu)) * trs_nu +
                   rho * (tr_ab - trs_tau);
      return detail::finish_matrix(rel, tr_ab, rhs, pp.region, std::move(pv),
                                   "", tol);
    }
    case MatrixRelationId::DET_REFINEMENT:
    case MatrixRelationId::DET_SQUARED: {
      detail::CongruenceData cd = detail::congruence_split(T, who);
      size_t n = cd.inner.lambda.size();
      std::vector<double> sum_nu(n), gap_tau(n), full(n);
      for (size_t i = 0; i < n; ++i) {
        PositivePair pl(cd.inner.lambda[i], 1.0);
        sum_nu[i] = heinz_sum(pl, nu);
        gap_tau[i] = heinz_sum_gap(pl, tau);
        full[i] = 1.0 + cd.inner.lambda[i];
      }
      la::EigenDecomposition ea = la::eigh(T.A);
      double det_a_root = detail::geometric_product(ea.lambda);
      double mean_part = det_a_root * detail::geometric_product(sum_nu);
      double gap_part = det_a_root * detail::geometric_product(gap_tau);
      double whole = det_a_root * detail::geometric_product(full);
      double lhs, rhs;
      if (rel == MatrixRelationId::DET_REFINEMENT) {
        lhs = mean_part + rho * gap_part;
        rhs = whole;
      } else {
        lhs = mean_part * mean_part + rho * rho * gap_part * gap_part;
        rhs = whole * whole;
      }
      return detail::finish_matrix(rel, lhs, rhs, pp.region, std::move(pv),
                                   "", tol);
    }
    case MatrixRelationId::DET_MULTIPLICATIVE: {
      detail::CongruenceData cd = detail::congruence_split(T, who);
      auto value_at = [&](double x) {
        double acc = 0.0;
        for (double lam : cd.inner.lambda) {
          PositivePair pl(lam, 1.0);
          acc += std::log1p(heinz_sum_gap(pl, x) / heinz_sum(pl, x));
        }
        return std::exp(acc / (x * (1.0 - x)));
      };
      double v_nu = value_at(nu);
      double v_tau = value_at(tau);
      double lhs = outside ? v_nu : v_tau;
      double rhs = outside ? v_tau : v_nu;
      return detail::finish_matrix(rel, lhs, rhs, pp.region, std::move(pv),
                                   "", tol);
    }
    case MatrixRelationId::LOEWNER_CORE:
    case MatrixRelationId::LOEWNER_SQUARED_PARAM: {
      detail::CongruenceData cd = detail::congruence_split(T, who);
      size_t n = cd.inner.lambda.size();
      std::vector<double> vals(n);
      for (size_t i = 0; i < n; ++i) {
        double lam = cd.inner.lambda[i];
        double at_nu, at_tau;
        if (rel == MatrixRelationId::LOEWNER_CORE) {
          PositivePair pl(lam, 1.0);
          at_nu = detail::core_quotient(pl, nu);
          at_tau = detail::core_quotient(pl, tau);
        } else {
          PositivePair pl2(lam * lam, 1.0);
          at_nu = heinz_sum_gap(pl2, nu) / (nu * (1.0 - nu));
          at_tau = heinz_sum_gap(pl2, tau) / (tau * (1.0 - tau));
        }
        vals[i] = outside ? at_nu - at_tau : at_tau - at_nu;
      }
      la::ComplexMatrix inner_diff = la::assemble_from_eigen(cd.inner, vals);
      la::HermitianMatrix diff(cd.a_half * inner_diff * cd.a_half);
      la::EigenDecomposition ed = la::eigh(diff);
      double lam_min = ed.lambda.back();
      RelationOutcome out;
      out.relation = who;
      out.lhs = lam_min;
      out.rhs = 0.0;
      out.margin = lam_min / (ed.source_norm + 1.0);
      out.holds = la::is_psd(diff, tol);
      out.region = pp.region;
      out.params = std::move(pv);
      return out;
    }
    default:
      throw usage_error("unreachable two-parameter relation");
  }
}

// Independent route to the squared Hilbert-Schmidt norm of the sandwich:
// rotate X into the eigenbases of A and B, then weight each entry by the
// scalar mean of the corresponding eigenvalue pair.
inline double hs_schur_oracle(const MeanTriple& T, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw domain_error("hs_schur_oracle: t must lie in [0, 1]");
  la::EigenDecomposition ea = la::eigh(T.A);
  la::EigenDecomposition eb = la::eigh(T.B);
  la::ComplexMatrix y = ea.U.adjoint() * T.X * eb.U;
  double total = 0.0;
  for (int i = 0; i < y.n_rows(); ++i) {
    double lam = std::max(ea.lambda[static_cast<size_t>(i)], 0.0);
    for (int j = 0; j < y.n_cols(); ++j) {
      double mu = std::max(eb.lambda[static_cast<size_t>(j)], 0.0);
      double w = std::pow(lam, t) * std::pow(mu, 1.0 - t) +
                 std::pow(lam, 1.0 - t) * std::pow(mu, t);
      total += w * w * std::norm(y(i, j));
    }
  }
  return total;
}

// Adding the squared gap of the factor norms to twice the geometric-mean
// sandwich norm overshoots the arithmetic side on this fixed triple, so the
// strengthened two-sided form fails for the spectral norm.
struct CounterexampleResult {
  la::ComplexMatrix A;
  la::ComplexMatrix X;
  la::ComplexMatrix B;
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
};

inline CounterexampleResult counterexample() {
  la::ComplexMatrix a(2, 2), b(2, 2), x(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1.5;
  b(0, 0) = 1.0;
  b(1, 1) = 0.5;
  x(0, 0) = 1.0;
  x(1, 1) = 1.0;
  MeanTriple T(la::HermitianMatrix(a), la::HermitianMatrix(b), x);
  la::NormKind sp = la::NormKind::spectral();
  double gx = la::ui_norm(a * x, sp);
  double gy = la::ui_norm(x * b, sp);
  la::ComplexMatrix mid = la::matrix_power(T.A, 0.5).matrix() * x *
                          la::matrix_power(T.B, 0.5).matrix();
  double lhs = 2.0 * la::ui_norm(mid, sp) +
               (std::sqrt(gx) - std::sqrt(gy)) * (std::sqrt(gx) - std::sqrt(gy));
  double rhs = la::ui_norm(a * x + x * b, sp);
  CounterexampleResult r;
  r.A = a;
  r.X = x;
  r.B = b;
  r.lhs = lhs;
  r.rhs = rhs;
  r.violated = lhs > rhs;
  return r;
}

// ---------------------------------------------------------------------------
// Randomized verification suites
// ---------------------------------------------------------------------------

struct SuiteConfig {
  enum class Kind { Scalar, Matrix };
  Kind kind = Kind::Scalar;
  std::uint64_t seed = 0xC0FFEE;
  int trials = 500;
  int dim_lo = 2;
  int dim_hi = 6;
  double tol_rel = -1.0;  // negative selects the per-suite default
  double cond_cap = 1e4;
  std::vector<std::string> relations;  // empty selects the full catalog
};

namespace detail {

// Draws from [delta, 1/2 - delta] or [1/2 + delta, 1 - delta] with equal mass,
// keeping samples clear of the poles and of the midpoint.
inline double sample_split_unit(Rng& rng, double delta) {
  double u = rng.uniform();
  double h = 0.5 - 2.0 * delta;
  if (u < 0.5) return delta + (u * 2.0) * h;
  return 0.5 + delta + (u - 0.5) * 2.0 * h;
}

inline ParamPair sample_region_pair(Rng& rng, Region target, double delta) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    double nu = sample_split_unit(rng, delta);
    double tau = sample_split_unit(rng, delta);
    ParamPair pp(nu, tau, delta);
    if (pp.region == target) return pp;
  }
  throw numerical_error("sample_region_pair: rejection sampling exhausted");
}

inline void record_outcome(VerificationReport& rep, int trial,
                           const RelationOutcome& oc) {
  rep.total_checks += 1;
  if (oc.holds) return;
  FailureRecord f;
  f.trial = trial;
  f.relation = oc.relation;
  f.region = to_string(oc.region);
  f.norm = oc.norm;
  f.params = oc.params;
  f.lhs = oc.lhs;
  f.rhs = oc.rhs;
  f.margin = oc.margin;
  rep.failures.push_back(std::move(f));
}

inline void record_error(VerificationReport& rep, int trial,
                         const std::string& relation, const std::string& what) {
  rep.total_checks += 1;
  FailureRecord f;
  f.trial = trial;
  f.relation = relation;
  f.error = what;
  rep.failures.push_back(std::move(f));
}

template <typename Id>
std::vector<Id> select_relations(const std::vector<Id>& all,
                                 const std::vector<std::string>& wanted) {
  if (wanted.empty()) return all;
  std::vector<Id> out;
  for (const std::string& name : wanted) {
    bool found = false;
    for (Id id : all) {
      if (name == relation_name(id)) {
        out.push_back(id);
        found = true;
        break;
      }
    }
    if (!found) throw usage_error("unknown relation name: " + name);
  }
  return out;
}

}  // namespace detail

inline VerificationReport run_suite(const SuiteConfig& cfg) {
  if (cfg.trials < 1) throw usage_error("run_suite: trials must be >= 1");
  if (cfg.dim_lo < 1 || cfg.dim_hi > 16 || cfg.dim_lo > cfg.dim_hi)
    throw usage_error("run_suite: dims must satisfy 1 <= lo <= hi <= 16");
  const double delta = kBoundaryDelta;

  VerificationReport rep;
  rep.seed = cfg.seed;
  rep.trials = cfg.trials;
  rep.dim_lo = cfg.dim_lo;
  rep.dim_hi = cfg.dim_hi;

  if (cfg.kind == SuiteConfig::Kind::Scalar) {
    rep.suite = "scalar";
    ScalarEvalOptions opts;
    if (cfg.tol_rel > 0.0) opts.tol_rel = cfg.tol_rel;
    rep.tolerances = {{"rel", opts.tol_rel}, {"boundary_delta", delta}};
    std::vector<ScalarRelationId> rels =
        detail::select_relations(scalar_relation_ids(), cfg.relations);
    for (ScalarRelationId rel : rels) rep.relations.push_back(relation_name(rel));

    for (ScalarRelationId rel : rels) {
      const auto rel_idx = static_cast<std::uint64_t>(rel);
      for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_stream(cfg.seed, 0x5300 + rel_idx,
                              static_cast<std::uint64_t>(trial)));
        PositivePair pair(rng.log_uniform(1e-4, 1e4),
                          rng.log_uniform(1e-4, 1e4));
        try {
          if (relation_takes_pair(rel)) {
            for (Region target : {Region::Outside, Region::Inside}) {
              ParamPair pp = detail::sample_region_pair(rng, target, delta);
              detail::record_outcome(
                  rep, trial, evaluate_scalar_relation(rel, pair, pp, opts));
            }
          } else {
            double t = rng.uniform(delta, 1.0 - delta);
            detail::record_outcome(
                rep, trial, evaluate_scalar_relation(rel, pair, t, opts));
          }
        } catch (const error& e) {
          detail::record_error(rep, trial, relation_name(rel), e.what());
        }
      }
    }
  } else {
    rep.suite = "matrix";
    MatrixEvalOptions opts;
    if (cfg.tol_rel > 0.0) opts.tol_rel = cfg.tol_rel;
    rep.tolerances = {{"rel", opts.tol_rel},
                      {"boundary_delta", delta},
                      {"cond_cap", cfg.cond_cap}};
    std::vector<MatrixRelationId> rels =
        detail::select_relations(matrix_relation_ids(), cfg.relations);
    for (MatrixRelationId rel : rels) rep.relations.push_back(relation_name(rel));

    for (MatrixRelationId rel : rels) {
      const auto rel_idx = static_cast<std::uint64_t>(rel);
      const RegionRule rule = relation_region_rule(rel);
      for (int trial = 0; trial < cfg.trials; ++trial) {
        Rng rng(derive_stream(cfg.seed, 0x4D00 + rel_idx,
                              static_cast<std::uint64_t>(trial)));
        int n = rng.uniform_int(cfg.dim_lo, cfg.dim_hi);
        try {
          la::HermitianMatrix a = la::random_pd(n, rng, cfg.cond_cap);
          la::HermitianMatrix b = la::random_pd(n, rng, cfg.cond_cap);
          la::ComplexMatrix x = la::random_gaussian(n, n, rng);
          MeanTriple T(a, b, x);

          std::vector<la::NormKind> norms;
          if (relation_takes_norm(rel)) {
            norms = {la::NormKind::spectral(), la::NormKind::trace_norm(),
                     la::NormKind::hilbert_schmidt(), la::NormKind::schatten(3.0),
                     la::NormKind::ky_fan(std::min(2, n))};
          }

          if (rule == RegionRule::SingleParam) {
            double t = rel == MatrixRelationId::AM_GM_NORM
                           ? 0.5
                           : rng.uniform(delta, 1.0 - delta);
            if (norms.empty()) {
              detail::record_outcome(
                  rep, trial,
                  evaluate_matrix_relation(rel, T, t, std::nullopt, opts));
            } else {
              for (const la::NormKind& nk : norms)
                detail::record_outcome(
                    rep, trial, evaluate_matrix_relation(rel, T, t, nk, opts));
            }
          } else {
            std::vector<Region> targets;
            if (rule == RegionRule::Both)
              targets = {Region::Outside, Region::Inside};
            else if (rule == RegionRule::OutsideOnly)
              targets = {Region::Outside};
            else
              targets = {Region::Inside};
            for (Region target : targets) {
              ParamPair pp = detail::sample_region_pair(rng, target, delta);
              if (norms.empty()) {
                detail::record_outcome(
                    rep, trial,
                    evaluate_matrix_relation(rel, T, pp, std::nullopt, opts));
              } else {
                for (const la::NormKind& nk : norms)
                  detail::record_outcome(
                      rep, trial,
                      evaluate_matrix_relation(rel, T, pp, nk, opts));
              }
            }
          }
        } catch (const error& e) {
          detail::record_error(rep, trial, relation_name(rel), e.what());
        }
      }
    }
  }

  std::stable_sort(rep.failures.begin(), rep.failures.end(),
                   [](const FailureRecord& a, const FailureRecord& b) {
                     return a.trial < b.trial;
                   });
  return rep;
}

}  // namespace heinz
