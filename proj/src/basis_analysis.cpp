#include "theta4/basis_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "theta4/errors.hpp"
#include "theta4/parallel.hpp"

namespace theta4 {

namespace {

void check_threshold(double t, const char* name) {
  if (!(t > 0.0 && t < 1.0)) throw InputError(std::string(name) + " must lie in (0, 1)");
}

void check_even(const Characteristic& c, const char* role) {
  if (!is_even(c)) {
    throw InputError(std::string(role) + " must be an even characteristic, got " + c.to_string());
  }
}

void scale_columns_to_unit_max(ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    const double s = m.col(j).cwiseAbs().maxCoeff();
    if (s > 0.0) m.col(j) /= s;
  }
}

void scale_rows_to_unit_max(ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const double s = m.row(i).cwiseAbs().maxCoeff();
    if (s > 0.0) m.row(i) /= s;
  }
}

std::vector<double> relative_moduli(const std::vector<NullValue>& nulls) {
  double largest = 0.0;
  for (const auto& n : nulls) largest = std::max(largest, std::abs(n.value));
  std::vector<double> out;
  out.reserve(nulls.size());
  for (const auto& n : nulls) out.push_back(largest > 0.0 ? std::abs(n.value) / largest : 0.0);
  return out;
}

}  // namespace

void NumericalRankPolicy::validate() const { check_threshold(rel_sv_threshold, "rel_sv_threshold"); }

Eigen::VectorXd singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

int numerical_rank(const Eigen::VectorXd& sv, const NumericalRankPolicy& policy) {
  policy.validate();
  if (sv.size() == 0) return 0;
  const double cutoff = policy.rel_sv_threshold * sv.maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > cutoff) ++rank;
  }
  return rank;
}

int numerical_rank(const ComplexMatrix& m, const NumericalRankPolicy& policy) {
  return numerical_rank(singular_values(m), policy);
}

EvaluationMatrix evaluation_matrix(const PeriodMatrix& tau, const Characteristic& kappa0,
                                   const TruncationPolicy& policy) {
  if (kappa0.genus() != tau.genus()) throw InputError("kappa0 genus does not match period matrix");
  check_even(kappa0, "kappa0");
  EvaluationMatrix ev;
  ev.rows = even_characteristics(tau.genus());
  ev.columns = even_points(kappa0);
  const std::size_t n = ev.rows.size();
  ev.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(ev.columns.size()));

  std::vector<Point> points;
  points.reserve(ev.columns.size());
  for (const auto& a : ev.columns) points.push_back(2.0 * two_torsion_point(a, tau));

  parallel_for(n * ev.columns.size(), [&](std::size_t k) {
    const std::size_t i = k / ev.columns.size();
    const std::size_t j = k % ev.columns.size();
    ev.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
        theta_with_char(ev.rows[i], points[j], tau, policy).value;
  });
  return ev;
}

Complex mu_from_values(Complex kappa_at_0, Complex kappa_prime_at_a, Complex kappa_at_a,
                       Complex kappa_prime_at_0, double null_threshold) {
  check_threshold(null_threshold, "null_threshold");
  const double scale = std::max({std::abs(kappa_at_0), std::abs(kappa_prime_at_a),
                                 std::abs(kappa_at_a), std::abs(kappa_prime_at_0)});
  if (std::abs(kappa_prime_at_0) <= null_threshold * scale) {
    throw VanishingNullError("mu: theta-null of kappa' is numerically zero");
  }
  if (std::abs(kappa_at_a) <= null_threshold * scale) {
    throw VanishingNullError("mu: theta[kappa](2 z_a) is numerically zero");
  }
  return (kappa_at_0 * kappa_prime_at_a) / (kappa_at_a * kappa_prime_at_0);
}

Complex mu(const Characteristic& a, const Characteristic& kappa,
           const Characteristic& kappa_prime, const PeriodMatrix& tau,
           const TruncationPolicy& policy, double null_threshold) {
  check_even(kappa, "kappa");
  check_even(kappa_prime, "kappa'");
  if (a.genus() != tau.genus() || kappa.genus() != tau.genus() ||
      kappa_prime.genus() != tau.genus()) {
    throw InputError("mu: genus mismatch");
  }
  const Point zero = Point::Zero(tau.genus());
  const Point at_a = 2.0 * two_torsion_point(a, tau);
  return mu_from_values(theta_with_char(kappa, zero, tau, policy).value,
                        theta_with_char(kappa_prime, at_a, tau, policy).value,
                        theta_with_char(kappa, at_a, tau, policy).value,
                        theta_with_char(kappa_prime, zero, tau, policy).value, null_threshold);
}

NormalizedEvaluation normalized_evaluation_matrix(const PeriodMatrix& tau,
                                                  const Characteristic& kappa0,
                                                  const TruncationPolicy& policy,
                                                  double null_threshold) {
  check_threshold(null_threshold, "null_threshold");
  const auto vanishing = vanishing_nulls(tau, policy, null_threshold);
  if (!vanishing.empty()) {
    throw VanishingNullError(
        "theta-null " + vanishing.front().to_string() +
        " vanishes: the values at the even 2-torsion points do not form a projective basis and "
        "cannot be normalized");
  }
  const EvaluationMatrix ev = evaluation_matrix(tau, kappa0, policy);

  NormalizedEvaluation out;
  out.columns = ev.columns;
  out.offsets = even_points(kappa0);
  const auto n = static_cast<Eigen::Index>(out.offsets.size());
  out.normalized.resize(n, n);
  out.reference.resize(n, n);

  std::vector<Eigen::Index> row_of(std::size_t{1} << (2 * tau.genus()));
  for (std::size_t i = 0; i < ev.rows.size(); ++i) row_of[ev.rows[i].index()] = static_cast<Eigen::Index>(i);
  const Eigen::Index kappa0_row = row_of[kappa0.index()];

  // Column 0 of even_points(kappa0) is always a = 0.
  ComplexMatrix scaled = ev.values;
  for (Eigen::Index j = 0; j < scaled.cols(); ++j) {
    scaled.col(j) /= ev.values(kappa0_row, j);
  }

  out.m_deviation = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Characteristic kappa = translate(out.offsets[i], kappa0);
    out.row_kappas.push_back(kappa);
    const Eigen::Index src = row_of[kappa.index()];
    const Complex at_origin = scaled(src, 0);
    for (Eigen::Index j = 0; j < n; ++j) {
      out.normalized(i, j) = scaled(src, j) / at_origin;
      out.reference(i, j) = weil_pairing(out.columns[j], out.offsets[i]).value();
      out.m_deviation = std::max(
          out.m_deviation, std::abs(out.normalized(i, j) - static_cast<double>(out.reference(i, j))));
    }
  }
  return out;
}

FourthPowerSpan fourth_power_span(const PeriodMatrix& tau, const TruncationPolicy& policy,
                                  const NumericalRankPolicy& rank_policy,
                                  std::size_t n_samples, std::uint64_t seed) {
  rank_policy.validate();
  const auto evens = even_characteristics(tau.genus());
  if (n_samples < 2 * evens.size()) {
    throw InputError("fourth_power_rank needs at least 2 d+ = " +
                     std::to_string(2 * evens.size()) + " samples");
  }
  const auto points = sample_points(tau, n_samples, seed);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) throw InputError("degenerate sampling: coincident sample points");
    }
  }

  ComplexMatrix v(static_cast<Eigen::Index>(n_samples), static_cast<Eigen::Index>(evens.size()));
  parallel_for(n_samples * evens.size(), [&](std::size_t k) {
    const std::size_t i = k / evens.size();
    const std::size_t j = k % evens.size();
    const Complex t = theta_with_char(evens[j], points[i], tau, policy).value;
    const Complex sq = t * t;
    v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = sq * sq;
  });
  scale_rows_to_unit_max(v);
  scale_columns_to_unit_max(v);

  FourthPowerSpan out;
  out.samples = n_samples;
  out.singular_values = singular_values(v);
  out.rank = numerical_rank(out.singular_values, rank_policy);
  return out;
}

int fourth_power_rank(const PeriodMatrix& tau, const TruncationPolicy& policy,
                      const NumericalRankPolicy& rank_policy, std::size_t n_samples,
                      std::uint64_t seed) {
  return fourth_power_span(tau, policy, rank_policy, n_samples, seed).rank;
}

std::vector<Characteristic> vanishing_nulls(const PeriodMatrix& tau,
                                            const TruncationPolicy& policy,
                                            double null_threshold) {
  check_threshold(null_threshold, "null_threshold");
  const auto nulls = theta_nulls(tau, policy);
  const auto rel = relative_moduli(nulls);
  std::vector<Characteristic> out;
  for (std::size_t i = 0; i < nulls.size(); ++i) {
    if (rel[i] < null_threshold) out.push_back(nulls[i].characteristic);
  }
  return out;
}

const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::consistent:
      return "consistent";
    case ReportStatus::inconsistent:
      return "inconsistent";
    case ReportStatus::warn:
      return "warn";
  }
  return "unknown";
}

BasisReport basis_report(const PeriodMatrix& tau, const Characteristic& kappa0,
                         const TruncationPolicy& policy, const NumericalRankPolicy& rank_policy,
                         double null_threshold, std::uint64_t seed, std::size_t n_samples) {
  check_threshold(null_threshold, "null_threshold");
  rank_policy.validate();
  policy.validate();
  if (kappa0.genus() != tau.genus()) throw InputError("kappa0 genus does not match period matrix");
  check_even(kappa0, "kappa0");

  BasisReport r(tau, kappa0);
  r.dim = static_cast<int>(even_count(tau.genus()));
  r.null_threshold = null_threshold;
  r.policy = policy;
  r.rank_policy = rank_policy;
  r.seed = seed;
  r.n_samples = n_samples == 0 ? 2 * static_cast<std::size_t>(r.dim) : n_samples;

  r.nulls = theta_nulls(tau, policy);
  r.null_relative_moduli = relative_moduli(r.nulls);
  for (std::size_t i = 0; i < r.nulls.size(); ++i) {
    const double rel = r.null_relative_moduli[i];
    if (rel < null_threshold) {
      r.vanishing_nulls.push_back(r.nulls[i].characteristic);
    } else if (rel < kNearVanishingBand) {
      r.near_vanishing_nulls.push_back(r.nulls[i].characteristic);
    }
  }

  ComplexMatrix ev = evaluation_matrix(tau, kappa0, policy).values;
  scale_columns_to_unit_max(ev);
  r.ev_singular_values = singular_values(ev);
  r.ev_matrix_rank = numerical_rank(r.ev_singular_values, rank_policy);

  const FourthPowerSpan span = fourth_power_span(tau, policy, rank_policy, r.n_samples, seed);
  r.fourth_power_rank = span.rank;
  r.fourth_power_singular_values = span.singular_values;

  if (r.vanishing_nulls.empty()) {
    r.m_deviation = normalized_evaluation_matrix(tau, kappa0, policy, null_threshold).m_deviation;
  }

  r.theorem11_verdict = r.ev_matrix_rank == r.dim;
  r.theorem12_verdict = r.fourth_power_rank == r.dim;
  const int vanishing = static_cast<int>(r.vanishing_nulls.size());
  r.corank_law = r.dim - r.ev_matrix_rank == vanishing && r.dim - r.fourth_power_rank == vanishing;

  r.rank_stable = true;
  for (double factor : {0.1, 10.0}) {
    const NumericalRankPolicy moved{rank_policy.rel_sv_threshold * factor};
    if (!(moved.rel_sv_threshold > 0.0 && moved.rel_sv_threshold < 1.0)) continue;
    if (numerical_rank(r.ev_singular_values, moved) != r.ev_matrix_rank ||
        numerical_rank(r.fourth_power_singular_values, moved) != r.fourth_power_rank) {
      r.rank_stable = false;
    }
  }

  const bool biconditional = r.theorem11_verdict == (vanishing == 0) &&
                             r.theorem12_verdict == (vanishing == 0);
  if (!r.near_vanishing_nulls.empty() || !r.rank_stable) {
    r.status = ReportStatus::warn;
  } else if (!biconditional || !r.corank_law) {
    r.status = ReportStatus::inconsistent;
  } else {
    r.status = ReportStatus::consistent;
  }
  return r;
}

}  // namespace theta4
