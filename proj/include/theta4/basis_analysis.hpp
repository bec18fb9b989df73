#pragma once

// Numerical realization of the projective-basis criteria: the evaluation
// matrix of the sections z -> theta[k](2z) at the 2-torsion points, its
// normalization to the Weil-pairing table, the rank of the span of the fourth
// powers theta[k](z)^4, and detection of vanishing theta-nulls.

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "theta4/char2.hpp"
#include "theta4/theta_eval.hpp"

namespace theta4 {

inline constexpr double kDefaultNullThreshold = 1e-8;
/// Relative null magnitudes in [null_threshold, kNearVanishingBand) make the
/// verdicts ill-conditioned and are reported as a warning.
inline constexpr double kNearVanishingBand = 1e-4;

struct NumericalRankPolicy {
  double rel_sv_threshold = 1e-7;

  void validate() const;
};

Eigen::VectorXd singular_values(const ComplexMatrix& m);
/// Number of singular values above rel_sv_threshold times the largest.
int numerical_rank(const Eigen::VectorXd& singular_values, const NumericalRankPolicy& policy);
int numerical_rank(const ComplexMatrix& m, const NumericalRankPolicy& policy);

struct EvaluationMatrix {
  ComplexMatrix values;                // (kappa, a) -> theta[kappa](2 z_a)
  std::vector<Characteristic> rows;    // even kappa, canonical order
  std::vector<Characteristic> columns; // even_points(kappa0)
};

EvaluationMatrix evaluation_matrix(const PeriodMatrix& tau, const Characteristic& kappa0,
                                   const TruncationPolicy& policy = {});

/// The cross-ratio [t_k(0) t_k'(a)] / [t_k(a) t_k'(0)] from its four inputs.
/// Throws VanishingNullError if a denominator factor falls below
/// null_threshold times the largest of the four moduli.
Complex mu_from_values(Complex kappa_at_0, Complex kappa_prime_at_a, Complex kappa_at_a,
                       Complex kappa_prime_at_0, double null_threshold = kDefaultNullThreshold);

/// mu(a, kappa, kappa') computed from theta values at 0 and 2 z_a.
Complex mu(const Characteristic& a, const Characteristic& kappa,
           const Characteristic& kappa_prime, const PeriodMatrix& tau,
           const TruncationPolicy& policy = {}, double null_threshold = kDefaultNullThreshold);

struct NormalizedEvaluation {
  ComplexMatrix normalized;                  // rows b, columns a
  Eigen::MatrixXi reference;                 // <a, b>
  std::vector<Characteristic> offsets;       // b, canonical order of even_points(kappa0)
  std::vector<Characteristic> row_kappas;    // translate(b, kappa0)
  std::vector<Characteristic> columns;       // a
  double m_deviation = 0.0;                  // max |normalized - reference|
};

/// Divides column a by theta[kappa0](2 z_a) and then each row by its entry at
/// a = 0. Rows are reindexed by kappa = translate(b, kappa0). For kappa0 = 0
/// the reference table is exactly M. Throws VanishingNullError when a
/// theta-null vanishes, because the projective-basis property fails then.
NormalizedEvaluation normalized_evaluation_matrix(const PeriodMatrix& tau,
                                                  const Characteristic& kappa0,
                                                  const TruncationPolicy& policy = {},
                                                  double null_threshold = kDefaultNullThreshold);

struct FourthPowerSpan {
  int rank = 0;
  Eigen::VectorXd singular_values;
  std::size_t samples = 0;
};

/// Numerical rank of V[i, k] = theta[k](z_i)^4 over n_samples seeded points
/// z_i in a fundamental cell. Rows and columns are scaled to unit max-modulus
/// first; neither scaling changes the rank.
FourthPowerSpan fourth_power_span(const PeriodMatrix& tau, const TruncationPolicy& policy,
                                  const NumericalRankPolicy& rank_policy,
                                  std::size_t n_samples, std::uint64_t seed);
int fourth_power_rank(const PeriodMatrix& tau, const TruncationPolicy& policy,
                      const NumericalRankPolicy& rank_policy, std::size_t n_samples,
                      std::uint64_t seed);

/// Even k with |theta[k](0)| < null_threshold * max_k |theta[k](0)|.
std::vector<Characteristic> vanishing_nulls(const PeriodMatrix& tau,
                                            const TruncationPolicy& policy = {},
                                            double null_threshold = kDefaultNullThreshold);

enum class ReportStatus {
  consistent,    // verdicts agree with the vanishing-null count
  inconsistent,  // they do not
  warn,          // near-vanishing null or threshold-sensitive rank
};

const char* to_string(ReportStatus s);

struct BasisReport {
  BasisReport(PeriodMatrix t, Characteristic k) : tau(std::move(t)), kappa0(k) {}

  PeriodMatrix tau;
  Characteristic kappa0;
  int dim = 0;  // d+

  std::vector<NullValue> nulls;
  std::vector<double> null_relative_moduli;
  std::vector<Characteristic> vanishing_nulls;
  std::vector<Characteristic> near_vanishing_nulls;
  double null_threshold = kDefaultNullThreshold;

  int ev_matrix_rank = 0;
  Eigen::VectorXd ev_singular_values;
  int fourth_power_rank = 0;
  Eigen::VectorXd fourth_power_singular_values;
  std::optional<double> m_deviation;

  bool theorem11_verdict = false;
  bool theorem12_verdict = false;
  bool corank_law = false;    // d+ - rank == |vanishing_nulls| for both ranks
  bool rank_stable = false;   // ranks unchanged at threshold x10 and /10

  TruncationPolicy policy;
  NumericalRankPolicy rank_policy;
  std::uint64_t seed = 0;
  std::size_t n_samples = 0;
  ReportStatus status = ReportStatus::consistent;
};

/// Runs every stage and checks the biconditional: both verdicts hold iff no
/// theta-null vanishes. n_samples = 0 selects 2 d+.
BasisReport basis_report(const PeriodMatrix& tau, const Characteristic& kappa0,
                         const TruncationPolicy& policy = {},
                         const NumericalRankPolicy& rank_policy = {},
                         double null_threshold = kDefaultNullThreshold, std::uint64_t seed = 1,
                         std::size_t n_samples = 0);

}  // namespace theta4
