#ifndef MOMCERT_SOLVER_HPP
#define MOMCERT_SOLVER_HPP

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "momcert/families.hpp"
#include "momcert/sequences.hpp"

namespace momcert {

// Order-2 truncation targets over the minimal index set. Real kind: mass
// t_0, first moments t_i, pure second moments s_i = t_{2 e_i} (mixed second
// moments are deliberately absent: N1 union 2N1 excludes e_i + e_j). Complex
// kind: mass t, means m_i = c_{e_i,0}, Hermitian correlation H = [c_{e_i,e_j}].
struct TruncationTargets {
  std::size_t dim;
  Kind kind;
  // real kind
  double mass = 0.0;
  std::vector<double> first;
  std::vector<double> second_diag;
  // complex kind
  Eigen::VectorXcd means;
  Eigen::MatrixXcd correlation;

  static TruncationTargets real(double mass, std::vector<double> first,
                                std::vector<double> second_diag);
  static TruncationTargets complex(double mass, Eigen::VectorXcd means,
                                   Eigen::MatrixXcd correlation);

  // Targets read off a localized sequence at N1 union 2N1 / N1 x N1.
  static TruncationTargets from_sequence(const TruncatedSequence& seq);
};

struct FeasibilityWitness {
  enum class Violation {
    none,
    negative_mass,
    zero_mass_nonzero_targets,
    cauchy_schwarz,       // t_0 s_i < t_i^2 (real kind)
    correlation_not_psd,  // H - m m*/t has a negative eigenvalue
  };
  Violation violation = Violation::none;
  std::size_t coordinate = 0;    // 1-based, cauchy_schwarz / zero-mass cases
  double lhs = 0.0;              // t_0 s_i or the offending eigenvalue
  double rhs = 0.0;              // t_i^2 or 0
  Eigen::VectorXcd eigenvector;  // correlation_not_psd
};

const char* violation_name(FeasibilityWitness::Violation v);

nlohmann::json witness_json(const FeasibilityWitness& w);

struct FeasibilityVerdict {
  bool feasible;
  FeasibilityWitness witness;
};

// Order-2 solvability: nonnegative mass, zero mass forces zero targets, and
// per coordinate t_0 s_i >= t_i^2 (real) or H - m m*/t PSD (complex), all at
// tol. Infeasibility is a verdict here, not an error.
FeasibilityVerdict feasibility(const TruncationTargets& targets, double tol = kDefaultTol);

// Deterministic representing measure for feasible targets: the 2d-atom axis
// construction (real) or the eigen-direction construction (complex).
// Reproduction of every target within tol * scale is verified before return.
AtomicMeasure solve_initial_truncation(const TruncationTargets& targets,
                                       double tol = kDefaultTol);

struct SolveRecord {
  CoefficientVector xi;
  bool feasible;
  FeasibilityWitness witness;  // set when infeasible
  std::size_t atom_count = 0;
  double max_target_residual = 0.0;
};

struct SolveFamilyResult {
  MeasureFamily family;
  std::vector<SolveRecord> records;
  ParallelogramReport constraint_report;  // pairs derivable from xi_set
};

// An infeasible localized truncation certifies that the sequence is not a
// moment one; the error lists every infeasible xi.
struct FamilyInfeasibleError : Error {
  std::vector<std::pair<CoefficientVector, FeasibilityWitness>> infeasible;
  FamilyInfeasibleError(const std::string& msg,
                        std::vector<std::pair<CoefficientVector, FeasibilityWitness>> inf)
      : Error(msg), infeasible(std::move(inf)) {}
};

// Solves the very initial truncation of localize(seq, xi) for each xi
// independently, then reports (19.2) over the pairs whose combinations
// landed in the solved family. A search primitive: per-xi solutions need not
// satisfy the coupling constraints, and the report says which pairs do.
SolveFamilyResult solve_family(const TruncatedSequence& seq,
                               const std::vector<CoefficientVector>& xi_set,
                               double tol = kDefaultTol);

}  // namespace momcert

#endif
