#include "momcert/solver.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

#include "momcert/json_io.hpp"

namespace momcert {

namespace {

void check_finite_real(double v, const char* what) {
  if (!std::isfinite(v)) throw ValidationError(std::string(what) + " must be finite");
}

}  // namespace

TruncationTargets TruncationTargets::real(double mass, std::vector<double> first,
                                          std::vector<double> second_diag) {
  if (first.empty() || first.size() != second_diag.size())
    throw DimensionError("real targets need matching nonempty first/second_diag");
  check_finite_real(mass, "target mass");
  for (double v : first) check_finite_real(v, "first moment target");
  for (double v : second_diag) check_finite_real(v, "second moment target");
  TruncationTargets t;
  t.dim = first.size();
  t.kind = Kind::real;
  t.mass = mass;
  t.first = std::move(first);
  t.second_diag = std::move(second_diag);
  return t;
}

TruncationTargets TruncationTargets::complex(double mass, Eigen::VectorXcd means,
                                             Eigen::MatrixXcd correlation) {
  const Eigen::Index d = means.size();
  if (d == 0 || correlation.rows() != d || correlation.cols() != d)
    throw DimensionError("complex targets need means of length d and a d x d correlation");
  check_finite_real(mass, "target mass");
  const double herm_defect = (correlation - correlation.adjoint()).cwiseAbs().maxCoeff();
  if (herm_defect > kDefaultTol * std::max(1.0, correlation.cwiseAbs().maxCoeff()))
    throw ValidationError("correlation matrix is not Hermitian (defect " +
                          std::to_string(herm_defect) + ")");
  TruncationTargets t;
  t.dim = static_cast<std::size_t>(d);
  t.kind = Kind::complex;
  t.mass = mass;
  t.means = std::move(means);
  t.correlation = std::move(correlation);
  return t;
}

TruncationTargets TruncationTargets::from_sequence(const TruncatedSequence& seq) {
  const std::size_t d = seq.dim();
  if (seq.kind() == Kind::real) {
    if (seq.max_degree() < 2)
      throw DegreeBudgetError("order-2 targets need a sequence of max_degree >= 2");
    std::vector<double> first(d), second(d);
    for (std::size_t i = 1; i <= d; ++i) {
      const MultiIndex e_i = MultiIndex::unit(i, d);
      first[i - 1] = seq.at(e_i);
      second[i - 1] = seq.at(e_i.scaled(2));
    }
    return real(seq.at(MultiIndex::zero(d)), std::move(first), std::move(second));
  }
  if (seq.max_degree() < 1)
    throw DegreeBudgetError("complex targets need a sequence of max_degree >= 1");
  const MultiIndex zero = MultiIndex::zero(d);
  const Scalar t = seq.at(zero, zero);
  if (std::abs(t.imag()) > kRealResidueTol * std::max(1.0, std::abs(t.real())))
    throw KindError("complex target mass c_{0,0} has imaginary residue");
  Eigen::VectorXcd means(static_cast<Eigen::Index>(d));
  Eigen::MatrixXcd corr(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 1; i <= d; ++i) {
    const MultiIndex e_i = MultiIndex::unit(i, d);
    means[static_cast<Eigen::Index>(i - 1)] = seq.at(e_i, zero);
    for (std::size_t j = 1; j <= d; ++j)
      corr(static_cast<Eigen::Index>(i - 1), static_cast<Eigen::Index>(j - 1)) =
          seq.at(e_i, MultiIndex::unit(j, d));
  }
  return complex(t.real(), std::move(means), std::move(corr));
}

const char* violation_name(FeasibilityWitness::Violation v) {
  switch (v) {
    case FeasibilityWitness::Violation::none: return "none";
    case FeasibilityWitness::Violation::negative_mass: return "negative-mass";
    case FeasibilityWitness::Violation::zero_mass_nonzero_targets:
      return "zero-mass-nonzero-targets";
    case FeasibilityWitness::Violation::cauchy_schwarz: return "cauchy-schwarz";
    case FeasibilityWitness::Violation::correlation_not_psd: return "correlation-not-psd";
  }
  return "unknown";
}

FeasibilityVerdict feasibility(const TruncationTargets& targets, double tol) {
  FeasibilityWitness w;
  if (targets.mass < -tol) {
    w.violation = FeasibilityWitness::Violation::negative_mass;
    w.lhs = targets.mass;
    return {false, w};
  }
  const bool zero_mass = targets.mass <= tol;

  if (targets.kind == Kind::real) {
    for (std::size_t i = 0; i < targets.dim; ++i) {
      const double t_i = targets.first[i];
      const double s_i = targets.second_diag[i];
      if (zero_mass) {
        if (std::abs(t_i) > tol || std::abs(s_i) > tol) {
          w.violation = FeasibilityWitness::Violation::zero_mass_nonzero_targets;
          w.coordinate = i + 1;
          w.lhs = std::abs(t_i) > tol ? t_i : s_i;
          return {false, w};
        }
        continue;
      }
      const double lhs = targets.mass * s_i;
      const double rhs = t_i * t_i;
      const double scale = std::max({1.0, std::abs(lhs), rhs});
      if (lhs < rhs - tol * scale) {
        w.violation = FeasibilityWitness::Violation::cauchy_schwarz;
        w.coordinate = i + 1;
        w.lhs = lhs;
        w.rhs = rhs;
        return {false, w};
      }
    }
    return {true, w};
  }

  if (zero_mass) {
    for (Eigen::Index i = 0; i < targets.means.size(); ++i) {
      if (std::abs(targets.means[i]) > tol ||
          targets.correlation.row(i).cwiseAbs().maxCoeff() > tol) {
        w.violation = FeasibilityWitness::Violation::zero_mass_nonzero_targets;
        w.coordinate = static_cast<std::size_t>(i) + 1;
        w.lhs = std::abs(targets.means[i]);
        return {false, w};
      }
    }
    return {true, w};
  }
  const Eigen::MatrixXcd centered =
      targets.correlation -
      (targets.means * targets.means.adjoint()) / Scalar{targets.mass, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(centered);
  const Eigen::VectorXd eigs = solver.eigenvalues();
  const double lambda_max = std::max(std::abs(eigs(eigs.size() - 1)), std::abs(eigs(0)));
  if (eigs(0) < -tol * std::max(1.0, lambda_max)) {
    w.violation = FeasibilityWitness::Violation::correlation_not_psd;
    w.lhs = eigs(0);
    w.eigenvector = solver.eigenvectors().col(0);
    return {false, w};
  }
  return {true, w};
}

nlohmann::json witness_json(const FeasibilityWitness& w) {
  nlohmann::json j{{"violation", violation_name(w.violation)}};
  if (w.coordinate != 0) j["coordinate"] = w.coordinate;
  if (w.violation == FeasibilityWitness::Violation::cauchy_schwarz) {
    j["mass_times_second"] = w.lhs;
    j["first_squared"] = w.rhs;
  } else if (w.violation == FeasibilityWitness::Violation::correlation_not_psd) {
    j["eigenvalue"] = w.lhs;
    nlohmann::json vec = nlohmann::json::array();
    for (Eigen::Index i = 0; i < w.eigenvector.size(); ++i)
      vec.push_back(to_json(w.eigenvector[i]));
    j["eigenvector"] = vec;
  } else if (w.violation != FeasibilityWitness::Violation::none) {
    j["value"] = w.lhs;
  }
  return j;
}

namespace {

// Verify the returned measure against its targets; relative to max(1, |target|).
double real_target_residual(const AtomicMeasure& mu, const TruncationTargets& t) {
  double residual = std::abs(mu.total_mass() - t.mass) / std::max(1.0, std::abs(t.mass));
  for (std::size_t i = 1; i <= t.dim; ++i) {
    const MultiIndex e_i = MultiIndex::unit(i, t.dim);
    Scalar m1{0.0, 0.0}, m2{0.0, 0.0};
    for (const Atom& a : mu.atoms()) {
      m1 += a.weight * monomial_eval(a.point, e_i);
      m2 += a.weight * monomial_eval(a.point, e_i.scaled(2));
    }
    residual = std::max(residual, std::abs(m1.real() - t.first[i - 1]) /
                                      std::max(1.0, std::abs(t.first[i - 1])));
    residual = std::max(residual, std::abs(m2.real() - t.second_diag[i - 1]) /
                                      std::max(1.0, std::abs(t.second_diag[i - 1])));
  }
  return residual;
}

double complex_target_residual(const AtomicMeasure& mu, const TruncationTargets& t) {
  double residual = std::abs(mu.total_mass() - t.mass) / std::max(1.0, std::abs(t.mass));
  const std::size_t d = t.dim;
  for (std::size_t i = 1; i <= d; ++i) {
    const MultiIndex e_i = MultiIndex::unit(i, d);
    Scalar mean{0.0, 0.0};
    for (const Atom& a : mu.atoms())
      mean += a.weight * monomial_eval(a.point, e_i, MultiIndex::zero(d));
    residual = std::max(residual,
                        std::abs(mean - t.means[static_cast<Eigen::Index>(i - 1)]) /
                            std::max(1.0, std::abs(t.means[static_cast<Eigen::Index>(i - 1)])));
    for (std::size_t j = 1; j <= d; ++j) {
      Scalar corr{0.0, 0.0};
      for (const Atom& a : mu.atoms())
        corr += a.weight * monomial_eval(a.point, e_i, MultiIndex::unit(j, d));
      const Scalar target = t.correlation(static_cast<Eigen::Index>(i - 1),
                                          static_cast<Eigen::Index>(j - 1));
      residual = std::max(residual, std::abs(corr - target) / std::max(1.0, std::abs(target)));
    }
  }
  return residual;
}

}  // namespace

AtomicMeasure solve_initial_truncation(const TruncationTargets& targets, double tol) {
  const FeasibilityVerdict verdict = feasibility(targets, tol);
  if (!verdict.feasible) {
    const bool inconsistent = verdict.witness.violation ==
                              FeasibilityWitness::Violation::zero_mass_nonzero_targets;
    throw InfeasibilityError(
        std::string(inconsistent ? "inconsistent targets: " : "infeasible targets: ") +
            violation_name(verdict.witness.violation) +
            (verdict.witness.coordinate
                 ? " at coordinate " + std::to_string(verdict.witness.coordinate)
                 : ""),
        witness_json(verdict.witness).dump());
  }

  if (targets.mass <= tol) return AtomicMeasure::zero(targets.dim, targets.kind);
  const std::size_t d = targets.dim;

  if (targets.kind == Kind::real) {
    Point mean(d);
    std::vector<double> sigma(d);
    for (std::size_t i = 0; i < d; ++i) {
      const double mu_i = targets.first[i] / targets.mass;
      mean[i] = Scalar{mu_i, 0.0};
      double var = targets.second_diag[i] / targets.mass - mu_i * mu_i;
      if (var < tol * std::max(1.0, targets.second_diag[i] / targets.mass)) var = 0.0;
      sigma[i] = std::sqrt(var);
    }
    std::vector<Atom> atoms;
    atoms.reserve(2 * d);
    const double weight = targets.mass / (2.0 * static_cast<double>(d));
    const double spread = std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) {
      for (const double sign : {+1.0, -1.0}) {
        Point p = mean;
        p[i] += Scalar{sign * spread * sigma[i], 0.0};
        atoms.push_back({std::move(p), weight});
      }
    }
    AtomicMeasure mu(d, Kind::real, std::move(atoms));
    if (real_target_residual(mu, targets) > tol)
      throw Error("solver post-check failed: constructed measure misses its targets");
    return mu;
  }

  const Eigen::VectorXcd center = targets.means / Scalar{targets.mass, 0.0};
  const Eigen::MatrixXcd centered =
      targets.correlation -
      (targets.means * targets.means.adjoint()) / Scalar{targets.mass, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(centered);
  const Eigen::VectorXd eigs = solver.eigenvalues();
  const double lambda_max = std::max(0.0, eigs(eigs.size() - 1));
  const double cut = tol * std::max(1.0, lambda_max);

  std::vector<Eigen::Index> retained;
  for (Eigen::Index r = eigs.size() - 1; r >= 0; --r)
    if (eigs(r) > cut) retained.push_back(r);

  std::vector<Atom> atoms;
  if (retained.empty()) {
    Point p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = center[static_cast<Eigen::Index>(i)];
    atoms.push_back({std::move(p), targets.mass});
  } else {
    const double r_count = static_cast<double>(retained.size());
    const double weight = targets.mass / (2.0 * r_count);
    for (Eigen::Index r : retained) {
      const double stretch = std::sqrt(r_count * eigs(r) / targets.mass);
      for (const double sign : {+1.0, -1.0}) {
        Point p(d);
        for (std::size_t i = 0; i < d; ++i) {
          p[i] = center[static_cast<Eigen::Index>(i)] +
                 Scalar{sign * stretch, 0.0} * solver.eigenvectors()(static_cast<Eigen::Index>(i), r);
        }
        atoms.push_back({std::move(p), weight});
      }
    }
  }
  AtomicMeasure mu(d, Kind::complex, std::move(atoms));
  if (complex_target_residual(mu, targets) > tol)
    throw Error("solver post-check failed: constructed measure misses its targets");
  return mu;
}

SolveFamilyResult solve_family(const TruncatedSequence& seq,
                               const std::vector<CoefficientVector>& xi_set,
                               double tol) {
  MeasureFamily family(seq.dim(), seq.kind(), Provenance::user_supplied);
  std::vector<SolveRecord> records;
  std::vector<std::pair<CoefficientVector, FeasibilityWitness>> infeasible;

  for (const CoefficientVector& xi : xi_set) {
    const TruncatedSequence localized = localize(seq, xi);
    const unsigned needed = seq.kind() == Kind::real ? 2u : 1u;
    if (localized.max_degree() < needed)
      throw DegreeBudgetError("solve_family needs max_degree >= " +
                              std::to_string(needed) + " after localization");
    const TruncationTargets targets = TruncationTargets::from_sequence(localized);
    const FeasibilityVerdict verdict = feasibility(targets, tol);
    SolveRecord record{xi, verdict.feasible, verdict.witness, 0, 0.0};
    if (verdict.feasible) {
      AtomicMeasure mu = solve_initial_truncation(targets, tol);
      record.atom_count = mu.atoms().size();
      record.max_target_residual = seq.kind() == Kind::real
                                       ? real_target_residual(mu, targets)
                                       : complex_target_residual(mu, targets);
      family.insert(xi, std::move(mu));
    } else {
      infeasible.emplace_back(xi, verdict.witness);
    }
    records.push_back(std::move(record));
  }

  if (!infeasible.empty()) {
    std::string msg = "sequence is not a moment sequence; infeasible truncations at: ";
    for (std::size_t i = 0; i < infeasible.size(); ++i) {
      if (i) msg += ", ";
      msg += to_json(infeasible[i].first).dump();
    }
    throw FamilyInfeasibleError(msg, std::move(infeasible));
  }

  ParallelogramReport constraint_report =
      verify_parallelogram_positivity(family, derivable_pairs(family), tol);
  return SolveFamilyResult{std::move(family), std::move(records),
                           std::move(constraint_report)};
}

}  // namespace momcert
