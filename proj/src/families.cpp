#include "momcert/families.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "momcert/json_io.hpp"

namespace momcert {

namespace {

std::string key_string(const CoefficientVector& xi) { return to_json(xi).dump(); }

// Gathers the names of members a check needs but the family lacks.
class MissingCollector {
 public:
  explicit MissingCollector(const MeasureFamily& family) : family_(&family) {}

  const AtomicMeasure* require(const CoefficientVector& xi) {
    const AtomicMeasure* member = family_->find(xi);
    if (!member) missing_.insert(key_string(xi));
    return member;
  }

  void raise_if_missing(const std::string& check) const {
    if (missing_.empty()) return;
    std::vector<std::string> names(missing_.begin(), missing_.end());
    std::string msg = check + " is missing " + std::to_string(names.size()) +
                      " family member(s): ";
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i) msg += ", ";
      msg += names[i];
    }
    throw IncompletenessError(msg, std::move(names));
  }

 private:
  const MeasureFamily* family_;
  std::set<std::string> missing_;
};

Scalar integrate_monomial(const AtomicMeasure& mu, const MultiIndex& m,
                          const MultiIndex* conj_n) {
  Scalar acc{0.0, 0.0};
  for (const Atom& a : mu.atoms())
    acc += a.weight * (conj_n ? monomial_eval(a.point, m, *conj_n)
                              : monomial_eval(a.point, m));
  return acc;
}

}  // namespace

MeasureFamily::MeasureFamily(std::size_t dim, Kind kind, Provenance provenance)
    : dim_(dim), kind_(kind), provenance_(provenance) {
  if (dim_ == 0) throw DimensionError("family dimension must be >= 1");
}

void MeasureFamily::insert(const CoefficientVector& xi, AtomicMeasure mu) {
  if (xi.dim() != dim_ || mu.dim() != dim_)
    throw DimensionError("family member dimension mismatch");
  if (mu.kind() != kind_) throw KindError("family member kind mismatch");
  members_.insert_or_assign(xi, std::move(mu));
}

const AtomicMeasure* MeasureFamily::find(const CoefficientVector& xi) const {
  auto it = members_.find(xi);
  return it == members_.end() ? nullptr : &it->second;
}

MeasureFamily generate_certificate(const AtomicMeasure& mu,
                                   const std::vector<CoefficientVector>& xi_set) {
  MeasureFamily family(mu.dim(), mu.kind(), Provenance::generated_from_measure);
  for (const CoefficientVector& xi : xi_set) {
    if (xi.dim() != mu.dim())
      throw DimensionError("xi dimension does not match the measure dimension");
    std::vector<Atom> atoms;
    atoms.reserve(mu.atoms().size());
    for (const Atom& a : mu.atoms()) {
      const double density = std::norm(poly_eval(xi, a.point));
      atoms.push_back({a.point, a.weight * density});
    }
    family.insert(xi, AtomicMeasure(mu.dim(), mu.kind(), std::move(atoms)));
  }
  return family;
}

std::vector<CoefficientVector> audit_closure(const std::vector<CoefficientVector>& basis) {
  if (basis.empty()) return {};
  const std::size_t dim = basis.front().dim();
  std::set<CoefficientVector> closure;
  closure.insert(CoefficientVector::zero(dim));
  const Scalar factors[] = {{-1.0, 0.0}, {0.0, 1.0}, {2.0, 0.0}, {1.0, 1.0}, {1.0, -1.0}};
  const Scalar i_unit{0.0, 1.0};
  for (const CoefficientVector& xi : basis) {
    closure.insert(xi);
    for (const Scalar z : factors) closure.insert(xi.scaled(z));
  }
  for (const CoefficientVector& xi : basis) {
    for (const CoefficientVector& eta : basis) {
      if (xi == eta) continue;
      closure.insert(xi + eta);
      closure.insert(xi - eta);
      closure.insert(xi + eta.scaled(i_unit));
      closure.insert(xi - eta.scaled(i_unit));
    }
  }
  return {closure.begin(), closure.end()};
}

MomentConditionReport verify_moment_conditions(const MeasureFamily& family,
                                               const TruncatedSequence& seq,
                                               double tol) {
  if (family.dim() != seq.dim() || family.kind() != seq.kind())
    throw DimensionError("family and sequence dimension/kind mismatch");
  MomentConditionReport report;
  report.tol = tol;

  for (const auto& [xi, mu_xi] : family.members()) {
    const TruncatedSequence localized = localize(seq, xi);
    auto record = [&](const MultiIndex& m, const MultiIndex* n, Scalar lhs, Scalar rhs) {
      const double residual = std::abs(lhs - rhs);
      const double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
      const bool pass = residual <= tol * scale;
      report.records.push_back({xi, m, n ? std::optional<MultiIndex>(*n) : std::nullopt,
                                lhs, rhs, residual, scale, pass});
      report.max_residual = std::max(report.max_residual, residual);
      report.pass = report.pass && pass;
    };
    if (seq.kind() == Kind::real) {
      if (localized.max_degree() < 2)
        throw DegreeBudgetError("moment-condition check needs max_degree >= 2 + 2 deg(xi)");
      for (const MultiIndex& n : n1_union_2n1_set(seq.dim())) {
        record(n, nullptr, Scalar{localized.at(n), 0.0}, integrate_monomial(mu_xi, n, nullptr));
      }
    } else {
      if (localized.max_degree() < 1)
        throw DegreeBudgetError("moment-condition check needs max_degree >= 1 + deg(xi)");
      const auto n1 = n1_set(seq.dim());
      for (const MultiIndex& m : n1) {
        for (const MultiIndex& n : n1) {
          record(m, &n, localized.at(m, n), integrate_monomial(mu_xi, m, &n));
        }
      }
    }
  }
  return report;
}

ParallelogramReport verify_parallelogram_positivity(
    const MeasureFamily& family,
    const std::vector<std::pair<CoefficientVector, CoefficientVector>>& pairs,
    double tol) {
  ParallelogramReport report;
  report.tol = tol;

  MissingCollector collector(family);
  struct Resolved {
    const CoefficientVector* xi;
    const CoefficientVector* eta;
    const AtomicMeasure* sum;
    const AtomicMeasure* diff;
    const AtomicMeasure* eta_member;
  };
  std::vector<Resolved> resolved;
  for (const auto& [xi, eta] : pairs) {
    Resolved r{&xi, &eta, collector.require(xi + eta), collector.require(xi - eta),
               collector.require(eta)};
    resolved.push_back(r);
  }
  collector.raise_if_missing("parallelogram positivity");

  for (const Resolved& r : resolved) {
    const SignedAtomicMeasure residual =
        SignedAtomicMeasure::from(*r.sum) + SignedAtomicMeasure::from(*r.diff) -
        SignedAtomicMeasure::from(*r.eta_member).scaled(Scalar{2.0, 0.0});
    double min_weight = 0.0;
    for (const SignedAtom& a : residual.atoms())
      min_weight = std::min(min_weight, a.weight.real());
    const double scale = std::max(
        1.0, r.sum->total_mass() + r.diff->total_mass() + 2.0 * r.eta_member->total_mass());
    const bool pass = min_weight >= -tol * scale;
    report.records.push_back({*r.xi, *r.eta, min_weight, scale, pass});
    report.pass = report.pass && pass;
  }

  if (const AtomicMeasure* zero_member = family.find(CoefficientVector::zero(family.dim()))) {
    report.zero_member_mass = zero_member->total_mass();
    report.zero_member_pass = *report.zero_member_mass <= tol;
    report.pass = report.pass && report.zero_member_pass;
  }
  return report;
}

std::vector<std::pair<CoefficientVector, CoefficientVector>> derivable_pairs(
    const MeasureFamily& family) {
  std::vector<std::pair<CoefficientVector, CoefficientVector>> pairs;
  for (const auto& [xi, mu_xi] : family.members()) {
    for (const auto& [eta, mu_eta] : family.members()) {
      if (family.contains(xi + eta) && family.contains(xi - eta))
        pairs.emplace_back(xi, eta);
    }
  }
  return pairs;
}

PolarizedForm polarize(const MeasureFamily& family, const CoefficientVector& xi,
                       const CoefficientVector& eta) {
  const Scalar i_unit{0.0, 1.0};
  MissingCollector collector(family);
  const AtomicMeasure* sum = collector.require(xi + eta);
  const AtomicMeasure* diff = collector.require(xi - eta);
  const AtomicMeasure* sum_i = collector.require(xi + eta.scaled(i_unit));
  const AtomicMeasure* diff_i = collector.require(xi - eta.scaled(i_unit));
  collector.raise_if_missing("polarization");

  SignedAtomicMeasure combined =
      SignedAtomicMeasure::from(*sum) - SignedAtomicMeasure::from(*diff) +
      SignedAtomicMeasure::from(*sum_i).scaled(i_unit) -
      SignedAtomicMeasure::from(*diff_i).scaled(i_unit);
  return PolarizedForm{xi, eta, combined.scaled(Scalar{0.25, 0.0})};
}

SesquilinearReport sesquilinear_audit(const MeasureFamily& family,
                                      const std::vector<CoefficientVector>& basis,
                                      const std::vector<std::vector<Point>>& regions,
                                      const TruncatedSequence& seq, double tol,
                                      bool audit_homogeneity) {
  SesquilinearReport report;
  report.tol = tol;
  const std::size_t b = basis.size();
  if (b == 0) return report;  // vacuous audit

  // Collect every required member up front so one error names them all.
  {
    MissingCollector collector(family);
    const Scalar i_unit{0.0, 1.0};
    for (const CoefficientVector& xi : basis) {
      for (const CoefficientVector& eta : basis) {
        collector.require(xi + eta);
        collector.require(xi - eta);
        collector.require(xi + eta.scaled(i_unit));
        collector.require(xi - eta.scaled(i_unit));
      }
      collector.require(xi);
      if (audit_homogeneity) {
        collector.require(xi.scaled(Scalar{-1.0, 0.0}));
        collector.require(xi.scaled(Scalar{0.0, 1.0}));
        collector.require(xi.scaled(Scalar{2.0, 0.0}));
      }
    }
    collector.raise_if_missing("sesquilinear audit");
  }

  std::vector<std::vector<SignedAtomicMeasure>> forms;
  forms.reserve(b);
  for (std::size_t p = 0; p < b; ++p) {
    std::vector<SignedAtomicMeasure> row;
    row.reserve(b);
    for (std::size_t q = 0; q < b; ++q)
      row.push_back(polarize(family, basis[p], basis[q]).measure);
    forms.push_back(std::move(row));
  }

  std::vector<double> p_values;
  p_values.reserve(b);
  for (const CoefficientVector& xi : basis) p_values.push_back(seminorm(seq, xi, tol));

  // Form matrix on each region plus the full space as the final entry.
  for (std::size_t r = 0; r <= regions.size(); ++r) {
    const bool full_space = r == regions.size();
    Eigen::MatrixXcd S(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b));
    for (std::size_t p = 0; p < b; ++p) {
      for (std::size_t q = 0; q < b; ++q) {
        S(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)) =
            full_space ? forms[p][q].total() : forms[p][q].mass_on(regions[r]);
      }
    }
    double hermitian_defect = 0.0;
    double max_excess = 0.0;
    for (std::size_t p = 0; p < b; ++p) {
      for (std::size_t q = 0; q < b; ++q) {
        hermitian_defect = std::max(
            hermitian_defect, std::abs(S(static_cast<Eigen::Index>(p),
                                         static_cast<Eigen::Index>(q)) -
                                       std::conj(S(static_cast<Eigen::Index>(q),
                                                   static_cast<Eigen::Index>(p)))));
        const double bound = p_values[p] * p_values[q];
        const double excess = std::abs(S(static_cast<Eigen::Index>(p),
                                         static_cast<Eigen::Index>(q))) -
                              bound;
        max_excess = std::max(max_excess, excess / std::max(1.0, bound));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(S, Eigen::EigenvaluesOnly);
    const double min_eig = b == 0 ? 0.0 : solver.eigenvalues().minCoeff();
    const double norm = b == 0 ? 0.0
                               : std::max(std::abs(solver.eigenvalues().minCoeff()),
                                          std::abs(solver.eigenvalues().maxCoeff()));
    const bool pass = hermitian_defect <= tol * std::max(1.0, norm) &&
                      min_eig >= -tol * std::max(1.0, norm) && max_excess <= tol;
    report.region_records.push_back({r, hermitian_defect, min_eig, max_excess, pass});
    report.pass = report.pass && pass;
  }

  // (cd): diagonal total mass equals the squared seminorm.
  for (std::size_t p = 0; p < b; ++p) {
    const Scalar mass = forms[p][p].total();
    const double p2 = p_values[p] * p_values[p];
    const double residual = std::abs(mass - Scalar{p2, 0.0});
    const bool pass = residual <= tol * std::max(1.0, p2);
    report.diagonal_records.push_back({basis[p], mass.real(), p2, residual, pass});
    report.pass = report.pass && pass;
  }

  if (audit_homogeneity) {
    const Scalar factors[] = {{-1.0, 0.0}, {0.0, 1.0}, {2.0, 0.0}};
    for (const CoefficientVector& xi : basis) {
      const AtomicMeasure* base = family.find(xi);
      for (const Scalar z : factors) {
        const AtomicMeasure* scaled_member = family.find(xi.scaled(z));
        const SignedAtomicMeasure defect =
            SignedAtomicMeasure::from(*scaled_member) -
            SignedAtomicMeasure::from(*base).scaled(Scalar{std::norm(z), 0.0});
        double max_defect = 0.0;
        for (const SignedAtom& a : defect.atoms())
          max_defect = std::max(max_defect, std::abs(a.weight));
        const double scale = std::max(1.0, std::norm(z) * base->total_mass());
        const bool pass = max_defect <= tol * scale;
        report.homogeneity_records.push_back({xi, z, max_defect, pass});
        report.pass = report.pass && pass;
      }
    }
  }
  return report;
}

}  // namespace momcert
