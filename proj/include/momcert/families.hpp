#ifndef MOMCERT_FAMILIES_HPP
#define MOMCERT_FAMILIES_HPP

#include <map>
#include <optional>

#include "momcert/rkhs.hpp"
#include "momcert/sequences.hpp"

namespace momcert {

enum class Provenance { generated_from_measure, user_supplied };

// Keyed collection {mu_xi} over canonical coefficient vectors; lookup is by
// exact coefficient equality. The toolkit never synthesizes missing members
// outside generate_certificate: every verification names the combinations it
// could not find. Immutable once populated; checks over members may run
// concurrently.
class MeasureFamily {
 public:
  MeasureFamily(std::size_t dim, Kind kind, Provenance provenance);

  std::size_t dim() const { return dim_; }
  Kind kind() const { return kind_; }
  Provenance provenance() const { return provenance_; }

  void insert(const CoefficientVector& xi, AtomicMeasure mu);
  const AtomicMeasure* find(const CoefficientVector& xi) const;
  bool contains(const CoefficientVector& xi) const { return find(xi) != nullptr; }
  const std::map<CoefficientVector, AtomicMeasure>& members() const { return members_; }

 private:
  std::size_t dim_;
  Kind kind_;
  Provenance provenance_;
  std::map<CoefficientVector, AtomicMeasure> members_;
};

// mu_{xi,eta} recovered from the quadratic family by the quarter identity
// (mu_{xi+eta} - mu_{xi-eta} + i mu_{xi+i eta} - i mu_{xi-i eta}) / 4.
struct PolarizedForm {
  CoefficientVector xi;
  CoefficientVector eta;
  SignedAtomicMeasure measure;
};

// The "only if" certificate: mu_xi has the atoms of mu reweighted by
// |p_xi|^2. Includes a member for every xi in xi_set, exactly.
MeasureFamily generate_certificate(const AtomicMeasure& mu,
                                   const std::vector<CoefficientVector>& xi_set);

// Closure of a basis under the combinations the verification suite reads:
// 0, scalings {-1, i, 2, 1+i, 1-i}, and pairwise xi+eta, xi-eta, xi+i eta,
// xi-i eta. Deduplicated canonical list.
std::vector<CoefficientVector> audit_closure(const std::vector<CoefficientVector>& basis);

struct MomentCheckRecord {
  CoefficientVector xi;
  MultiIndex idx_m;
  std::optional<MultiIndex> idx_n;  // complex kind second slot
  Scalar lhs;                       // localized sequence entry
  Scalar rhs;                       // integral against the family member
  double residual;
  double scale;
  bool pass;
};

struct MomentConditionReport {
  bool pass = true;
  double tol = kDefaultTol;
  double max_residual = 0.0;
  std::vector<MomentCheckRecord> records;
};

// Checks a^xi_n = int x^n dmu_xi for n in N1 union 2N1 (real; exactly the
// 2d+1 indices {0, e_i, 2e_i}) or c^xi_{m,n} = int z^m zbar^n dmu_xi for
// m,n in N1 (complex), for every member of the family.
MomentConditionReport verify_moment_conditions(const MeasureFamily& family,
                                               const TruncatedSequence& seq,
                                               double tol = kDefaultTol);

struct ParallelogramRecord {
  CoefficientVector xi;
  CoefficientVector eta;
  double min_weight;  // most negative merged weight of the residual measure
  double scale;
  bool pass;
};

struct ParallelogramReport {
  bool pass = true;
  double tol = kDefaultTol;
  std::vector<ParallelogramRecord> records;
  std::optional<double> zero_member_mass;  // set when 0 is a member
  bool zero_member_pass = true;
};

// mu_{xi+eta} + mu_{xi-eta} - 2 mu_eta >= 0 on the merged atom set, for each
// supplied pair; asserts mu_0 = 0 when 0 is a member.
ParallelogramReport verify_parallelogram_positivity(
    const MeasureFamily& family,
    const std::vector<std::pair<CoefficientVector, CoefficientVector>>& pairs,
    double tol = kDefaultTol);

// All ordered key pairs (xi, eta) whose combinations xi+eta and xi-eta are
// present in the family; the honest pair set for auditing a user family.
std::vector<std::pair<CoefficientVector, CoefficientVector>> derivable_pairs(
    const MeasureFamily& family);

PolarizedForm polarize(const MeasureFamily& family, const CoefficientVector& xi,
                       const CoefficientVector& eta);

struct RegionFormRecord {
  std::size_t region;  // position in the regions list; regions.size() = full space
  double hermitian_defect;
  double min_eigenvalue;
  double max_schwarz_excess;
  bool pass;
};

struct HomogeneityRecord {
  CoefficientVector xi;
  Scalar factor;
  double max_atom_defect;
  bool pass;
};

struct DiagonalMassRecord {
  CoefficientVector xi;
  double form_mass;     // mu_{xi,xi}(X)
  double seminorm_sq;   // p(xi)^2
  double residual;
  bool pass;
};

struct SesquilinearReport {
  bool pass = true;
  double tol = kDefaultTol;
  std::vector<RegionFormRecord> region_records;
  std::vector<DiagonalMassRecord> diagonal_records;
  std::vector<HomogeneityRecord> homogeneity_records;
};

// Audits the Theorem 1 conclusions on a concrete family: the form matrices
// [mu_{xi_a, xi_b}(sigma)] are Hermitian PSD on every region, the Schwarz
// bound |mu_{xi,eta}(sigma)| <= p(xi) p(eta) holds, diagonal total masses
// equal p(xi)^2, and (optionally) mu_{z xi} = |z|^2 mu_xi for z in {-1,i,2}.
SesquilinearReport sesquilinear_audit(const MeasureFamily& family,
                                      const std::vector<CoefficientVector>& basis,
                                      const std::vector<std::vector<Point>>& regions,
                                      const TruncatedSequence& seq,
                                      double tol = kDefaultTol,
                                      bool audit_homogeneity = true);

}  // namespace momcert

#endif
