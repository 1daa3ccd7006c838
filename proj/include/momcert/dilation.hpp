#ifndef MOMCERT_DILATION_HPP
#define MOMCERT_DILATION_HPP

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "momcert/families.hpp"
#include "momcert/rkhs.hpp"

namespace momcert {

// Matrix-valued atomic measure: Hermitian PSD blocks F_j of a common
// dimension sitting at points x_j. `total` is the sum of the blocks; when the
// measure comes from a certificate family over a monomial basis it equals
// the evaluation Gram of the underlying sequence (no renormalization to the
// identity is applied).
struct SemispectralMeasure {
  std::size_t dim = 0;
  Kind kind = Kind::real;
  std::vector<Point> points;
  std::vector<Eigen::MatrixXcd> blocks;
  Eigen::MatrixXcd total;

  std::size_t block_size() const {
    return blocks.empty() ? 0 : static_cast<std::size_t>(blocks.front().rows());
  }
};

// Naimark dilation data: the isometry-like map V (satisfying V* V = total)
// into the dilation space, and pairwise orthogonal projections E_j summing
// to the identity there. E_j is the coordinate projection onto the span of
// rows [offset_j, offset_j + rank_j).
struct SpectralDilation {
  Eigen::MatrixXcd V;  // (dilation dim) x (block dim)
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // (offset, rank) per atom
  std::size_t space_dim = 0;

  Eigen::MatrixXcd projection(std::size_t j) const;
};

// Blocks mu_{xi_a, xi_b}({x}) over the supplied basis, at the union of the
// member supports. Every block must come out PSD at tol; a defect is an
// error carrying the offending atom, not a silent clip. The quotient is used
// to confirm the basis projects onto the quotient span (rank check).
SemispectralMeasure semispectral_from_family(const MeasureFamily& family,
                                             const std::vector<CoefficientVector>& basis,
                                             const QuotientBasis& quotient,
                                             double tol = kDefaultTol);

// Dilation space = direct sum of the ranges of the F_j^{1/2} (ranks at tol);
// V stacks the square-root rows restricted to those ranges.
SpectralDilation naimark_dilate(const SemispectralMeasure& F, double tol = kDefaultTol);

using PointFunction = std::function<Scalar(const Point&)>;

// sum_j phi(x_j) <E_j f, g> over the dilation space.
Scalar spectral_integral(const SpectralDilation& dilation, const std::vector<Point>& points,
                         const PointFunction& phi, const Eigen::VectorXcd& f,
                         const Eigen::VectorXcd& g);

// sum_j phi(x_j) <F_j f, g> over the base space. Multiplicativity of the
// integral holds for the projection-valued route only.
Scalar spectral_integral(const SemispectralMeasure& F, const PointFunction& phi,
                         const Eigen::VectorXcd& f, const Eigen::VectorXcd& g);

// B_i = sum_j (x_j)_i E_j on the dilation space; Hermitian for real-kind
// points (for complex kind this is the normal multiplication operator).
Eigen::MatrixXcd dilated_multiplication(const SpectralDilation& dilation,
                                        const std::vector<Point>& points,
                                        std::size_t coordinate);

// a_n = sum_j x_j^n <E_j vacuum, vacuum> for degree(n) <= max_degree (and
// c_{m,n} likewise for complex points).
TruncatedSequence reconstruct_moments(const SpectralDilation& dilation,
                                      const std::vector<Point>& points, Kind kind,
                                      const Eigen::VectorXcd& vacuum, unsigned max_degree);

struct DilationPipelineResult {
  SemispectralMeasure semispectral;
  SpectralDilation dilation;
  Eigen::VectorXcd vacuum;
  TruncatedSequence reconstructed;
  double max_reconstruction_residual;  // vs the input sequence, relative
  double max_dilation_defect;          // max_j ||V* E_j V - F_j|| / ||total||
  double max_compression_defect;       // shift-form compression, real kind
};

// Gram -> semispectral -> Naimark -> reconstruction, end to end: quotient
// from seq at the maximal basis degree, blocks over the basis, vacuum from
// the expansion of a_{(0)} in the basis (the constant slot when present,
// a least-squares solve through the quotient coordinates otherwise), moments
// reconstructed up to seq.max_degree and compared entrywise.
DilationPipelineResult dilation_pipeline(const MeasureFamily& family,
                                         const TruncatedSequence& seq,
                                         const std::vector<CoefficientVector>& basis,
                                         double tol = kDefaultTol);

// Convenience: the monomial unit basis of degree <= order.
DilationPipelineResult dilation_pipeline(const MeasureFamily& family,
                                         const TruncatedSequence& seq, unsigned order,
                                         double tol = kDefaultTol);

}  // namespace momcert

#endif
