#ifndef MOMCERT_RKHS_HPP
#define MOMCERT_RKHS_HPP

#include <Eigen/Dense>

#include "momcert/sequences.hpp"

namespace momcert {

// Hermitian matrix of inner products, entry (i,j) = <b_i, b_j> with the inner
// product linear in the first slot. Real kind: b_i = a_{(m_i)} and the entry
// is a_{m_i + m_j}. The pair-indexed form carries the complex
// positive-definiteness test: rows/columns run over ordered pairs (m,n) in
// graded-lex order on each slot (row-major) and the entry at
// ((m,n),(k,l)) is c_{m+l, n+k}.
struct GramMatrix {
  Kind kind;
  bool pair_indexed;
  unsigned order;
  std::vector<MultiIndex> index_list;  // degree <= order
  Eigen::MatrixXcd entries;
};

// Sesquilinear form through a Gram matrix: <sum_i c_i b_i, sum_j d_j b_j>
// = sum_{i,j} c_i conj(d_j) G[i][j].
Scalar gram_form(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& c,
                 const Eigen::VectorXcd& d);

// Coordinates of xi over an index list (zero outside the support); errors if
// the support leaves the list.
Eigen::VectorXcd coefficient_coordinates(const CoefficientVector& xi,
                                         const std::vector<MultiIndex>& index_list);

// The positive-definiteness test matrix: real kind gives [a_{m+n}] over
// indices of degree <= order (needs 2 order <= max_degree); complex kind
// gives the pair-indexed PD_C matrix, which reaches entries of slot degree
// 2 order and therefore also needs 2 order <= max_degree.
GramMatrix gram_matrix(const TruncatedSequence& seq, unsigned order);

// Single-index inner-product matrix of the monomial vectors themselves:
// [a_{m+n}] (real, 2 order <= max_degree) or [c_{m,n}] (complex,
// order <= max_degree). Coincides with gram_matrix for the real kind.
GramMatrix evaluation_gram(const TruncatedSequence& seq, unsigned order);

struct PsdReport {
  unsigned order;
  double min_eigenvalue;
  double spectral_norm;
  bool pass;
};

// PD_R / PD_C at the given order: pass iff the smallest eigenvalue is
// >= -tol * max(1, spectral norm).
PsdReport check_positive_definite(const TruncatedSequence& seq, unsigned order,
                                  double tol = kDefaultTol);

PsdReport psd_report_of(const GramMatrix& gram, double tol);

// Seminorm p(xi) = || sum_k xi_k a_{(k)} || = sqrt of the evaluation-Gram
// quadratic form; equals sqrt(a^xi_0). The underlying Gram must be PSD at
// tol or a positivity-violation error is raised.
double seminorm(const TruncatedSequence& seq, const CoefficientVector& xi,
                double tol = kDefaultTol);

// Null space Delta and quotient data of an evaluation Gram at order k.
// coordinate_map C has one row per index (coordinates of b_i in an
// orthonormal basis of the quotient span) and satisfies G = C C^H.
struct QuotientBasis {
  GramMatrix gram;
  std::vector<CoefficientVector> null_basis;
  Eigen::MatrixXcd coordinate_map;
  std::vector<double> eigenvalues;  // descending
  std::size_t rank() const { return static_cast<std::size_t>(coordinate_map.cols()); }
};

QuotientBasis null_space(const TruncatedSequence& seq, unsigned order,
                         double tol = kDefaultTol);

// Quotient data from an explicit Hermitian PSD Gram (used when the Gram
// arises from a semispectral total rather than a sequence).
QuotientBasis quotient_from_gram(GramMatrix gram, double tol = kDefaultTol);

// Defect report for the shift operators A_i a_{(m)} = a_{(m+e_i)}; real kind
// only. Symmetry is measured over |m|,|n| <= order and commutators (pairs
// i < j) over |m| <= order-1 through Gram-evaluated norms.
struct ShiftFormReport {
  std::size_t coordinate;  // 1-based i
  double symmetry_defect;
  double max_commutator_defect;
};

ShiftFormReport shift_forms(const TruncatedSequence& seq, unsigned order,
                            std::size_t coordinate);

}  // namespace momcert

#endif
