#include "momcert/rkhs.hpp"

#include <algorithm>
#include <cmath>

namespace momcert {

Scalar gram_form(const Eigen::MatrixXcd& gram, const Eigen::VectorXcd& c,
                 const Eigen::VectorXcd& d) {
  if (c.size() != gram.rows() || d.size() != gram.cols())
    throw DimensionError("gram form vector length does not match matrix size");
  return (c.transpose() * gram * d.conjugate())(0, 0);
}

Eigen::VectorXcd coefficient_coordinates(const CoefficientVector& xi,
                                         const std::vector<MultiIndex>& index_list) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(index_list.size()));
  for (const auto& [idx, value] : xi.coeffs()) {
    auto it = std::find(index_list.begin(), index_list.end(), idx);
    if (it == index_list.end())
      throw DegreeBudgetError("coefficient support leaves the index list (degree " +
                              std::to_string(idx.degree()) + ")");
    out[static_cast<Eigen::Index>(it - index_list.begin())] = value;
  }
  return out;
}

GramMatrix gram_matrix(const TruncatedSequence& seq, unsigned order) {
  if (2 * order > seq.max_degree())
    throw DegreeBudgetError("gram matrix of order " + std::to_string(order) +
                            " needs max_degree >= " + std::to_string(2 * order));
  auto indices = indices_up_to(seq.dim(), order);
  const auto n = static_cast<Eigen::Index>(indices.size());
  if (seq.kind() == Kind::real) {
    Eigen::MatrixXcd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        g(i, j) = seq.at(indices[static_cast<std::size_t>(i)] +
                         indices[static_cast<std::size_t>(j)]);
    return GramMatrix{Kind::real, false, order, std::move(indices), std::move(g)};
  }
  // PD_C form over ordered pairs, row-major: row (m,n), column (k,l) holds
  // c_{m+l, n+k}.
  Eigen::MatrixXcd g(n * n, n * n);
  for (Eigen::Index im = 0; im < n; ++im) {
    for (Eigen::Index in_ = 0; in_ < n; ++in_) {
      for (Eigen::Index ik = 0; ik < n; ++ik) {
        for (Eigen::Index il = 0; il < n; ++il) {
          const MultiIndex& m = indices[static_cast<std::size_t>(im)];
          const MultiIndex& nn = indices[static_cast<std::size_t>(in_)];
          const MultiIndex& k = indices[static_cast<std::size_t>(ik)];
          const MultiIndex& l = indices[static_cast<std::size_t>(il)];
          g(im * n + in_, ik * n + il) = seq.at(m + l, nn + k);
        }
      }
    }
  }
  return GramMatrix{Kind::complex, true, order, std::move(indices), std::move(g)};
}

GramMatrix evaluation_gram(const TruncatedSequence& seq, unsigned order) {
  if (seq.kind() == Kind::real) return gram_matrix(seq, order);
  if (order > seq.max_degree())
    throw DegreeBudgetError("evaluation gram of order " + std::to_string(order) +
                            " needs max_degree >= " + std::to_string(order));
  auto indices = indices_up_to(seq.dim(), order);
  const auto n = static_cast<Eigen::Index>(indices.size());
  Eigen::MatrixXcd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      g(i, j) = seq.at(indices[static_cast<std::size_t>(i)],
                       indices[static_cast<std::size_t>(j)]);
  return GramMatrix{Kind::complex, false, order, std::move(indices), std::move(g)};
}

PsdReport psd_report_of(const GramMatrix& gram, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram.entries,
                                                         Eigen::EigenvaluesOnly);
  const Eigen::VectorXd eigs = solver.eigenvalues();
  const double min_eig = eigs.minCoeff();
  const double spectral_norm = std::max(std::abs(eigs.minCoeff()), std::abs(eigs.maxCoeff()));
  const bool pass = min_eig >= -tol * std::max(1.0, spectral_norm);
  return PsdReport{gram.order, min_eig, spectral_norm, pass};
}

PsdReport check_positive_definite(const TruncatedSequence& seq, unsigned order,
                                  double tol) {
  return psd_report_of(gram_matrix(seq, order), tol);
}

double seminorm(const TruncatedSequence& seq, const CoefficientVector& xi, double tol) {
  if (seq.dim() != xi.dim())
    throw DimensionError("sequence/coefficient-vector dimension mismatch in seminorm");
  if (xi.is_zero()) return 0.0;
  const GramMatrix gram = evaluation_gram(seq, xi.degree());
  const PsdReport psd = psd_report_of(gram, tol);
  if (!psd.pass)
    throw PositivityError("seminorm needs a PSD sequence at order " +
                          std::to_string(xi.degree()) + "; min eigenvalue " +
                          std::to_string(psd.min_eigenvalue));
  const Eigen::VectorXcd coords = coefficient_coordinates(xi, gram.index_list);
  const Scalar q = gram_form(gram.entries, coords, coords);
  if (std::abs(q.imag()) > kRealResidueTol * std::max(1.0, std::abs(q.real())))
    throw KindError("seminorm quadratic form produced imaginary residue");
  const double scale = std::max(1.0, std::abs(q.real()));
  if (q.real() < -tol * scale)
    throw PositivityError("seminorm radicand " + std::to_string(q.real()) +
                          " is negative beyond tolerance");
  return std::sqrt(std::max(0.0, q.real()));
}

QuotientBasis quotient_from_gram(GramMatrix gram, double tol) {
  if (gram.pair_indexed)
    throw Error("quotient construction expects a single-index evaluation gram");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(gram.entries);
  const Eigen::VectorXd eigs = solver.eigenvalues();  // ascending
  const Eigen::MatrixXcd vecs = solver.eigenvectors();
  const Eigen::Index n = eigs.size();
  const double lambda_max = std::max(0.0, eigs(n - 1));
  const double cut = tol * std::max(1.0, lambda_max);
  if (eigs(0) < -cut)
    throw PositivityError("quotient construction needs a PSD gram; min eigenvalue " +
                          std::to_string(eigs(0)));

  QuotientBasis out;
  std::vector<Eigen::Index> kept, null;
  for (Eigen::Index r = n - 1; r >= 0; --r) {
    (eigs(r) > cut ? kept : null).push_back(r);
  }
  out.coordinate_map.resize(n, static_cast<Eigen::Index>(kept.size()));
  out.eigenvalues.reserve(static_cast<std::size_t>(n));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    out.coordinate_map.col(static_cast<Eigen::Index>(c)) =
        vecs.col(kept[c]) * std::sqrt(eigs(kept[c]));
  }
  for (Eigen::Index r = n - 1; r >= 0; --r) out.eigenvalues.push_back(eigs(r));

  // Null vectors of the form are the conjugates of the kernel eigenvectors:
  // p(xi)^2 = eta^H G eta with eta = conj(xi).
  const std::size_t dim = gram.index_list.empty() ? 1 : gram.index_list.front().dim();
  for (Eigen::Index r : null) {
    std::map<MultiIndex, Scalar, GradedLexLess> coeffs;
    for (Eigen::Index i = 0; i < n; ++i) {
      const Scalar v = std::conj(vecs(i, r));
      if (v != Scalar{0.0, 0.0})
        coeffs.emplace(gram.index_list[static_cast<std::size_t>(i)], v);
    }
    out.null_basis.emplace_back(dim, std::move(coeffs));
  }
  out.gram = std::move(gram);
  return out;
}

QuotientBasis null_space(const TruncatedSequence& seq, unsigned order, double tol) {
  return quotient_from_gram(evaluation_gram(seq, order), tol);
}

ShiftFormReport shift_forms(const TruncatedSequence& seq, unsigned order,
                            std::size_t coordinate) {
  if (seq.kind() != Kind::real)
    throw KindError("shift forms are defined for real moment sequences");
  if (coordinate < 1 || coordinate > seq.dim())
    throw CoordinateRangeError("shift coordinate " + std::to_string(coordinate) +
                               " out of range 1.." + std::to_string(seq.dim()));
  if (2 * order + 2 > seq.max_degree())
    throw DegreeBudgetError("shift forms at order " + std::to_string(order) +
                            " need max_degree >= " + std::to_string(2 * order + 2));
  const MultiIndex e_i = MultiIndex::unit(coordinate, seq.dim());
  const auto indices = indices_up_to(seq.dim(), order);

  // <A_i a_{(m)}, a_{(n)}> - <a_{(m)}, A_i a_{(n)}> = a_{m+e_i+n} - a_{m+n+e_i},
  // evaluated as written.
  double symmetry_defect = 0.0;
  for (const MultiIndex& m : indices) {
    for (const MultiIndex& n : indices) {
      const double lhs = seq.at((m + e_i) + n);
      const double rhs = seq.at(m + (n + e_i));
      symmetry_defect = std::max(symmetry_defect, std::abs(lhs - rhs));
    }
  }

  // || (A_i A_j - A_j A_i) a_{(m)} || through Gram entries, |m| <= order-1.
  double max_commutator = 0.0;
  if (order >= 1) {
    const auto inner_indices = indices_up_to(seq.dim(), order - 1);
    for (std::size_t j = 1; j <= seq.dim(); ++j) {
      if (j == coordinate) continue;
      const MultiIndex e_j = MultiIndex::unit(j, seq.dim());
      for (const MultiIndex& m : inner_indices) {
        const CoefficientVector delta =
            CoefficientVector::unit((m + e_i) + e_j) - CoefficientVector::unit((m + e_j) + e_i);
        Scalar norm2{0.0, 0.0};
        for (const auto& [p, cp] : delta.coeffs())
          for (const auto& [q, cq] : delta.coeffs())
            norm2 += cp * std::conj(cq) * seq.at(p + q);
        max_commutator = std::max(max_commutator, std::sqrt(std::max(0.0, norm2.real())));
      }
    }
  }
  return ShiftFormReport{coordinate, symmetry_defect, max_commutator};
}

}  // namespace momcert
