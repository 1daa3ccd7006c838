#include "momcert/dilation.hpp"

#include <algorithm>
#include <cmath>

namespace momcert {

namespace {

double spectral_norm(const Eigen::MatrixXcd& hermitian) {
  if (hermitian.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return std::max(std::abs(solver.eigenvalues().minCoeff()),
                  std::abs(solver.eigenvalues().maxCoeff()));
}

}  // namespace

Eigen::MatrixXcd SpectralDilation::projection(std::size_t j) const {
  const auto n = static_cast<Eigen::Index>(space_dim);
  Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(n, n);
  const auto [offset, rank] = spans.at(j);
  for (std::size_t k = 0; k < rank; ++k) {
    const auto idx = static_cast<Eigen::Index>(offset + k);
    E(idx, idx) = Scalar{1.0, 0.0};
  }
  return E;
}

SemispectralMeasure semispectral_from_family(const MeasureFamily& family,
                                             const std::vector<CoefficientVector>& basis,
                                             const QuotientBasis& quotient, double tol) {
  if (basis.empty()) throw Error("semispectral construction needs a nonempty basis");

  // Union of member supports through canonical atom merging.
  std::vector<SignedAtom> support;
  for (const auto& [xi, mu] : family.members())
    for (const Atom& a : mu.atoms()) support.push_back({a.point, Scalar{1.0, 0.0}});
  const SignedAtomicMeasure merged(family.dim(), family.kind(), std::move(support));

  SemispectralMeasure F;
  F.dim = family.dim();
  F.kind = family.kind();
  for (const SignedAtom& a : merged.atoms()) F.points.push_back(a.point);

  const auto b = static_cast<Eigen::Index>(basis.size());
  std::vector<std::vector<SignedAtomicMeasure>> forms;
  forms.reserve(basis.size());
  for (const CoefficientVector& xi : basis) {
    std::vector<SignedAtomicMeasure> row;
    row.reserve(basis.size());
    for (const CoefficientVector& eta : basis)
      row.push_back(polarize(family, xi, eta).measure);
    forms.push_back(std::move(row));
  }

  F.total = Eigen::MatrixXcd::Zero(b, b);
  for (std::size_t j = 0; j < F.points.size(); ++j) {
    Eigen::MatrixXcd block(b, b);
    const std::vector<Point> region{F.points[j]};
    for (Eigen::Index p = 0; p < b; ++p)
      for (Eigen::Index q = 0; q < b; ++q)
        block(p, q) = forms[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)]
                          .mass_on(region);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    const double norm = spectral_norm(block);
    if (min_eig < -tol * std::max(1.0, norm))
      throw PositivityError("family defect: block at atom " + std::to_string(j) +
                            " is not PSD (eigenvalue " + std::to_string(min_eig) + ")");
    F.total += block;
    F.blocks.push_back(std::move(block));
  }

  // The basis must project onto the quotient span: the Gram Q^H Q of the
  // projected basis vectors has full rank q at (half) the quotient cut.
  const auto& index_list = quotient.gram.index_list;
  Eigen::MatrixXcd basis_coords(b, static_cast<Eigen::Index>(quotient.rank()));
  for (Eigen::Index a = 0; a < b; ++a) {
    const Eigen::VectorXcd coords =
        coefficient_coordinates(basis[static_cast<std::size_t>(a)], index_list);
    basis_coords.row(a) = (coords.transpose() * quotient.coordinate_map).row(0);
  }
  if (quotient.rank() > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> span_solver(
        basis_coords.adjoint() * basis_coords, Eigen::EigenvaluesOnly);
    const Eigen::VectorXd eigs = span_solver.eigenvalues();
    const double cut = 0.5 * tol * std::max(1.0, eigs(eigs.size() - 1));
    if (eigs(0) <= cut)
      throw Error("basis does not project onto the quotient basis (deficient span, "
                  "smallest direction " + std::to_string(eigs(0)) + ")");
  }
  return F;
}

SpectralDilation naimark_dilate(const SemispectralMeasure& F, double tol) {
  const Eigen::Index r = F.total.rows();
  SpectralDilation out;

  // First pass sizes the dilation space; ranks are decided per block at
  // tol * (largest eigenvalue of that block).
  std::vector<Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>> solvers;
  solvers.reserve(F.blocks.size());
  std::size_t dim = 0;
  std::vector<std::vector<Eigen::Index>> kept_per_block;
  for (std::size_t j = 0; j < F.blocks.size(); ++j) {
    solvers.emplace_back(F.blocks[j]);
    const Eigen::VectorXd eigs = solvers.back().eigenvalues();
    const double lambda_max = std::max(0.0, eigs(eigs.size() - 1));
    if (eigs(0) < -tol * std::max(1.0, lambda_max))
      throw PositivityError("naimark dilation needs PSD blocks; block " +
                            std::to_string(j) + " has eigenvalue " +
                            std::to_string(eigs(0)));
    std::vector<Eigen::Index> kept;
    for (Eigen::Index k = eigs.size() - 1; k >= 0; --k)
      if (eigs(k) > tol * lambda_max && eigs(k) > 0.0) kept.push_back(k);
    dim += kept.size();
    kept_per_block.push_back(std::move(kept));
  }

  out.space_dim = dim;
  out.V = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), r);
  std::size_t offset = 0;
  for (std::size_t j = 0; j < F.blocks.size(); ++j) {
    const auto& kept = kept_per_block[j];
    const Eigen::VectorXd eigs = solvers[j].eigenvalues();
    const Eigen::MatrixXcd vecs = solvers[j].eigenvectors();
    for (std::size_t k = 0; k < kept.size(); ++k) {
      // Row = sqrt(lambda) w^H: the F_j^{1/2} rows restricted to the range.
      out.V.row(static_cast<Eigen::Index>(offset + k)) =
          std::sqrt(eigs(kept[k])) * vecs.col(kept[k]).adjoint();
    }
    out.spans.emplace_back(offset, kept.size());
    offset += kept.size();
  }
  return out;
}

Scalar spectral_integral(const SpectralDilation& dilation, const std::vector<Point>& points,
                         const PointFunction& phi, const Eigen::VectorXcd& f,
                         const Eigen::VectorXcd& g) {
  if (points.size() != dilation.spans.size())
    throw DimensionError("point list does not match the dilation atom count");
  if (f.size() != static_cast<Eigen::Index>(dilation.space_dim) || f.size() != g.size())
    throw DimensionError("spectral integral vectors must live in the dilation space");
  Scalar acc{0.0, 0.0};
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto [offset, rank] = dilation.spans[j];
    const auto o = static_cast<Eigen::Index>(offset);
    const auto rk = static_cast<Eigen::Index>(rank);
    // <E_j f, g>, inner product linear in the first slot.
    const Scalar inner = g.segment(o, rk).dot(f.segment(o, rk));
    acc += phi(points[j]) * inner;
  }
  return acc;
}

Scalar spectral_integral(const SemispectralMeasure& F, const PointFunction& phi,
                         const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) {
  if (f.size() != F.total.rows() || g.size() != F.total.rows())
    throw DimensionError("spectral integral vectors must live in the base space");
  Scalar acc{0.0, 0.0};
  for (std::size_t j = 0; j < F.points.size(); ++j) acc += phi(F.points[j]) * g.dot(F.blocks[j] * f);
  return acc;
}

Eigen::MatrixXcd dilated_multiplication(const SpectralDilation& dilation,
                                        const std::vector<Point>& points,
                                        std::size_t coordinate) {
  if (points.size() != dilation.spans.size())
    throw DimensionError("point list does not match the dilation atom count");
  if (points.empty())
    return Eigen::MatrixXcd::Zero(0, 0);
  if (coordinate < 1 || coordinate > points.front().size())
    throw CoordinateRangeError("multiplication coordinate out of range");
  const auto n = static_cast<Eigen::Index>(dilation.space_dim);
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto [offset, rank] = dilation.spans[j];
    for (std::size_t k = 0; k < rank; ++k) {
      const auto idx = static_cast<Eigen::Index>(offset + k);
      B(idx, idx) = points[j][coordinate - 1];
    }
  }
  return B;
}

TruncatedSequence reconstruct_moments(const SpectralDilation& dilation,
                                      const std::vector<Point>& points, Kind kind,
                                      const Eigen::VectorXcd& vacuum, unsigned max_degree) {
  if (points.size() != dilation.spans.size())
    throw DimensionError("point list does not match the dilation atom count");
  if (vacuum.size() != static_cast<Eigen::Index>(dilation.space_dim))
    throw DimensionError("vacuum vector must live in the dilation space");
  if (points.empty())
    throw Error("reconstruction needs at least one atom; the zero measure has no dilation");
  const std::size_t dim = points.front().size();
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    const auto [offset, rank] = dilation.spans[j];
    const double weight =
        vacuum.segment(static_cast<Eigen::Index>(offset), static_cast<Eigen::Index>(rank))
            .squaredNorm();
    atoms.push_back({points[j], weight});
  }
  return moments_of(AtomicMeasure(dim, kind, std::move(atoms)), max_degree);
}

namespace {

// Coordinates of the basis vectors in the orthonormal quotient basis,
// one row per basis vector.
Eigen::MatrixXcd quotient_coordinates(const std::vector<CoefficientVector>& basis,
                                      const QuotientBasis& quotient) {
  Eigen::MatrixXcd coords(static_cast<Eigen::Index>(basis.size()),
                          static_cast<Eigen::Index>(quotient.rank()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const Eigen::VectorXcd c = coefficient_coordinates(basis[a], quotient.gram.index_list);
    coords.row(static_cast<Eigen::Index>(a)) = (c.transpose() * quotient.coordinate_map).row(0);
  }
  return coords;
}

// Expansion of a_{(0)} over the basis: the exact constant slot when present,
// a least-squares solve through the quotient coordinates otherwise.
Eigen::VectorXcd constant_expansion(const std::vector<CoefficientVector>& basis,
                                    const QuotientBasis& quotient, double tol) {
  const CoefficientVector constant =
      CoefficientVector::unit(MultiIndex::zero(basis.front().dim()));
  Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (basis[a] == constant) {
      beta[static_cast<Eigen::Index>(a)] = Scalar{1.0, 0.0};
      return beta;
    }
  }
  const auto& index_list = quotient.gram.index_list;
  const Eigen::VectorXcd c0 =
      (coefficient_coordinates(constant, index_list).transpose() * quotient.coordinate_map)
          .transpose();
  const Eigen::MatrixXcd q_t = quotient_coordinates(basis, quotient).transpose();
  beta = q_t.colPivHouseholderQr().solve(c0);
  const double residual = (q_t * beta - c0).norm();
  if (residual > std::sqrt(tol) * std::max(1.0, c0.norm()))
    throw Error("basis does not span the constant vector modulo the null space "
                "(expansion residual " + std::to_string(residual) + ")");
  return beta;
}

}  // namespace

DilationPipelineResult dilation_pipeline(const MeasureFamily& family,
                                         const TruncatedSequence& seq,
                                         const std::vector<CoefficientVector>& basis,
                                         double tol) {
  if (basis.empty()) throw Error("dilation pipeline needs a nonempty basis");
  unsigned order = 0;
  for (const CoefficientVector& xi : basis) order = std::max(order, xi.degree());
  const QuotientBasis quotient = null_space(seq, order, tol);

  SemispectralMeasure F = semispectral_from_family(family, basis, quotient, tol);
  SpectralDilation dilation = naimark_dilate(F, tol);

  const Eigen::VectorXcd beta = constant_expansion(basis, quotient, tol);
  const Eigen::VectorXcd vacuum = dilation.V * beta;
  TruncatedSequence reconstructed =
      reconstruct_moments(dilation, F.points, seq.kind(), vacuum, seq.max_degree());

  double recon_residual = 0.0;
  if (seq.kind() == Kind::real) {
    for (const MultiIndex& n : seq.index_list()) {
      const double expected = seq.at(n);
      recon_residual = std::max(recon_residual, std::abs(reconstructed.at(n) - expected) /
                                                    std::max(1.0, std::abs(expected)));
    }
  } else {
    for (const MultiIndex& m : seq.index_list()) {
      for (const MultiIndex& n : seq.index_list()) {
        const Scalar expected = seq.at(m, n);
        recon_residual = std::max(recon_residual,
                                  std::abs(reconstructed.at(m, n) - expected) /
                                      std::max(1.0, std::abs(expected)));
      }
    }
  }

  double dilation_defect = 0.0;
  const double total_norm = std::max(1.0, spectral_norm(F.total));
  for (std::size_t j = 0; j < F.blocks.size(); ++j) {
    const auto [offset, rank] = dilation.spans[j];
    const Eigen::MatrixXcd vj = dilation.V.middleRows(static_cast<Eigen::Index>(offset),
                                                      static_cast<Eigen::Index>(rank));
    dilation_defect =
        std::max(dilation_defect, spectral_norm(vj.adjoint() * vj - F.blocks[j]) / total_norm);
  }

  // Compression relation <B_i V beta_a, V beta_b> = sum xi^a_k conj(xi^b_l)
  // a_{k+l+e_i} when the budget reaches one degree past the Gram.
  double compression_defect = 0.0;
  if (seq.kind() == Kind::real && 2 * order + 1 <= seq.max_degree()) {
    for (std::size_t i = 1; i <= seq.dim(); ++i) {
      const MultiIndex e_i = MultiIndex::unit(i, seq.dim());
      const PointFunction coord = [i](const Point& p) { return p[i - 1]; };
      for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b_ = 0; b_ < basis.size(); ++b_) {
          const Scalar lhs = spectral_integral(
              dilation, F.points, coord, dilation.V.col(static_cast<Eigen::Index>(a)),
              dilation.V.col(static_cast<Eigen::Index>(b_)));
          Scalar rhs{0.0, 0.0};
          for (const auto& [k, ck] : basis[a].coeffs())
            for (const auto& [l, cl] : basis[b_].coeffs())
              rhs += ck * std::conj(cl) * seq.at((k + l) + e_i);
          compression_defect = std::max(compression_defect,
                                        std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
        }
      }
    }
  }

  return DilationPipelineResult{std::move(F),
                                std::move(dilation),
                                vacuum,
                                std::move(reconstructed),
                                recon_residual,
                                dilation_defect,
                                compression_defect};
}

DilationPipelineResult dilation_pipeline(const MeasureFamily& family,
                                         const TruncatedSequence& seq, unsigned order,
                                         double tol) {
  std::vector<CoefficientVector> basis;
  for (const MultiIndex& n : indices_up_to(seq.dim(), order))
    basis.push_back(CoefficientVector::unit(n));
  return dilation_pipeline(family, seq, basis, tol);
}

}  // namespace momcert
