// Seeded random generators for the property and acceptance suites.

#ifndef MOMCERT_TESTS_GENERATORS_HPP
#define MOMCERT_TESTS_GENERATORS_HPP

#include <Eigen/Dense>
#include <random>

#include "momcert/dilation.hpp"
#include "momcert/sequences.hpp"
#include "momcert/solver.hpp"

namespace momcert::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Random atomic measure with atoms in [-2,2]^d (or the complex square) and
// weights in (0,1]. min_separation > 0 keeps atoms apart, which keeps Gram
// spectra away from ambiguous rank cuts in pipeline tests.
inline AtomicMeasure random_measure(Rng& rng, std::size_t dim, Kind kind,
                                    std::size_t max_atoms, double min_separation = 0.0) {
  const std::size_t count = pick(rng, 1, max_atoms);
  std::vector<Atom> atoms;
  while (atoms.size() < count) {
    Point p(dim);
    for (std::size_t k = 0; k < dim; ++k) {
      p[k] = kind == Kind::real ? Scalar{uniform(rng, -2.0, 2.0), 0.0}
                                : Scalar{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    }
    bool too_close = false;
    for (const Atom& existing : atoms) {
      double dist2 = 0.0;
      for (std::size_t k = 0; k < dim; ++k) dist2 += std::norm(p[k] - existing.point[k]);
      if (dist2 < min_separation * min_separation) {
        too_close = true;
        break;
      }
    }
    if (too_close) continue;
    atoms.push_back({std::move(p), uniform(rng, 1e-3, 1.0)});
  }
  return AtomicMeasure(dim, kind, std::move(atoms));
}

// Random coefficient vector with support drawn from degree <= max_degree.
inline CoefficientVector random_xi(Rng& rng, std::size_t dim, unsigned max_degree,
                                   bool complex_coeffs = true) {
  const auto indices = indices_up_to(dim, max_degree);
  const std::size_t terms = pick(rng, 1, std::min<std::size_t>(indices.size(), 4));
  std::map<MultiIndex, Scalar, GradedLexLess> coeffs;
  for (std::size_t t = 0; t < terms; ++t) {
    const MultiIndex& idx = indices[pick(rng, 0, indices.size() - 1)];
    const double re = uniform(rng, -1.0, 1.0);
    const double im = complex_coeffs ? uniform(rng, -1.0, 1.0) : 0.0;
    coeffs[idx] = Scalar{re, im};
  }
  return CoefficientVector(dim, std::move(coeffs));
}

inline std::vector<CoefficientVector> random_xi_set(Rng& rng, std::size_t dim,
                                                    unsigned max_degree, std::size_t count,
                                                    bool complex_coeffs = true) {
  std::vector<CoefficientVector> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(random_xi(rng, dim, max_degree, complex_coeffs));
  return out;
}

// Feasible real targets from mass, means, variances >= 0.
inline TruncationTargets random_feasible_real_targets(Rng& rng, std::size_t dim) {
  const double mass = uniform(rng, 1e-3, 10.0);
  std::vector<double> first(dim), second(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double mean = uniform(rng, -2.0, 2.0);
    const double variance = pick(rng, 0, 4) == 0 ? 0.0 : uniform(rng, 0.0, 2.0);
    first[i] = mass * mean;
    second[i] = mass * (variance + mean * mean);
  }
  return TruncationTargets::real(mass, std::move(first), std::move(second));
}

// Cauchy-Schwarz violation injected at one known coordinate.
inline TruncationTargets random_infeasible_real_targets(Rng& rng, std::size_t dim,
                                                        std::size_t& violated_coordinate) {
  TruncationTargets targets = random_feasible_real_targets(rng, dim);
  violated_coordinate = pick(rng, 1, dim);
  const std::size_t i = violated_coordinate - 1;
  // Force t_0 s_i < t_i^2 by a wide margin.
  targets.first[i] = targets.mass * uniform(rng, 2.0, 4.0);
  targets.second_diag[i] =
      targets.first[i] * targets.first[i] / targets.mass * uniform(rng, 0.1, 0.5);
  return targets;
}

// Feasible complex targets: H = m m*/t + (PSD part).
inline TruncationTargets random_feasible_complex_targets(Rng& rng, std::size_t dim) {
  const double mass = uniform(rng, 1e-3, 10.0);
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::VectorXcd means(d);
  for (Eigen::Index i = 0; i < d; ++i)
    means[i] = Scalar{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)} * mass;
  Eigen::MatrixXcd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      a(i, j) = Scalar{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  const Eigen::MatrixXcd correlation = means * means.adjoint() / Scalar{mass, 0.0} +
                                       a * a.adjoint() * Scalar{uniform(rng, 0.1, 2.0), 0.0};
  return TruncationTargets::complex(mass, std::move(means), correlation);
}

// Centered correlation given a negative eigenvalue.
inline TruncationTargets random_infeasible_complex_targets(Rng& rng, std::size_t dim) {
  TruncationTargets targets = random_feasible_complex_targets(rng, dim);
  const auto d = static_cast<Eigen::Index>(dim);
  Eigen::VectorXcd direction(d);
  for (Eigen::Index i = 0; i < d; ++i)
    direction[i] = Scalar{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
  direction.normalize();
  const Eigen::MatrixXcd centered =
      targets.correlation - targets.means * targets.means.adjoint() / Scalar{targets.mass, 0.0};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(centered, Eigen::EigenvaluesOnly);
  const double depth = solver.eigenvalues().maxCoeff() + uniform(rng, 0.5, 2.0);
  targets.correlation -= direction * direction.adjoint() * Scalar{depth, 0.0};
  return targets;
}

// Random Hermitian PSD block family for dilation tests: r-dimensional
// blocks A A* at distinct real points.
inline SemispectralMeasure random_psd_blocks(Rng& rng, std::size_t block_dim,
                                             std::size_t atom_count) {
  SemispectralMeasure F;
  F.dim = 1;
  F.kind = Kind::real;
  const auto r = static_cast<Eigen::Index>(block_dim);
  F.total = Eigen::MatrixXcd::Zero(r, r);
  for (std::size_t j = 0; j < atom_count; ++j) {
    F.points.push_back({Scalar{static_cast<double>(j) + uniform(rng, 0.0, 0.5), 0.0}});
    Eigen::MatrixXcd a(r, r);
    for (Eigen::Index p = 0; p < r; ++p)
      for (Eigen::Index q = 0; q < r; ++q)
        a(p, q) = Scalar{uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)};
    Eigen::MatrixXcd block = a * a.adjoint();
    // Occasionally rank-deficient on purpose.
    if (pick(rng, 0, 3) == 0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block);
      Eigen::VectorXd eigs = solver.eigenvalues();
      eigs(0) = 0.0;
      block = solver.eigenvectors() * eigs.asDiagonal() * solver.eigenvectors().adjoint();
      block = (block + block.adjoint()) / 2.0;
    }
    F.total += block;
    F.blocks.push_back(std::move(block));
  }
  return F;
}

}  // namespace momcert::testing

#endif
