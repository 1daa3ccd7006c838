#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "momcert/dilation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace momcert;
using namespace momcert::testing;

namespace {

AtomicMeasure half_deltas() {
  return AtomicMeasure(1, Kind::real, {{{Scalar{-1, 0}}, 0.5}, {{Scalar{1, 0}}, 0.5}});
}

std::vector<CoefficientVector> unit_basis(std::size_t dim, unsigned order) {
  std::vector<CoefficientVector> basis;
  for (const MultiIndex& n : indices_up_to(dim, order))
    basis.push_back(CoefficientVector::unit(n));
  return basis;
}

SemispectralMeasure two_point_halves() {
  SemispectralMeasure F;
  F.dim = 1;
  F.kind = Kind::real;
  F.points = {{Scalar{1, 0}}, {Scalar{-1, 0}}};
  F.blocks = {Eigen::MatrixXcd::Constant(1, 1, Scalar{0.5, 0}),
              Eigen::MatrixXcd::Constant(1, 1, Scalar{0.5, 0})};
  F.total = Eigen::MatrixXcd::Constant(1, 1, Scalar{1.0, 0});
  return F;
}

}  // namespace

TEST_CASE("semispectral measure from the half-delta certificate family") {
  const AtomicMeasure mu = half_deltas();
  const TruncatedSequence seq = moments_of(mu, 4);
  const auto basis = unit_basis(1, 1);
  const auto family = generate_certificate(mu, audit_closure(basis));
  const QuotientBasis quotient = null_space(seq, 1);

  const SemispectralMeasure F = semispectral_from_family(family, basis, quotient);
  REQUIRE(F.points.size() == 2);
  REQUIRE(F.blocks.size() == 2);
  // Blocks (1/2) [[1, +-1], [+-1, 1]] at x = +-1; atoms sorted by coordinate.
  const Eigen::MatrixXcd& minus = F.blocks[0];
  const Eigen::MatrixXcd& plus = F.blocks[1];
  CHECK(F.points[0][0] == Scalar{-1, 0});
  CHECK(std::abs(minus(0, 0) - Scalar{0.5, 0}) <= 1e-14);
  CHECK(std::abs(minus(0, 1) - Scalar{-0.5, 0}) <= 1e-14);
  CHECK(std::abs(plus(0, 1) - Scalar{0.5, 0}) <= 1e-14);
  // Total equals the order-1 gram = identity.
  CHECK((F.total - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-14);
}

TEST_CASE("single-atom family gives the one-block measure") {
  const AtomicMeasure mu(1, Kind::real, {{{Scalar{1, 0}}, 1.0}});
  const auto basis = unit_basis(1, 0);
  const auto family = generate_certificate(mu, audit_closure(basis));
  const SemispectralMeasure F =
      semispectral_from_family(family, basis, null_space(moments_of(mu, 2), 0));
  REQUIRE(F.blocks.size() == 1);
  CHECK(std::abs(F.blocks[0](0, 0) - Scalar{1, 0}) <= 1e-14);
}

TEST_CASE("a basis vector in the null space contributes a zero row") {
  const AtomicMeasure mu(1, Kind::real, {{{Scalar{1, 0}}, 1.0}});  // Delta = <1 - x>
  const TruncatedSequence seq = moments_of(mu, 4);
  const auto basis = unit_basis(1, 1);
  const auto family = generate_certificate(mu, audit_closure(basis));
  const SemispectralMeasure F = semispectral_from_family(family, basis, null_space(seq, 1));
  // p_{1-x} vanishes on the support, so the polarized row of xi = 1-x is 0:
  // here both unit vectors give identical rows/columns.
  for (const auto& block : F.blocks) {
    CHECK(std::abs(block(0, 0) - block(0, 1)) <= 1e-14);
    CHECK(std::abs(block(0, 0) - block(1, 1)) <= 1e-14);
  }
}

TEST_CASE("tampered family blocks fail PSD with the offending atom") {
  const AtomicMeasure mu = half_deltas();
  const auto basis = unit_basis(1, 1);
  MeasureFamily family = generate_certificate(mu, audit_closure(basis));
  // Corrupt one polarization input so a block picks up a negative eigenvalue:
  // inflating mu_{1+x} drives the off-diagonal past the diagonal.
  const CoefficientVector one = basis[0], x = basis[1];
  family.insert(one + x, family.find(one + x)->scaled(10.0));
  CHECK_THROWS_AS(
      semispectral_from_family(family, basis, null_space(moments_of(mu, 4), 1)),
      PositivityError);
}

TEST_CASE("naimark dilation of explicit semispectral measures") {
  SUBCASE("two half blocks: V = (1/sqrt2, 1/sqrt2), E_j coordinate projections") {
    const SpectralDilation dilation = naimark_dilate(two_point_halves());
    CHECK(dilation.space_dim == 2);
    CHECK(dilation.V.rows() == 2);
    CHECK(dilation.V.cols() == 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(std::abs(dilation.V(0, 0)) - inv_sqrt2) <= 1e-14);
    CHECK(std::abs(std::abs(dilation.V(1, 0)) - inv_sqrt2) <= 1e-14);
    for (std::size_t j = 0; j < 2; ++j) {
      const Eigen::MatrixXcd vev =
          dilation.V.adjoint() * dilation.projection(j) * dilation.V;
      CHECK(std::abs(vev(0, 0) - Scalar{0.5, 0}) <= 1e-14);
    }
  }
  SUBCASE("a single identity block is already spectral") {
    SemispectralMeasure F;
    F.dim = 1;
    F.kind = Kind::real;
    F.points = {{Scalar{3, 0}}};
    F.blocks = {Eigen::MatrixXcd::Identity(2, 2)};
    F.total = Eigen::MatrixXcd::Identity(2, 2);
    const SpectralDilation dilation = naimark_dilate(F);
    CHECK(dilation.space_dim == 2);
    CHECK((dilation.V.adjoint() * dilation.V - F.total).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("projection-valued blocks dilate to rank-1 coordinate projections") {
    SemispectralMeasure F;
    F.dim = 1;
    F.kind = Kind::real;
    F.points = {{Scalar{0, 0}}, {Scalar{1, 0}}};
    Eigen::MatrixXcd d1 = Eigen::MatrixXcd::Zero(2, 2), d2 = Eigen::MatrixXcd::Zero(2, 2);
    d1(0, 0) = 1.0;
    d2(1, 1) = 1.0;
    F.blocks = {d1, d2};
    F.total = Eigen::MatrixXcd::Identity(2, 2);
    const SpectralDilation dilation = naimark_dilate(F);
    CHECK(dilation.space_dim == 2);
    for (std::size_t j = 0; j < 2; ++j) {
      const Eigen::MatrixXcd vev =
          dilation.V.adjoint() * dilation.projection(j) * dilation.V;
      CHECK((vev - F.blocks[j]).cwiseAbs().maxCoeff() <= 1e-14);
    }
  }
  SUBCASE("non-PSD blocks are rejected") {
    SemispectralMeasure F;
    F.dim = 1;
    F.kind = Kind::real;
    F.points = {{Scalar{0, 0}}};
    F.blocks = {Eigen::MatrixXcd::Constant(1, 1, Scalar{-0.5, 0})};
    F.total = F.blocks[0];
    CHECK_THROWS_AS(naimark_dilate(F), PositivityError);
  }
}

TEST_CASE("random PSD block families dilate within tolerance") {
  Rng rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    const SemispectralMeasure F = random_psd_blocks(rng, pick(rng, 1, 6), pick(rng, 1, 8));
    const SpectralDilation dilation = naimark_dilate(F, 1e-12);
    const double total_norm =
        std::max(1.0, F.total.cwiseAbs().maxCoeff());
    for (std::size_t j = 0; j < F.blocks.size(); ++j) {
      const Eigen::MatrixXcd vev =
          dilation.V.adjoint() * dilation.projection(j) * dilation.V;
      CHECK((vev - F.blocks[j]).cwiseAbs().maxCoeff() <= 1e-10 * total_norm);
    }
    // Projection algebra: idempotent, Hermitian, mutually orthogonal.
    for (std::size_t j = 0; j < F.blocks.size(); ++j) {
      const Eigen::MatrixXcd ej = dilation.projection(j);
      CHECK((ej * ej - ej).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((ej - ej.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
      for (std::size_t k = j + 1; k < F.blocks.size(); ++k)
        CHECK((ej * dilation.projection(k)).cwiseAbs().maxCoeff() <= 1e-12);
    }
    // V*V = total up to the clipped directions.
    CHECK((dilation.V.adjoint() * dilation.V - F.total).cwiseAbs().maxCoeff() <=
          1e-10 * total_norm);
  }
}

TEST_CASE("spectral integrals") {
  const SemispectralMeasure F = two_point_halves();
  const SpectralDilation dilation = naimark_dilate(F);
  const Eigen::VectorXcd e0 = Eigen::VectorXcd::Constant(1, Scalar{1, 0});

  SUBCASE("total mass and first moment through the base measure") {
    const PointFunction one = [](const Point&) { return Scalar{1, 0}; };
    const PointFunction coord = [](const Point& p) { return p[0]; };
    const PointFunction zero_fn = [](const Point&) { return Scalar{0, 0}; };
    CHECK(std::abs(spectral_integral(F, one, e0, e0) - Scalar{1, 0}) <= 1e-14);
    CHECK(std::abs(spectral_integral(F, coord, e0, e0)) <= 1e-14);
    CHECK(std::abs(spectral_integral(F, zero_fn, e0, e0)) <= 1e-14);
  }
  SUBCASE("multiplicativity holds for the projection-valued route") {
    const PointFunction coord = [](const Point& p) { return p[0]; };
    const PointFunction coord_sq = [](const Point& p) { return p[0] * p[0]; };
    const Eigen::VectorXcd v = dilation.V.col(0);
    const Scalar direct = spectral_integral(dilation, F.points, coord_sq, v, v);
    const Eigen::MatrixXcd B = dilated_multiplication(dilation, F.points, 1);
    const Scalar product = (v.adjoint() * B * B * v)(0, 0);
    CHECK(std::abs(direct - product) <= 1e-10);
  }
  SUBCASE("multiplicativity fails for the semispectral route on this example") {
    // int x^2 dF = 1 but (int x dF)^2 = 0: the defect is genuinely 1.
    const PointFunction coord = [](const Point& p) { return p[0]; };
    const PointFunction coord_sq = [](const Point& p) { return p[0] * p[0]; };
    const Scalar direct = spectral_integral(F, coord_sq, e0, e0);
    const Scalar first = spectral_integral(F, coord, e0, e0);
    const double defect = std::abs(direct - first * first);
    CHECK(defect >= 0.5);
    CHECK(direct == Scalar{1, 0});
  }
}

TEST_CASE("dilated multiplication operators") {
  SUBCASE("half-delta example: B = diag(+1, -1) pattern, compression a_1 = 0") {
    const SemispectralMeasure F = two_point_halves();
    const SpectralDilation dilation = naimark_dilate(F);
    const Eigen::MatrixXcd B = dilated_multiplication(dilation, F.points, 1);
    CHECK((B - B.adjoint()).cwiseAbs().maxCoeff() <= 1e-14);
    const Eigen::VectorXcd v = dilation.V.col(0);
    CHECK(std::abs((v.adjoint() * B * v)(0, 0)) <= 1e-14);  // <B V e0, V e0> = a_1 = 0
  }
  SUBCASE("single atom at c gives c times the identity") {
    SemispectralMeasure F;
    F.dim = 1;
    F.kind = Kind::real;
    F.points = {{Scalar{2.5, 0}}};
    F.blocks = {Eigen::MatrixXcd::Identity(2, 2)};
    F.total = Eigen::MatrixXcd::Identity(2, 2);
    const SpectralDilation dilation = naimark_dilate(F);
    const Eigen::MatrixXcd B = dilated_multiplication(dilation, F.points, 1);
    CHECK((B - Scalar{2.5, 0} * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() <=
          1e-14);
  }
  SUBCASE("measure at the origin multiplies to zero") {
    SemispectralMeasure F;
    F.dim = 1;
    F.kind = Kind::real;
    F.points = {{Scalar{0, 0}}};
    F.blocks = {Eigen::MatrixXcd::Identity(1, 1)};
    F.total = Eigen::MatrixXcd::Identity(1, 1);
    const SpectralDilation dilation = naimark_dilate(F);
    CHECK(dilated_multiplication(dilation, F.points, 1).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("end-to-end pipelines reconstruct the moments") {
  SUBCASE("half deltas up to degree 4: (1,0,1,0,1)") {
    const AtomicMeasure mu = half_deltas();
    const TruncatedSequence seq = moments_of(mu, 4);
    const auto family = generate_certificate(mu, audit_closure(unit_basis(1, 1)));
    const DilationPipelineResult result = dilation_pipeline(family, seq, 1u);
    CHECK(result.max_reconstruction_residual <= 1e-12);
    CHECK(result.reconstructed.at(MultiIndex{0}) == doctest::Approx(1.0));
    CHECK(result.reconstructed.at(MultiIndex{1}) == doctest::Approx(0.0));
    CHECK(result.reconstructed.at(MultiIndex{4}) == doctest::Approx(1.0));
  }
  SUBCASE("single delta reconstructs the constant sequence") {
    const AtomicMeasure mu(1, Kind::real, {{{Scalar{1, 0}}, 1.0}});
    const auto family = generate_certificate(mu, audit_closure(unit_basis(1, 1)));
    const DilationPipelineResult result =
        dilation_pipeline(family, moments_of(mu, 4), 1u);
    CHECK(result.max_reconstruction_residual <= 1e-12);
    for (const MultiIndex& n : result.reconstructed.index_list())
      CHECK(result.reconstructed.at(n) == doctest::Approx(1.0));
  }
  SUBCASE("scaled measure 3 delta_1 reconstructs a_n = 3") {
    const AtomicMeasure mu(1, Kind::real, {{{Scalar{1, 0}}, 3.0}});
    const auto family = generate_certificate(mu, audit_closure(unit_basis(1, 1)));
    const DilationPipelineResult result =
        dilation_pipeline(family, moments_of(mu, 4), 1u);
    for (const MultiIndex& n : result.reconstructed.index_list())
      CHECK(result.reconstructed.at(n) == doctest::Approx(3.0));
  }
  SUBCASE("random real pipelines, d <= 2, degree <= 6") {
    Rng rng(109);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t d = 1 + trial % 2;
      const AtomicMeasure mu = random_measure(rng, d, Kind::real, 5, 0.05);
      const TruncatedSequence seq = moments_of(mu, 6);
      const unsigned order = 2;
      const auto family = generate_certificate(mu, audit_closure(unit_basis(d, order)));
      const DilationPipelineResult result = dilation_pipeline(family, seq, order);
      CHECK(result.max_reconstruction_residual <= 1e-9);
      CHECK(result.max_dilation_defect <= 1e-10);
      CHECK(result.max_compression_defect <= 1e-9);
    }
  }
  SUBCASE("complex pipeline spot check") {
    Rng rng(113);
    const AtomicMeasure mu = random_measure(rng, 1, Kind::complex, 3, 0.05);
    const TruncatedSequence seq = moments_of(mu, 2);
    const auto family = generate_certificate(mu, audit_closure(unit_basis(1, 1)));
    const DilationPipelineResult result = dilation_pipeline(family, seq, 1u);
    CHECK(result.max_reconstruction_residual <= 1e-9);
    CHECK(result.max_dilation_defect <= 1e-10);
  }
}
