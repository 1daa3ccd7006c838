#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "momcert/rkhs.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace momcert;
using namespace momcert::testing;

namespace {

TruncatedSequence real_seq(std::vector<double> values) {
  std::unordered_map<MultiIndex, double, MultiIndexHash> map;
  for (std::size_t i = 0; i < values.size(); ++i)
    map.emplace(MultiIndex{static_cast<std::uint32_t>(i)}, values[i]);
  return TruncatedSequence(1, static_cast<unsigned>(values.size() - 1), std::move(map));
}

CoefficientVector xi_from(std::size_t dim, std::vector<std::pair<MultiIndex, Scalar>> terms) {
  std::map<MultiIndex, Scalar, GradedLexLess> coeffs;
  for (auto& [idx, value] : terms) coeffs.emplace(idx, value);
  return CoefficientVector(dim, std::move(coeffs));
}

}  // namespace

TEST_CASE("gram matrices from spec examples") {
  SUBCASE("all-ones sequence at order 1") {
    const GramMatrix g = gram_matrix(real_seq({1, 1, 1}), 1);
    REQUIRE(g.entries.rows() == 2);
    for (Eigen::Index i = 0; i < 2; ++i)
      for (Eigen::Index j = 0; j < 2; ++j) CHECK(g.entries(i, j) == Scalar{1, 0});
  }
  SUBCASE("half deltas give the identity at order 1") {
    const GramMatrix g = gram_matrix(real_seq({1, 0, 1}), 1);
    CHECK(g.entries(0, 0) == Scalar{1, 0});
    CHECK(g.entries(0, 1) == Scalar{0, 0});
    CHECK(g.entries(1, 0) == Scalar{0, 0});
    CHECK(g.entries(1, 1) == Scalar{1, 0});
  }
  SUBCASE("order 0 is the 1x1 matrix [a_0]") {
    const GramMatrix g = gram_matrix(real_seq({7, 0}), 0);
    REQUIRE(g.entries.rows() == 1);
    CHECK(g.entries(0, 0) == Scalar{7, 0});
  }
  SUBCASE("degree budget") {
    CHECK_THROWS_AS(gram_matrix(real_seq({1, 0, 1}), 2), DegreeBudgetError);
  }
}

TEST_CASE("positive definiteness verdicts") {
  SUBCASE("all-ones passes (rank one)") {
    const PsdReport r = check_positive_definite(real_seq({1, 1, 1, 1, 1}), 2);
    CHECK(r.pass);
    CHECK(std::abs(r.min_eigenvalue) <= 1e-12);
  }
  SUBCASE("(1, 0, -1) fails with eigenvalues {1, -1}") {
    const PsdReport r = check_positive_definite(real_seq({1, 0, -1}), 1);
    CHECK_FALSE(r.pass);
    CHECK(r.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.spectral_norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("zero sequence passes") {
    CHECK(check_positive_definite(real_seq({0, 0, 0}), 1).pass);
  }
  SUBCASE("atomic moments pass at every feasible order") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t d = 1 + trial % 3;
      const TruncatedSequence seq = moments_of(random_measure(rng, d, Kind::real, 5), 6);
      for (unsigned k = 0; k <= 3; ++k) CHECK(check_positive_definite(seq, k).pass);
    }
  }
  SUBCASE("complex pair matrix is PSD for complex moments") {
    Rng rng(29);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 1 + trial % 2;
      const TruncatedSequence seq = moments_of(random_measure(rng, d, Kind::complex, 4), 2);
      const PsdReport r = check_positive_definite(seq, 1);
      CHECK(r.pass);
      // Independent probe: sampled quadratic forms stay nonnegative.
      const GramMatrix g = gram_matrix(seq, 1);
      std::vector<std::vector<Scalar>> matrix(
          static_cast<std::size_t>(g.entries.rows()),
          std::vector<Scalar>(static_cast<std::size_t>(g.entries.cols())));
      for (Eigen::Index i = 0; i < g.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < g.entries.cols(); ++j)
          matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.entries(i, j);
      std::vector<std::vector<Scalar>> probes;
      for (int p = 0; p < 25; ++p) {
        std::vector<Scalar> probe(matrix.size());
        for (auto& v : probe) v = Scalar{uniform(rng, -1, 1), uniform(rng, -1, 1)};
        probes.push_back(std::move(probe));
      }
      CHECK(oracle_min_form(matrix, probes) >= -1e-10);
    }
  }
}

TEST_CASE("seminorm") {
  const TruncatedSequence ones = real_seq({1, 1, 1, 1, 1});
  SUBCASE("spec values on the all-ones sequence") {
    CHECK(seminorm(ones, xi_from(1, {{MultiIndex{0}, {1, 0}}, {MultiIndex{1}, {1, 0}}})) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(seminorm(ones, xi_from(1, {{MultiIndex{0}, {1, 0}}, {MultiIndex{1}, {-1, 0}}})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(seminorm(ones, CoefficientVector::zero(1)) == 0.0);
  }
  SUBCASE("non-PSD input is a positivity violation") {
    CHECK_THROWS_AS(
        seminorm(real_seq({1, 0, -1}), xi_from(1, {{MultiIndex{1}, {1, 0}}})),
        PositivityError);
  }
  SUBCASE("seminorm squared equals localize at zero") {
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t d = 1 + trial % 3;
      const TruncatedSequence seq = moments_of(random_measure(rng, d, Kind::real, 5), 6);
      const CoefficientVector xi = random_xi(rng, d, 2);
      const double p = seminorm(seq, xi);
      const double localized0 = localize(seq, xi).at(MultiIndex::zero(d));
      CHECK(p * p == doctest::Approx(localized0).epsilon(1e-10));
    }
  }
  SUBCASE("complex kind: seminorm squared equals c^xi_{0,0}") {
    Rng rng(37);
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t d = 1 + trial % 2;
      const TruncatedSequence seq = moments_of(random_measure(rng, d, Kind::complex, 4), 3);
      const CoefficientVector xi = random_xi(rng, d, 1);
      const double p = seminorm(seq, xi);
      const MultiIndex zero = MultiIndex::zero(d);
      const Scalar localized0 = localize(seq, xi).at(zero, zero);
      CHECK(p * p == doctest::Approx(localized0.real()).epsilon(1e-10));
      CHECK(std::abs(localized0.imag()) <= 1e-10 * std::max(1.0, localized0.real()));
    }
  }
}

TEST_CASE("parallelogram law of the seminorm") {
  Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const TruncatedSequence seq = moments_of(random_measure(rng, d, Kind::real, 5), 8);
    const CoefficientVector xi = random_xi(rng, d, 2);
    const CoefficientVector eta = random_xi(rng, d, 2);
    const double sum = seminorm(seq, xi + eta);
    const double diff = seminorm(seq, xi - eta);
    const double px = seminorm(seq, xi);
    const double pe = seminorm(seq, eta);
    const double defect = sum * sum + diff * diff - 2 * px * px - 2 * pe * pe;
    const double scale =
        std::max({1.0, sum * sum, diff * diff, 2 * px * px, 2 * pe * pe});
    CHECK(std::abs(defect) <= 1e-10 * scale);
  }
}

TEST_CASE("localization-Gram identity: Eq-(1)-style double route") {
  Rng rng(43);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const TruncatedSequence seq = moments_of(random_measure(rng, d, Kind::real, 5), 8);
    const CoefficientVector xi = random_xi(rng, d, 2);
    const TruncatedSequence localized = localize(seq, xi);
    // Budget for both routes: |m|, |n| plus deg xi each within max_degree.
    const unsigned half = (seq.max_degree() - 2 * xi.degree()) / 2;
    for (const MultiIndex& m : indices_up_to(d, half)) {
      for (const MultiIndex& n : indices_up_to(d, half)) {
        Scalar gram_route{0.0, 0.0};
        for (const auto& [k, ck] : xi.coeffs())
          for (const auto& [l, cl] : xi.coeffs())
            gram_route += seq.at(((m + k) + n) + l) * ck * std::conj(cl);
        const double localized_route = localized.at(m + n);
        CHECK(std::abs(gram_route - Scalar{localized_route, 0.0}) <=
              1e-10 * std::max(1.0, std::abs(localized_route)));
      }
    }
  }
}

TEST_CASE("null space and quotient") {
  SUBCASE("all-ones sequence has quotient dimension 1 and (1,-1,0) in Delta") {
    const QuotientBasis q = null_space(real_seq({1, 1, 1, 1, 1}), 2);
    CHECK(q.rank() == 1);
    CHECK(q.null_basis.size() == 2);
    const CoefficientVector delta =
        xi_from(1, {{MultiIndex{0}, {1, 0}}, {MultiIndex{1}, {-1, 0}}});
    // p(delta) = 0: the vector lies in the kernel of the form.
    const Eigen::VectorXcd coords = coefficient_coordinates(delta, q.gram.index_list);
    CHECK(std::abs(gram_form(q.gram.entries, coords, coords)) <= 1e-12);
    // Every null-basis vector has seminorm zero.
    for (const CoefficientVector& nb : q.null_basis) {
      const Eigen::VectorXcd c = coefficient_coordinates(nb, q.gram.index_list);
      CHECK(std::abs(gram_form(q.gram.entries, c, c)) <= 1e-12);
    }
  }
  SUBCASE("identity gram has trivial null space") {
    const QuotientBasis q = null_space(real_seq({1, 0, 1}), 1);
    CHECK(q.rank() == 2);
    CHECK(q.null_basis.empty());
  }
  SUBCASE("zero sequence quotient has dimension 0") {
    const QuotientBasis q = null_space(real_seq({0, 0, 0}), 1);
    CHECK(q.rank() == 0);
    CHECK(q.null_basis.size() == 2);
  }
  SUBCASE("coordinate map factorizes the gram") {
    Rng rng(47);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t d = 1 + trial % 2;
      const std::size_t atoms = pick(rng, 1, 4);
      const TruncatedSequence seq =
          moments_of(random_measure(rng, d, Kind::real, atoms), 6);
      const QuotientBasis q = null_space(seq, 3);
      CHECK(q.rank() <= atoms);  // rank bounded by the atom count
      const Eigen::MatrixXcd residual =
          q.gram.entries - q.coordinate_map * q.coordinate_map.adjoint();
      CHECK(residual.cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, q.eigenvalues.front()));
    }
  }
}

TEST_CASE("shift forms") {
  SUBCASE("all-ones sequence has zero symmetry defect") {
    const ShiftFormReport r = shift_forms(real_seq({1, 1, 1, 1, 1}), 1, 1);
    CHECK(r.symmetry_defect == 0.0);
    CHECK(r.max_commutator_defect == 0.0);
  }
  SUBCASE("two-dimensional atomic measure commutes") {
    const AtomicMeasure mu(2, Kind::real, {{{Scalar{1, 0}, Scalar{2, 0}}, 1.0}});
    const ShiftFormReport r = shift_forms(moments_of(mu, 4), 1, 1);
    CHECK(r.symmetry_defect == 0.0);
    CHECK(r.max_commutator_defect <= 1e-12);
  }
  SUBCASE("zero sequence has zero defects") {
    const ShiftFormReport r = shift_forms(real_seq({0, 0, 0, 0, 0}), 1, 1);
    CHECK(r.symmetry_defect == 0.0);
    CHECK(r.max_commutator_defect == 0.0);
  }
  SUBCASE("budget and kind guards") {
    CHECK_THROWS_AS(shift_forms(real_seq({1, 0, 1}), 1, 1), DegreeBudgetError);
    CHECK_THROWS_AS(shift_forms(real_seq({1, 0, 1, 0, 1}), 1, 2), CoordinateRangeError);
    Rng rng(53);
    const TruncatedSequence cseq = moments_of(random_measure(rng, 1, Kind::complex, 2), 4);
    CHECK_THROWS_AS(shift_forms(cseq, 1, 1), KindError);
  }
}
