#include "momcert/weaklimits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace momcert {

MeasureSequence::MeasureSequence(std::vector<AtomicMeasure> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) throw ValidationError("measure sequence needs at least one term");
  for (const AtomicMeasure& mu : terms_) {
    if (std::abs(mu.total_mass() - 1.0) > 1e-12)
      throw ValidationError("measure sequence terms must be probability measures (mass " +
                            std::to_string(mu.total_mass()) + ")");
  }
}

Scalar integrate(const AtomicMeasure& mu, const AtomFunction& phi) {
  Scalar acc{0.0, 0.0};
  for (const Atom& a : mu.atoms()) acc += a.weight * phi(a.point);
  return acc;
}

namespace {

// Finite-prefix weak-convergence proxy: residuals against the limit must end
// below tol and be nonincreasing (within tol) over the tail.
ConvergenceProxy convergence_proxy(const MeasureSequence& seq, const AtomicMeasure& limit,
                                   const TestFunction& psi, double tol) {
  const Scalar target = integrate(limit, psi.eval);
  std::vector<double> residuals;
  residuals.reserve(seq.size());
  for (const AtomicMeasure& mu : seq.terms())
    residuals.push_back(std::abs(integrate(mu, psi.eval) - target));
  bool tail_ok = residuals.back() <= tol;
  const std::size_t tail_start = seq.size() / 2;
  for (std::size_t k = tail_start; k + 1 < residuals.size(); ++k) {
    if (residuals[k + 1] > residuals[k] + tol) {
      tail_ok = false;
      break;
    }
  }
  return ConvergenceProxy{psi.name, residuals.back(), tail_ok};
}

double real_part_checked(Scalar v, const char* what) {
  if (std::abs(v.imag()) > kRealResidueTol * std::max(1.0, std::abs(v.real())))
    throw KindError(std::string(what) + " must be real-valued");
  return v.real();
}

}  // namespace

Part1Report audit_part1(const MeasureSequence& seq, const AtomicMeasure& limit,
                        const AtomFunction& phi_nonneg, double c,
                        const std::vector<TestFunction>& test_functions, double tol) {
  // Precondition: phi >= 0 wherever it is evaluated.
  auto check_nonneg = [&](const AtomicMeasure& mu) {
    for (const Atom& a : mu.atoms()) {
      const double v = real_part_checked(phi_nonneg(a.point), "part-1 phi");
      if (v < 0.0)
        throw PositivityError("part-1 phi is negative (" + std::to_string(v) +
                              ") at an atom");
    }
  };
  for (const AtomicMeasure& mu : seq.terms()) check_nonneg(mu);
  check_nonneg(limit);

  Part1Report report;
  for (const TestFunction& psi : test_functions) {
    report.weak_convergence.push_back(convergence_proxy(seq, limit, psi, tol));
    report.a_holds = report.a_holds && report.weak_convergence.back().converged;
  }
  for (const AtomicMeasure& mu : seq.terms()) {
    const double v = real_part_checked(integrate(mu, phi_nonneg), "part-1 integral");
    report.max_term_integral = std::max(report.max_term_integral, v);
    if (v > c + tol) report.b_holds = false;
  }
  report.limit_integral = real_part_checked(integrate(limit, phi_nonneg), "part-1 integral");
  report.c_holds = report.limit_integral <= c + tol;
  report.falsification = report.a_holds && report.b_holds && !report.c_holds;
  return report;
}

Part2Report audit_part2(const MeasureSequence& seq, const AtomicMeasure& limit,
                        const AtomFunction& phi, Scalar a, double c,
                        const std::vector<TestFunction>& test_functions, double tol) {
  Part2Report report;
  for (const TestFunction& psi : test_functions) {
    report.weak_convergence.push_back(convergence_proxy(seq, limit, psi, tol));
    report.a_holds = report.a_holds && report.weak_convergence.back().converged;
  }

  // (b): last-terms Cauchy proxy for int phi dmu_k -> a.
  std::vector<double> to_a;
  to_a.reserve(seq.size());
  for (const AtomicMeasure& mu : seq.terms())
    to_a.push_back(std::abs(integrate(mu, phi) - a));
  report.b_holds = to_a.back() <= tol;
  for (std::size_t k = seq.size() / 2; k + 1 < to_a.size() && report.b_holds; ++k)
    if (to_a[k + 1] > to_a[k] + tol) report.b_holds = false;

  // (c): uniform square bound.
  for (const AtomicMeasure& mu : seq.terms()) {
    const AtomFunction phi_sq = [&phi](const Point& p) {
      return Scalar{std::norm(phi(p)), 0.0};
    };
    const double v = real_part_checked(integrate(mu, phi_sq), "part-2 square integral");
    if (v > c + tol) {
      report.c_holds = false;
      break;
    }
  }

  const Scalar limit_integral = integrate(limit, phi);
  report.limit_integral_re = limit_integral.real();
  report.limit_integral_im = limit_integral.imag();
  report.d_holds = std::abs(limit_integral - a) <= tol;
  report.falsification =
      report.a_holds && report.b_holds && report.c_holds && !report.d_holds;
  return report;
}

// ---------------------------------------------------------------------------
// Bundled suites (d = 1, real points).

namespace {

AtomicMeasure delta(double x) {
  return AtomicMeasure(1, Kind::real, {{{Scalar{x, 0.0}}, 1.0}});
}

AtomicMeasure two_atoms(double x0, double w0, double x1, double w1) {
  return AtomicMeasure(1, Kind::real, {{{Scalar{x0, 0.0}}, w0}, {{Scalar{x1, 0.0}}, w1}});
}

const double kInf = std::numeric_limits<double>::infinity();

std::vector<TestFunction> compact_test_functions() {
  return {
      {"hat(1-|x|)", 1.0,
       [](const Point& p) {
         return Scalar{std::max(0.0, 1.0 - std::abs(p[0].real())), 0.0};
       }},
      {"bump exp(-x^2) on |x|<2", 2.0,
       [](const Point& p) {
         const double x = p[0].real();
         return Scalar{std::abs(x) < 2.0 ? std::exp(-x * x) : 0.0, 0.0};
       }},
  };
}

std::vector<TestFunction> bounded_test_functions() {
  auto fns = compact_test_functions();
  fns.push_back({"1/(1+x^2)", kInf, [](const Point& p) {
                   const double x = p[0].real();
                   return Scalar{1.0 / (1.0 + x * x), 0.0};
                 }});
  return fns;
}

AtomFunction coordinate_squared() {
  return [](const Point& p) { return Scalar{p[0].real() * p[0].real(), 0.0}; };
}

AtomFunction coordinate() {
  return [](const Point& p) { return p[0]; };
}

}  // namespace

std::vector<Part1Suite> bundled_part1_suites(std::size_t terms) {
  std::vector<Part1Suite> suites;

  {
    // mu_k = delta_{1/k} -> delta_0; phi = x^2 stays within c = 1.
    std::vector<AtomicMeasure> seq;
    seq.reserve(terms);
    for (std::size_t k = 1; k <= terms; ++k) seq.push_back(delta(1.0 / static_cast<double>(k)));
    suites.push_back({"shrinking-delta", MeasureSequence(std::move(seq)), delta(0.0),
                      coordinate_squared(), 1.0, compact_test_functions(), true, true, true});
  }
  {
    // Escaping mass: mu_k = (1-1/k) delta_0 + (1/k) delta_k. The uniform
    // bound (b) fails (int phi dmu_k = k); nothing is asserted about (c),
    // which here happens to hold at the limit delta_0.
    std::vector<AtomicMeasure> seq;
    seq.reserve(terms);
    for (std::size_t k = 1; k <= terms; ++k) {
      const double kd = static_cast<double>(k);
      seq.push_back(two_atoms(0.0, 1.0 - 1.0 / kd, kd, 1.0 / kd));
    }
    suites.push_back({"escaping-mass", MeasureSequence(std::move(seq)), delta(0.0),
                      coordinate_squared(), 1.0, compact_test_functions(), true, false, true});
  }
  {
    // Stationary sequence: the conclusion meets the bound with equality.
    std::vector<AtomicMeasure> seq;
    seq.reserve(terms);
    const AtomicMeasure fixed = two_atoms(-1.0, 0.5, 1.0, 0.5);
    for (std::size_t k = 1; k <= terms; ++k) seq.push_back(fixed);
    suites.push_back({"stationary", MeasureSequence(std::move(seq)), fixed,
                      coordinate_squared(), 1.0, compact_test_functions(), true, true, true});
  }
  return suites;
}

std::vector<Part2Suite> bundled_part2_suites(std::size_t terms) {
  std::vector<Part2Suite> suites;

  {
    // mu_k = (1-1/k) delta_0 + (1/k) delta_{sqrt k}: int phi = 1/sqrt(k) -> 0
    // with int |phi|^2 = 1 uniformly; the limit integral agrees.
    std::vector<AtomicMeasure> seq;
    seq.reserve(terms);
    for (std::size_t k = 1; k <= terms; ++k) {
      const double kd = static_cast<double>(k);
      seq.push_back(two_atoms(0.0, 1.0 - 1.0 / kd, std::sqrt(kd), 1.0 / kd));
    }
    suites.push_back({"uniform-square-bound", MeasureSequence(std::move(seq)), delta(0.0),
                      coordinate(), Scalar{0.0, 0.0}, 1.0, bounded_test_functions(), true,
                      true, true, true});
  }
  {
    // Necessity of the square bound: int phi dmu_k = 1 for every k, but
    // int |phi|^2 dmu_k = k is unbounded, and indeed int phi d(delta_0) = 0
    // differs from a = 1: hypothesis (c) and conclusion (d) fail together.
    std::vector<AtomicMeasure> seq;
    seq.reserve(terms);
    for (std::size_t k = 1; k <= terms; ++k) {
      const double kd = static_cast<double>(k);
      seq.push_back(two_atoms(0.0, 1.0 - 1.0 / kd, kd, 1.0 / kd));
    }
    suites.push_back({"square-bound-necessity", MeasureSequence(std::move(seq)), delta(0.0),
                      coordinate(), Scalar{1.0, 0.0}, 1.0, bounded_test_functions(), true,
                      true, false, false});
  }
  {
    // Constant phi: (d) holds trivially with a equal to the constant.
    std::vector<AtomicMeasure> seq;
    seq.reserve(terms);
    for (std::size_t k = 1; k <= terms; ++k) seq.push_back(delta(1.0 / static_cast<double>(k)));
    suites.push_back({"constant-phi", MeasureSequence(std::move(seq)), delta(0.0),
                      [](const Point&) { return Scalar{2.0, 0.0}; }, Scalar{2.0, 0.0}, 4.0,
                      bounded_test_functions(), true, true, true, true});
  }
  return suites;
}

}  // namespace momcert
