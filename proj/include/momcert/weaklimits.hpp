#ifndef MOMCERT_WEAKLIMITS_HPP
#define MOMCERT_WEAKLIMITS_HPP

#include <functional>
#include <string>

#include "momcert/sequences.hpp"

namespace momcert {

// Scalar function evaluable at atoms; must be side-effect free.
using AtomFunction = std::function<Scalar(const Point&)>;

// Evaluable test function with its declared support radius (infinity marks a
// merely bounded function, mirroring C_b; finite radius mirrors C_c).
struct TestFunction {
  std::string name;
  double support_radius;  // +infinity for bounded-only
  AtomFunction eval;
};

// The first K terms of a sequence of probability measures.
class MeasureSequence {
 public:
  explicit MeasureSequence(std::vector<AtomicMeasure> terms);
  const std::vector<AtomicMeasure>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

 private:
  std::vector<AtomicMeasure> terms_;
};

// sum_j w_j phi(x_j).
Scalar integrate(const AtomicMeasure& mu, const AtomFunction& phi);

struct ConvergenceProxy {
  std::string function_name;
  double final_residual;
  bool converged;  // final residual below tol and a nonincreasing tail
};

struct Part1Report {
  std::vector<ConvergenceProxy> weak_convergence;  // (a), one per test function
  bool a_holds = true;
  bool b_holds = true;  // int phi dmu_k <= c for all terms
  bool c_holds = true;  // int phi d(limit) <= c
  double max_term_integral = 0.0;
  double limit_integral = 0.0;
  bool falsification = false;  // (a) and (b) but not (c): should never happen
};

// Lemma part <1>: nonnegative phi, compactly supported test functions,
// uniform bound c. phi < 0 at any atom is a precondition error.
Part1Report audit_part1(const MeasureSequence& seq, const AtomicMeasure& limit,
                        const AtomFunction& phi_nonneg, double c,
                        const std::vector<TestFunction>& test_functions,
                        double tol);

struct Part2Report {
  std::vector<ConvergenceProxy> weak_convergence;  // (a), bounded functions
  bool a_holds = true;
  bool b_holds = true;  // int phi dmu_k -> a (tail proxy)
  bool c_holds = true;  // int |phi|^2 dmu_k <= c uniformly
  bool d_holds = true;  // int phi d(limit) = a
  double limit_integral_re = 0.0;
  double limit_integral_im = 0.0;
  bool falsification = false;  // (a),(b),(c) but not (d)
};

// Lemma part <2>: int phi dmu_k -> a plus the uniform square bound forces
// int phi d(limit) = a.
Part2Report audit_part2(const MeasureSequence& seq, const AtomicMeasure& limit,
                        const AtomFunction& phi, Scalar a, double c,
                        const std::vector<TestFunction>& test_functions,
                        double tol);

// Bundled demonstration suites (three per Lemma part) with their documented
// expected check outcomes; the CLI exposes exactly these.
struct Part1Suite {
  std::string name;
  MeasureSequence sequence;
  AtomicMeasure limit;
  AtomFunction phi;
  double c;
  std::vector<TestFunction> test_functions;
  bool expect_a, expect_b, expect_c;
};

struct Part2Suite {
  std::string name;
  MeasureSequence sequence;
  AtomicMeasure limit;
  AtomFunction phi;
  Scalar a;
  double c;
  std::vector<TestFunction> test_functions;
  bool expect_a, expect_b, expect_c, expect_d;
};

std::vector<Part1Suite> bundled_part1_suites(std::size_t terms = 50000);
std::vector<Part2Suite> bundled_part2_suites(std::size_t terms = 50000);

// Tolerance matched to the 1/sqrt(k) convergence rate of the slowest suite.
inline constexpr double kBundledSuiteTol = 5e-3;

}  // namespace momcert

#endif
