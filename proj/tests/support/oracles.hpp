// Independent oracles for the test suites: straight brute-force summation,
// written against std::pow and explicit loops so they share no code path
// with the library implementations they check.

#ifndef MOMCERT_TESTS_ORACLES_HPP
#define MOMCERT_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "momcert/sequences.hpp"

namespace momcert::testing {

inline Scalar pow_point(const Point& x, const MultiIndex& n) {
  Scalar out{1.0, 0.0};
  for (std::size_t k = 0; k < x.size(); ++k)
    out *= std::pow(x[k], static_cast<double>(n[k]));
  return out;
}

// int x^n dmu by direct summation.
inline Scalar oracle_moment(const AtomicMeasure& mu, const MultiIndex& n) {
  Scalar acc{0.0, 0.0};
  for (const Atom& a : mu.atoms()) acc += Scalar{a.weight, 0.0} * pow_point(a.point, n);
  return acc;
}

// int z^m zbar^n dmu.
inline Scalar oracle_moment(const AtomicMeasure& mu, const MultiIndex& m,
                            const MultiIndex& n) {
  Scalar acc{0.0, 0.0};
  for (const Atom& a : mu.atoms()) {
    Point conj_point(a.point.size());
    for (std::size_t k = 0; k < a.point.size(); ++k) conj_point[k] = std::conj(a.point[k]);
    acc += Scalar{a.weight, 0.0} * pow_point(a.point, m) * pow_point(conj_point, n);
  }
  return acc;
}

// p_xi(x) by direct summation.
inline Scalar oracle_poly(const CoefficientVector& xi, const Point& x) {
  Scalar acc{0.0, 0.0};
  for (const auto& [k, ck] : xi.coeffs()) acc += ck * pow_point(x, k);
  return acc;
}

// a^xi_n = sum_{k,l} a_{n+k+l} xi_k conj(xi_l) straight off the definition.
inline double oracle_localize_real(const TruncatedSequence& seq,
                                   const CoefficientVector& xi, const MultiIndex& n) {
  Scalar acc{0.0, 0.0};
  for (const auto& [k, ck] : xi.coeffs())
    for (const auto& [l, cl] : xi.coeffs()) acc += seq.at((n + k) + l) * ck * std::conj(cl);
  return acc.real();
}

// c^xi_{m,n} = sum_{k,l} c_{m+k, n+l} xi_k conj(xi_l).
inline Scalar oracle_localize_complex(const TruncatedSequence& seq,
                                      const CoefficientVector& xi, const MultiIndex& m,
                                      const MultiIndex& n) {
  Scalar acc{0.0, 0.0};
  for (const auto& [k, ck] : xi.coeffs())
    for (const auto& [l, cl] : xi.coeffs()) acc += seq.at(m + k, n + l) * ck * std::conj(cl);
  return acc;
}

// Polarized weight p_xi(x) conj(p_eta(x)) w at one atom of the base measure.
inline Scalar oracle_polarized_weight(const CoefficientVector& xi,
                                      const CoefficientVector& eta, const Atom& atom) {
  return oracle_poly(xi, atom.point) * std::conj(oracle_poly(eta, atom.point)) *
         Scalar{atom.weight, 0.0};
}

// Quadratic-form probe: a PSD matrix must make every sampled form
// nonnegative; independent of any eigenvalue routine.
inline double oracle_min_form(const std::vector<std::vector<Scalar>>& matrix,
                              const std::vector<std::vector<Scalar>>& probes) {
  double min_value = 0.0;
  for (const auto& probe : probes) {
    Scalar form{0.0, 0.0};
    for (std::size_t i = 0; i < probe.size(); ++i)
      for (std::size_t j = 0; j < probe.size(); ++j)
        form += std::conj(probe[i]) * matrix[i][j] * probe[j];
    min_value = std::min(min_value, form.real());
  }
  return min_value;
}

}  // namespace momcert::testing

#endif
