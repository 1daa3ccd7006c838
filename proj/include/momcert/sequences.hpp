#ifndef MOMCERT_SEQUENCES_HPP
#define MOMCERT_SEQUENCES_HPP

#include <complex>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "momcert/multiindex.hpp"

namespace momcert {

// Finitely supported coefficient vector xi: MultiIndex -> complex, the
// coefficients of the polynomial p_xi. Canonical form stores no zeros;
// exact coefficient equality makes these usable as family keys.
class CoefficientVector {
 public:
  explicit CoefficientVector(std::size_t dim);
  CoefficientVector(std::size_t dim, std::map<MultiIndex, Scalar, GradedLexLess> coeffs);

  static CoefficientVector zero(std::size_t dim) { return CoefficientVector(dim); }
  // The unit vector with coefficient 1 at index n (n = 0 gives the constant 1).
  static CoefficientVector unit(const MultiIndex& n);

  std::size_t dim() const { return dim_; }
  unsigned degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::map<MultiIndex, Scalar, GradedLexLess>& coeffs() const { return coeffs_; }
  Scalar at(const MultiIndex& n) const;

  CoefficientVector operator+(const CoefficientVector& other) const;
  CoefficientVector operator-(const CoefficientVector& other) const;
  CoefficientVector scaled(Scalar z) const;

  bool operator==(const CoefficientVector& other) const;
  // Total order on canonical forms (exact machine-number comparison).
  bool operator<(const CoefficientVector& other) const;

 private:
  std::size_t dim_;
  unsigned degree_ = 0;
  std::map<MultiIndex, Scalar, GradedLexLess> coeffs_;
};

struct Atom {
  Point point;
  double weight;
};

struct SignedAtom {
  Point point;
  Scalar weight;
};

// Finitely supported positive measure on R^d or C^d. Construction merges
// atoms within kAtomMergeTol, drops exact-zero weights, sorts the support;
// immutable afterwards and safe to share across threads.
class AtomicMeasure {
 public:
  AtomicMeasure(std::size_t dim, Kind kind, std::vector<Atom> atoms);

  static AtomicMeasure zero(std::size_t dim, Kind kind) {
    return AtomicMeasure(dim, kind, {});
  }

  std::size_t dim() const { return dim_; }
  Kind kind() const { return kind_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const;
  bool is_zero() const { return atoms_.empty(); }

  AtomicMeasure scaled(double factor) const;

 private:
  std::size_t dim_;
  Kind kind_;
  std::vector<Atom> atoms_;
};

// As AtomicMeasure but with complex weights; carries signed combinations
// such as mu_{xi+eta} + mu_{xi-eta} - 2 mu_eta and polarized forms.
class SignedAtomicMeasure {
 public:
  SignedAtomicMeasure(std::size_t dim, Kind kind, std::vector<SignedAtom> atoms);

  static SignedAtomicMeasure zero(std::size_t dim, Kind kind) {
    return SignedAtomicMeasure(dim, kind, {});
  }
  static SignedAtomicMeasure from(const AtomicMeasure& mu);

  std::size_t dim() const { return dim_; }
  Kind kind() const { return kind_; }
  const std::vector<SignedAtom>& atoms() const { return atoms_; }
  Scalar total() const;
  double abs_mass() const;

  SignedAtomicMeasure scaled(Scalar z) const;
  SignedAtomicMeasure operator+(const SignedAtomicMeasure& other) const;
  SignedAtomicMeasure operator-(const SignedAtomicMeasure& other) const;

  // Sum of weights at atoms within merge tolerance of any point in `region`.
  Scalar mass_on(const std::vector<Point>& region) const;

 private:
  std::size_t dim_;
  Kind kind_;
  std::vector<SignedAtom> atoms_;
};

// Are these the same point up to the canonical merge tolerance?
bool points_match(const Point& a, const Point& b);

// Truncated moment data: a real d-sequence a_n (degree(n) <= D) or a complex
// 2d-sequence c_{m,n} (degree(m), degree(n) <= D), dense within the bound.
class TruncatedSequence {
 public:
  // Real kind; `values` must cover indices_up_to(dim, max_degree) exactly.
  TruncatedSequence(std::size_t dim, unsigned max_degree,
                    std::unordered_map<MultiIndex, double, MultiIndexHash> values);
  // Complex kind; `values` keyed by (m,n) positions in the index list.
  TruncatedSequence(std::size_t dim, unsigned max_degree,
                    std::vector<std::vector<Scalar>> values);

  std::size_t dim() const { return dim_; }
  Kind kind() const { return kind_; }
  unsigned max_degree() const { return max_degree_; }
  const std::vector<MultiIndex>& index_list() const { return indices_; }

  // a_n (real kind only).
  double at(const MultiIndex& n) const;
  // c_{m,n} (complex kind only).
  Scalar at(const MultiIndex& m, const MultiIndex& n) const;

  std::size_t position(const MultiIndex& n) const;

 private:
  void build_index();
  std::size_t dim_;
  Kind kind_;
  unsigned max_degree_;
  std::vector<MultiIndex> indices_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> pos_;
  std::vector<double> real_values_;
  std::vector<std::vector<Scalar>> complex_values_;
};

// a_n = sum_atoms w x^n for degree(n) <= D, or c_{m,n} = sum w z^m zbar^n.
TruncatedSequence moments_of(const AtomicMeasure& mu, unsigned max_degree);

// Localized sequence: a^xi_n = sum_{k,l} a_{n+k+l} xi_k conj(xi_l) with the
// degree budget D - 2 deg(xi); complex: c^xi_{m,n} = sum c_{m+k,n+l} xi_k
// conj(xi_l) with per-slot budget D - deg(xi).
TruncatedSequence localize(const TruncatedSequence& seq, const CoefficientVector& xi);

// p_xi(x) = sum_k xi_k x^k (complex kind evaluates the holomorphic sum
// p_xi(z) = sum_k xi_k z^k).
Scalar poly_eval(const CoefficientVector& xi, const Point& x);

}  // namespace momcert

#endif
