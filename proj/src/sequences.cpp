#include "momcert/sequences.hpp"

#include <algorithm>
#include <cmath>

namespace momcert {

namespace {

void check_finite(Scalar v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw ValidationError(std::string(what) + " must be finite");
}

double point_magnitude(const Point& p) {
  double m = 0.0;
  for (const Scalar& c : p) m = std::max({m, std::abs(c.real()), std::abs(c.imag())});
  return m;
}

// Lexicographic (re, im) per coordinate; canonical atom ordering.
bool point_less(const Point& a, const Point& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
    if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
  }
  return false;
}

void validate_point(const Point& p, std::size_t dim, Kind kind) {
  if (p.size() != dim)
    throw DimensionError("atom point dimension " + std::to_string(p.size()) +
                         " does not match measure dimension " + std::to_string(dim));
  for (const Scalar& c : p) {
    check_finite(c, "atom coordinate");
    if (kind == Kind::real && c.imag() != 0.0)
      throw KindError("real-kind measure has an atom with nonzero imaginary part");
  }
}

}  // namespace

bool points_match(const Point& a, const Point& b) {
  if (a.size() != b.size()) return false;
  double dist2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const Scalar diff = a[k] - b[k];
    dist2 += std::norm(diff);
  }
  const double scale = std::max(1.0, std::max(point_magnitude(a), point_magnitude(b)));
  const double tol = kAtomMergeTol * scale;
  return dist2 <= tol * tol;
}

// ---------------------------------------------------------------------------
// CoefficientVector

CoefficientVector::CoefficientVector(std::size_t dim) : dim_(dim) {
  if (dim_ == 0) throw DimensionError("coefficient vector dimension must be >= 1");
}

CoefficientVector::CoefficientVector(std::size_t dim,
                                     std::map<MultiIndex, Scalar, GradedLexLess> coeffs)
    : dim_(dim) {
  if (dim_ == 0) throw DimensionError("coefficient vector dimension must be >= 1");
  for (auto& [idx, value] : coeffs) {
    if (idx.dim() != dim_)
      throw DimensionError("coefficient index dimension does not match vector dimension");
    check_finite(value, "coefficient");
    if (value == Scalar{0.0, 0.0}) continue;  // canonical form: no explicit zeros
    coeffs_.emplace(idx, value);
    degree_ = std::max(degree_, idx.degree());
  }
}

CoefficientVector CoefficientVector::unit(const MultiIndex& n) {
  std::map<MultiIndex, Scalar, GradedLexLess> c;
  c.emplace(n, Scalar{1.0, 0.0});
  return CoefficientVector(n.dim(), std::move(c));
}

Scalar CoefficientVector::at(const MultiIndex& n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? Scalar{0.0, 0.0} : it->second;
}

CoefficientVector CoefficientVector::operator+(const CoefficientVector& other) const {
  if (dim_ != other.dim_) throw DimensionError("coefficient vector dimension mismatch");
  auto merged = coeffs_;
  for (const auto& [idx, value] : other.coeffs_) {
    auto [it, inserted] = merged.emplace(idx, value);
    if (!inserted) it->second += value;
  }
  return CoefficientVector(dim_, std::move(merged));
}

CoefficientVector CoefficientVector::operator-(const CoefficientVector& other) const {
  return *this + other.scaled(Scalar{-1.0, 0.0});
}

CoefficientVector CoefficientVector::scaled(Scalar z) const {
  std::map<MultiIndex, Scalar, GradedLexLess> out;
  for (const auto& [idx, value] : coeffs_) out.emplace(idx, z * value);
  return CoefficientVector(dim_, std::move(out));
}

bool CoefficientVector::operator==(const CoefficientVector& other) const {
  return dim_ == other.dim_ && coeffs_ == other.coeffs_;
}

bool CoefficientVector::operator<(const CoefficientVector& other) const {
  if (dim_ != other.dim_) return dim_ < other.dim_;
  auto it = coeffs_.begin();
  auto jt = other.coeffs_.begin();
  for (; it != coeffs_.end() && jt != other.coeffs_.end(); ++it, ++jt) {
    if (it->first != jt->first) return graded_lex_less(it->first, jt->first);
    if (it->second.real() != jt->second.real()) return it->second.real() < jt->second.real();
    if (it->second.imag() != jt->second.imag()) return it->second.imag() < jt->second.imag();
  }
  return it == coeffs_.end() && jt != other.coeffs_.end();
}

// ---------------------------------------------------------------------------
// AtomicMeasure / SignedAtomicMeasure

namespace {

// Sort, then greedily merge atoms within tolerance. Quadratic in the atom
// count, which stays small at desk scale.
template <typename A, typename W>
std::vector<A> canonical_atoms(std::vector<A> atoms, W zero_weight) {
  std::sort(atoms.begin(), atoms.end(),
            [](const A& a, const A& b) { return point_less(a.point, b.point); });
  std::vector<A> merged;
  for (auto& atom : atoms) {
    bool absorbed = false;
    for (auto& kept : merged) {
      if (points_match(kept.point, atom.point)) {
        kept.weight += atom.weight;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(std::move(atom));
  }
  std::erase_if(merged, [&](const A& a) { return a.weight == zero_weight; });
  return merged;
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::size_t dim, Kind kind, std::vector<Atom> atoms)
    : dim_(dim), kind_(kind) {
  if (dim_ == 0) throw DimensionError("measure dimension must be >= 1");
  for (const Atom& a : atoms) {
    validate_point(a.point, dim_, kind_);
    if (!std::isfinite(a.weight)) throw ValidationError("atom weight must be finite");
    if (a.weight < 0.0)
      throw ValidationError("atomic measure weight " + std::to_string(a.weight) +
                            " is negative");
  }
  atoms_ = canonical_atoms(std::move(atoms), 0.0);
}

double AtomicMeasure::total_mass() const {
  double mass = 0.0;
  for (const Atom& a : atoms_) mass += a.weight;
  return mass;
}

AtomicMeasure AtomicMeasure::scaled(double factor) const {
  if (factor < 0.0) throw ValidationError("atomic measure scale factor must be >= 0");
  std::vector<Atom> out = atoms_;
  for (Atom& a : out) a.weight *= factor;
  return AtomicMeasure(dim_, kind_, std::move(out));
}

SignedAtomicMeasure::SignedAtomicMeasure(std::size_t dim, Kind kind,
                                         std::vector<SignedAtom> atoms)
    : dim_(dim), kind_(kind) {
  if (dim_ == 0) throw DimensionError("measure dimension must be >= 1");
  for (const SignedAtom& a : atoms) {
    validate_point(a.point, dim_, kind_);
    check_finite(a.weight, "atom weight");
  }
  atoms_ = canonical_atoms(std::move(atoms), Scalar{0.0, 0.0});
}

SignedAtomicMeasure SignedAtomicMeasure::from(const AtomicMeasure& mu) {
  std::vector<SignedAtom> atoms;
  atoms.reserve(mu.atoms().size());
  for (const Atom& a : mu.atoms()) atoms.push_back({a.point, Scalar{a.weight, 0.0}});
  return SignedAtomicMeasure(mu.dim(), mu.kind(), std::move(atoms));
}

Scalar SignedAtomicMeasure::total() const {
  Scalar t{0.0, 0.0};
  for (const SignedAtom& a : atoms_) t += a.weight;
  return t;
}

double SignedAtomicMeasure::abs_mass() const {
  double m = 0.0;
  for (const SignedAtom& a : atoms_) m += std::abs(a.weight);
  return m;
}

SignedAtomicMeasure SignedAtomicMeasure::scaled(Scalar z) const {
  std::vector<SignedAtom> out = atoms_;
  for (SignedAtom& a : out) a.weight *= z;
  return SignedAtomicMeasure(dim_, kind_, std::move(out));
}

SignedAtomicMeasure SignedAtomicMeasure::operator+(const SignedAtomicMeasure& other) const {
  if (dim_ != other.dim_ || kind_ != other.kind_)
    throw DimensionError("signed measure dimension/kind mismatch in +");
  std::vector<SignedAtom> out = atoms_;
  out.insert(out.end(), other.atoms_.begin(), other.atoms_.end());
  return SignedAtomicMeasure(dim_, kind_, std::move(out));
}

SignedAtomicMeasure SignedAtomicMeasure::operator-(const SignedAtomicMeasure& other) const {
  return *this + other.scaled(Scalar{-1.0, 0.0});
}

Scalar SignedAtomicMeasure::mass_on(const std::vector<Point>& region) const {
  Scalar mass{0.0, 0.0};
  for (const SignedAtom& a : atoms_) {
    for (const Point& p : region) {
      if (points_match(a.point, p)) {
        mass += a.weight;
        break;
      }
    }
  }
  return mass;
}

// ---------------------------------------------------------------------------
// TruncatedSequence

void TruncatedSequence::build_index() {
  if (dim_ == 0) throw DimensionError("sequence dimension must be >= 1");
  if (max_degree_ > kMaxSequenceDegree)
    throw ValidationError("sequence max_degree " + std::to_string(max_degree_) +
                          " exceeds the bound " + std::to_string(kMaxSequenceDegree));
  indices_ = indices_up_to(dim_, max_degree_);
  pos_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) pos_.emplace(indices_[i], i);
}

TruncatedSequence::TruncatedSequence(
    std::size_t dim, unsigned max_degree,
    std::unordered_map<MultiIndex, double, MultiIndexHash> values)
    : dim_(dim), kind_(Kind::real), max_degree_(max_degree) {
  build_index();
  real_values_.resize(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    auto it = values.find(indices_[i]);
    if (it == values.end())
      throw ValidationError("real sequence is missing an entry within its degree bound");
    if (!std::isfinite(it->second)) throw ValidationError("sequence entry must be finite");
    real_values_[i] = it->second;
  }
  if (values.size() != indices_.size())
    throw ValidationError("real sequence has entries outside its degree bound");
}

TruncatedSequence::TruncatedSequence(std::size_t dim, unsigned max_degree,
                                     std::vector<std::vector<Scalar>> values)
    : dim_(dim), kind_(Kind::complex), max_degree_(max_degree) {
  build_index();
  const std::size_t n = indices_.size();
  if (values.size() != n)
    throw ValidationError("complex sequence entry table has the wrong size");
  for (const auto& row : values) {
    if (row.size() != n)
      throw ValidationError("complex sequence entry table has the wrong size");
    for (const Scalar& v : row) check_finite(v, "sequence entry");
  }
  // Hermitian symmetry c_{m,n} = conj(c_{n,m}) within tolerance.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const double defect = std::abs(values[i][j] - std::conj(values[j][i]));
      const double scale = std::max(1.0, std::abs(values[i][j]));
      if (defect > kDefaultTol * scale)
        throw ValidationError("complex sequence violates Hermitian symmetry (defect " +
                              std::to_string(defect) + ")");
    }
  }
  complex_values_ = std::move(values);
}

double TruncatedSequence::at(const MultiIndex& n) const {
  if (kind_ != Kind::real) throw KindError("single-index entry a_n requested from a complex sequence");
  return real_values_[position(n)];
}

Scalar TruncatedSequence::at(const MultiIndex& m, const MultiIndex& n) const {
  if (kind_ != Kind::complex) throw KindError("pair entry c_{m,n} requested from a real sequence");
  return complex_values_[position(m)][position(n)];
}

std::size_t TruncatedSequence::position(const MultiIndex& n) const {
  auto it = pos_.find(n);
  if (it == pos_.end())
    throw DegreeBudgetError("index of degree " + std::to_string(n.degree()) +
                            " is outside the truncation bound " +
                            std::to_string(max_degree_));
  return it->second;
}

// ---------------------------------------------------------------------------
// Operations

TruncatedSequence moments_of(const AtomicMeasure& mu, unsigned max_degree) {
  const auto indices = indices_up_to(mu.dim(), max_degree);
  if (mu.kind() == Kind::real) {
    std::unordered_map<MultiIndex, double, MultiIndexHash> values;
    values.reserve(indices.size());
    for (const MultiIndex& n : indices) {
      Scalar acc{0.0, 0.0};
      for (const Atom& a : mu.atoms()) acc += a.weight * monomial_eval(a.point, n);
      if (std::abs(acc.imag()) > kRealResidueTol * std::max(1.0, std::abs(acc.real())))
        throw KindError("real moment computation produced imaginary residue");
      values.emplace(n, acc.real());
    }
    return TruncatedSequence(mu.dim(), max_degree, std::move(values));
  }
  std::vector<std::vector<Scalar>> values(indices.size(),
                                          std::vector<Scalar>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      Scalar acc{0.0, 0.0};
      for (const Atom& a : mu.atoms())
        acc += a.weight * monomial_eval(a.point, indices[i], indices[j]);
      values[i][j] = acc;
    }
  }
  return TruncatedSequence(mu.dim(), max_degree, std::move(values));
}

TruncatedSequence localize(const TruncatedSequence& seq, const CoefficientVector& xi) {
  if (seq.dim() != xi.dim())
    throw DimensionError("sequence/coefficient-vector dimension mismatch in localize");
  const unsigned d = xi.degree();
  if (seq.kind() == Kind::real) {
    if (seq.max_degree() < 2 * d)
      throw DegreeBudgetError("localize needs max_degree >= 2 deg(xi) = " +
                              std::to_string(2 * d) + ", have " +
                              std::to_string(seq.max_degree()));
    const unsigned out_degree = seq.max_degree() - 2 * d;
    std::unordered_map<MultiIndex, double, MultiIndexHash> values;
    for (const MultiIndex& n : indices_up_to(seq.dim(), out_degree)) {
      Scalar acc{0.0, 0.0};
      for (const auto& [k, ck] : xi.coeffs()) {
        for (const auto& [l, cl] : xi.coeffs()) {
          acc += seq.at(n + k + l) * ck * std::conj(cl);
        }
      }
      if (std::abs(acc.imag()) > kRealResidueTol * std::max(1.0, std::abs(acc.real())))
        throw KindError("localized real sequence produced imaginary residue");
      values.emplace(n, acc.real());
    }
    return TruncatedSequence(seq.dim(), out_degree, std::move(values));
  }
  if (seq.max_degree() < d)
    throw DegreeBudgetError("localize needs max_degree >= deg(xi) in each slot");
  const unsigned out_degree = seq.max_degree() - d;
  const auto indices = indices_up_to(seq.dim(), out_degree);
  std::vector<std::vector<Scalar>> values(indices.size(),
                                          std::vector<Scalar>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = 0; j < indices.size(); ++j) {
      Scalar acc{0.0, 0.0};
      for (const auto& [k, ck] : xi.coeffs()) {
        for (const auto& [l, cl] : xi.coeffs()) {
          acc += seq.at(indices[i] + k, indices[j] + l) * ck * std::conj(cl);
        }
      }
      values[i][j] = acc;
    }
  }
  return TruncatedSequence(seq.dim(), out_degree, std::move(values));
}

Scalar poly_eval(const CoefficientVector& xi, const Point& x) {
  if (x.size() != xi.dim())
    throw DimensionError("point dimension does not match coefficient vector dimension");
  Scalar acc{0.0, 0.0};
  for (const auto& [k, ck] : xi.coeffs()) acc += ck * monomial_eval(x, k);
  return acc;
}

}  // namespace momcert
