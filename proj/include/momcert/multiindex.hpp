#ifndef MOMCERT_MULTIINDEX_HPP
#define MOMCERT_MULTIINDEX_HPP

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "momcert/common.hpp"

namespace momcert {

// Exponent tuple n = (n_1,...,n_d) indexing the monomial x^n (or z^m zbar^n
// in pairs). Immutable value type; all operations are pure.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<std::uint32_t> entries);
  MultiIndex(std::initializer_list<std::uint32_t> entries);

  // Zero index (0,...,0) in the given dimension.
  static MultiIndex zero(std::size_t dim);

  // Kronecker tuple e_i with 1 in slot i; coordinates run 1..dim.
  static MultiIndex unit(std::size_t i, std::size_t dim);

  std::size_t dim() const { return entries_.size(); }
  std::uint32_t operator[](std::size_t pos) const { return entries_[pos]; }
  const std::vector<std::uint32_t>& entries() const { return entries_; }

  unsigned degree() const;

  // Entrywise sum; degree past kMaxIndexDegree is a checked error.
  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex scaled(std::uint32_t factor) const;

  bool operator==(const MultiIndex& other) const { return entries_ == other.entries_; }
  bool operator!=(const MultiIndex& other) const { return entries_ != other.entries_; }

 private:
  std::vector<std::uint32_t> entries_;
};

// Canonical ordering used everywhere a matrix or file is indexed: by degree,
// then lexicographically (larger leading exponent first within a degree).
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_less(a, b);
  }
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& n) const;
};

// {k : |k| <= 1} = {0, e_1, ..., e_d}, graded-lex ordered.
std::vector<MultiIndex> n1_set(std::size_t dim);

// {0, 2e_1, ..., 2e_d}.
std::vector<MultiIndex> two_n1_set(std::size_t dim);

// {0, e_i, 2e_i}: 2d+1 indices, mixed second-order indices e_i+e_j excluded.
std::vector<MultiIndex> n1_union_2n1_set(std::size_t dim);

// All indices of degree <= max_degree, graded-lex ordered.
std::vector<MultiIndex> indices_up_to(std::size_t dim, unsigned max_degree);

// x^n = x_1^{n_1} ... x_d^{n_d}; empty product is 1.
Scalar monomial_eval(const Point& x, const MultiIndex& n);

// z^m zbar^n for complex points.
Scalar monomial_eval(const Point& z, const MultiIndex& m, const MultiIndex& conj_n);

}  // namespace momcert

#endif
