#include "momcert/multiindex.hpp"

#include <algorithm>
#include <numeric>

namespace momcert {

MultiIndex::MultiIndex(std::vector<std::uint32_t> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DimensionError("multi-index dimension must be >= 1");
}

MultiIndex::MultiIndex(std::initializer_list<std::uint32_t> entries)
    : MultiIndex(std::vector<std::uint32_t>(entries)) {}

MultiIndex MultiIndex::zero(std::size_t dim) {
  if (dim == 0) throw DimensionError("multi-index dimension must be >= 1");
  return MultiIndex(std::vector<std::uint32_t>(dim, 0));
}

MultiIndex MultiIndex::unit(std::size_t i, std::size_t dim) {
  if (i < 1 || i > dim)
    throw CoordinateRangeError("unit index coordinate " + std::to_string(i) +
                               " out of range 1.." + std::to_string(dim));
  std::vector<std::uint32_t> e(dim, 0);
  e[i - 1] = 1;
  return MultiIndex(std::move(e));
}

unsigned MultiIndex::degree() const {
  return std::accumulate(entries_.begin(), entries_.end(), 0u);
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (dim() != other.dim())
    throw DimensionError("multi-index dimension mismatch: " + std::to_string(dim()) +
                         " vs " + std::to_string(other.dim()));
  std::vector<std::uint32_t> sum(dim());
  for (std::size_t k = 0; k < dim(); ++k) sum[k] = entries_[k] + other.entries_[k];
  MultiIndex out{std::move(sum)};
  if (out.degree() > kMaxIndexDegree)
    throw IndexOverflowError("multi-index sum exceeds degree bound " +
                             std::to_string(kMaxIndexDegree));
  return out;
}

MultiIndex MultiIndex::scaled(std::uint32_t factor) const {
  std::vector<std::uint32_t> out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = entries_[k] * factor;
  MultiIndex scaled_idx{std::move(out)};
  if (scaled_idx.degree() > kMaxIndexDegree)
    throw IndexOverflowError("scaled multi-index exceeds degree bound " +
                             std::to_string(kMaxIndexDegree));
  return scaled_idx;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Within a degree the larger leading exponent comes first: (1,0) before (0,1).
  for (std::size_t k = 0; k < a.dim() && k < b.dim(); ++k) {
    if (a[k] != b[k]) return a[k] > b[k];
  }
  return a.dim() < b.dim();
}

std::size_t MultiIndexHash::operator()(const MultiIndex& n) const {
  std::size_t h = n.dim();
  for (std::size_t k = 0; k < n.dim(); ++k) {
    h ^= std::hash<std::uint32_t>()(n[k]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::vector<MultiIndex> n1_set(std::size_t dim) {
  std::vector<MultiIndex> out;
  out.reserve(dim + 1);
  out.push_back(MultiIndex::zero(dim));
  for (std::size_t i = 1; i <= dim; ++i) out.push_back(MultiIndex::unit(i, dim));
  return out;
}

std::vector<MultiIndex> two_n1_set(std::size_t dim) {
  std::vector<MultiIndex> out;
  out.reserve(dim + 1);
  out.push_back(MultiIndex::zero(dim));
  for (std::size_t i = 1; i <= dim; ++i) out.push_back(MultiIndex::unit(i, dim).scaled(2));
  return out;
}

std::vector<MultiIndex> n1_union_2n1_set(std::size_t dim) {
  std::vector<MultiIndex> out = n1_set(dim);
  for (std::size_t i = 1; i <= dim; ++i) out.push_back(MultiIndex::unit(i, dim).scaled(2));
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::vector<MultiIndex> indices_up_to(std::size_t dim, unsigned max_degree) {
  if (dim == 0) throw DimensionError("dimension must be >= 1");
  std::vector<MultiIndex> out;
  std::vector<std::uint32_t> current(dim, 0);
  // Enumerate recursively per degree so the graded order comes out directly.
  auto emit_degree = [&](auto&& self, std::size_t slot, unsigned remaining) -> void {
    if (slot + 1 == dim) {
      current[slot] = remaining;
      out.push_back(MultiIndex(current));
      return;
    }
    for (int v = static_cast<int>(remaining); v >= 0; --v) {
      current[slot] = static_cast<std::uint32_t>(v);
      self(self, slot + 1, remaining - static_cast<unsigned>(v));
    }
  };
  for (unsigned deg = 0; deg <= max_degree; ++deg) emit_degree(emit_degree, 0, deg);
  return out;
}

namespace {

Scalar int_pow(Scalar base, std::uint32_t exp) {
  Scalar result{1.0, 0.0};
  while (exp > 0) {
    if (exp & 1u) result *= base;
    base *= base;
    exp >>= 1u;
  }
  return result;
}

}  // namespace

Scalar monomial_eval(const Point& x, const MultiIndex& n) {
  if (x.size() != n.dim())
    throw DimensionError("point dimension " + std::to_string(x.size()) +
                         " does not match multi-index dimension " + std::to_string(n.dim()));
  Scalar prod{1.0, 0.0};
  for (std::size_t k = 0; k < n.dim(); ++k) prod *= int_pow(x[k], n[k]);
  return prod;
}

Scalar monomial_eval(const Point& z, const MultiIndex& m, const MultiIndex& conj_n) {
  if (z.size() != m.dim() || z.size() != conj_n.dim())
    throw DimensionError("point/multi-index dimension mismatch in z^m zbar^n");
  Scalar prod{1.0, 0.0};
  for (std::size_t k = 0; k < z.size(); ++k) {
    prod *= int_pow(z[k], m[k]);
    prod *= int_pow(std::conj(z[k]), conj_n[k]);
  }
  return prod;
}

}  // namespace momcert
