#ifndef MOMCERT_COMMON_HPP
#define MOMCERT_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace momcert {

using Scalar = std::complex<double>;

// A point in R^d or C^d. Real-kind data keeps every imaginary part at zero;
// that invariant is enforced wherever points enter the library.
using Point = std::vector<Scalar>;

enum class Kind { real, complex };

inline const char* kind_name(Kind k) { return k == Kind::real ? "real" : "complex"; }

// Default relative tolerance for every verdict-producing check.
inline constexpr double kDefaultTol = 1e-9;

// Imaginary residue above this (relative) in a real-kind computation is an
// error, never silently dropped.
inline constexpr double kRealResidueTol = 1e-10;

// Atoms closer than kAtomMergeTol * max(1, coordinate magnitude) are one atom.
inline constexpr double kAtomMergeTol = 1e-12;

// Degree bounds are small by design; sequences cap at 32 and index sums at 64.
inline constexpr unsigned kMaxSequenceDegree = 32;
inline constexpr unsigned kMaxIndexDegree = 64;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : Error {
  using Error::Error;
};

struct CoordinateRangeError : Error {
  using Error::Error;
};

// Multi-index addition past kMaxIndexDegree.
struct IndexOverflowError : Error {
  using Error::Error;
};

// A computation ran out of truncation depth (degree budget).
struct DegreeBudgetError : Error {
  using Error::Error;
};

// Real/complex kind misuse (e.g. complex data in a real-only pipeline).
struct KindError : Error {
  using Error::Error;
};

// A quantity that must be (semi)positive is not, beyond tolerance.
struct PositivityError : Error {
  using Error::Error;
};

// Invariant violation in constructed or deserialized data.
struct ValidationError : Error {
  using Error::Error;
};

// A family lacks members required by a check; `missing` names each
// combination verbatim (canonical JSON of the coefficient vector).
struct IncompletenessError : Error {
  std::vector<std::string> missing;
  IncompletenessError(const std::string& msg, std::vector<std::string> missing_keys)
      : Error(msg), missing(std::move(missing_keys)) {}
};

// Truncation targets admit no positive measure; `witness_json` carries the
// violated condition (serialized FeasibilityWitness).
struct InfeasibilityError : Error {
  std::string witness_json;
  InfeasibilityError(const std::string& msg, std::string witness)
      : Error(msg), witness_json(std::move(witness)) {}
};

}  // namespace momcert

#endif
