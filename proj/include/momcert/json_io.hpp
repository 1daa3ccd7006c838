#ifndef MOMCERT_JSON_IO_HPP
#define MOMCERT_JSON_IO_HPP

#include <nlohmann/json_fwd.hpp>

#include "momcert/families.hpp"
#include "momcert/sequences.hpp"

namespace momcert {

// Wire formats. Multi-indices are arrays of naturals ([2,0,1]); sequences,
// measures and coefficient vectors follow the schemas in README.md. Numbers
// round-trip bit-exactly, so canonical coefficient-vector keys survive
// serialization.

nlohmann::json to_json(const MultiIndex& n);
MultiIndex multiindex_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Scalar& z);          // [re, im]
Scalar scalar_from_json(const nlohmann::json& j);

// Coefficient vector xi as an array of {"idx": [...], "re": r, "im": i}.
nlohmann::json to_json(const CoefficientVector& xi);
CoefficientVector coefficient_vector_from_json(const nlohmann::json& j, std::size_t dim);

// A list of coefficient vectors (xi-set files): array of the above arrays.
nlohmann::json to_json(const std::vector<CoefficientVector>& xis);
std::vector<CoefficientVector> xi_set_from_json(const nlohmann::json& j, std::size_t dim);

nlohmann::json to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SignedAtomicMeasure& mu);

nlohmann::json to_json(const TruncatedSequence& seq);
TruncatedSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MeasureFamily& family);
MeasureFamily family_from_json(const nlohmann::json& j);

// Parse with line/column context in the error message.
nlohmann::json parse_json(const std::string& text);

}  // namespace momcert

#endif
