#include "momcert/json_io.hpp"

#include <nlohmann/json.hpp>

namespace momcert {

using nlohmann::json;

namespace {

std::uint32_t natural_from_json(const json& j) {
  if (!j.is_number_unsigned())
    throw ValidationError("expected a natural number, got " + j.dump());
  const std::uint64_t v = j.get<std::uint64_t>();
  if (v > kMaxIndexDegree)
    throw ValidationError("multi-index entry " + std::to_string(v) + " is out of range");
  return static_cast<std::uint32_t>(v);
}

double number_from_json(const json& j, const char* what) {
  if (!j.is_number()) throw ValidationError(std::string("expected a number for ") + what);
  return j.get<double>();
}

Kind kind_from_json(const json& j) {
  const std::string k = j.value("kind", "");
  if (k == "real") return Kind::real;
  if (k == "complex") return Kind::complex;
  throw ValidationError("\"kind\" must be \"real\" or \"complex\"");
}

std::size_t dim_from_json(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    throw ValidationError("missing or invalid \"dim\"");
  const std::size_t d = j["dim"].get<std::size_t>();
  if (d == 0) throw ValidationError("\"dim\" must be >= 1");
  return d;
}

Point point_from_json(const json& j, std::size_t dim, Kind kind) {
  if (!j.is_array() || j.size() != dim)
    throw ValidationError("atom point must be an array of length dim");
  Point p(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (kind == Kind::real) {
      p[k] = Scalar{number_from_json(j[k], "point coordinate"), 0.0};
    } else {
      if (!j[k].is_array() || j[k].size() != 2)
        throw ValidationError("complex point coordinates are [re, im] pairs");
      p[k] = Scalar{number_from_json(j[k][0], "re"), number_from_json(j[k][1], "im")};
    }
  }
  return p;
}

json point_to_json(const Point& p, Kind kind) {
  json out = json::array();
  for (const Scalar& c : p) {
    if (kind == Kind::real)
      out.push_back(c.real());
    else
      out.push_back(json::array({c.real(), c.imag()}));
  }
  return out;
}

}  // namespace

json to_json(const MultiIndex& n) {
  json out = json::array();
  for (std::size_t k = 0; k < n.dim(); ++k) out.push_back(n[k]);
  return out;
}

MultiIndex multiindex_from_json(const json& j) {
  if (!j.is_array() || j.empty())
    throw ValidationError("multi-index must be a nonempty array of naturals");
  std::vector<std::uint32_t> entries;
  entries.reserve(j.size());
  for (const auto& e : j) entries.push_back(natural_from_json(e));
  return MultiIndex(std::move(entries));
}

json to_json(const Scalar& z) { return json::array({z.real(), z.imag()}); }

Scalar scalar_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ValidationError("complex scalar must be a [re, im] pair");
  return {number_from_json(j[0], "re"), number_from_json(j[1], "im")};
}

json to_json(const CoefficientVector& xi) {
  json out = json::array();
  for (const auto& [idx, value] : xi.coeffs()) {
    out.push_back({{"idx", to_json(idx)}, {"re", value.real()}, {"im", value.imag()}});
  }
  return out;
}

CoefficientVector coefficient_vector_from_json(const json& j, std::size_t dim) {
  if (!j.is_array()) throw ValidationError("coefficient vector must be an array of terms");
  std::map<MultiIndex, Scalar, GradedLexLess> coeffs;
  for (const auto& term : j) {
    if (!term.contains("idx")) throw ValidationError("coefficient term is missing \"idx\"");
    MultiIndex idx = multiindex_from_json(term["idx"]);
    if (idx.dim() != dim)
      throw DimensionError("coefficient index dimension does not match dim " +
                           std::to_string(dim));
    const double re = term.contains("re") ? number_from_json(term["re"], "re") : 0.0;
    const double im = term.contains("im") ? number_from_json(term["im"], "im") : 0.0;
    auto [it, inserted] = coeffs.emplace(idx, Scalar{re, im});
    if (!inserted) throw ValidationError("duplicate coefficient index " + term["idx"].dump());
  }
  return CoefficientVector(dim, std::move(coeffs));
}

json to_json(const std::vector<CoefficientVector>& xis) {
  json out = json::array();
  for (const auto& xi : xis) out.push_back(to_json(xi));
  return out;
}

std::vector<CoefficientVector> xi_set_from_json(const json& j, std::size_t dim) {
  if (!j.is_array()) throw ValidationError("xi set must be an array of coefficient vectors");
  std::vector<CoefficientVector> out;
  out.reserve(j.size());
  for (const auto& entry : j) out.push_back(coefficient_vector_from_json(entry, dim));
  return out;
}

json to_json(const AtomicMeasure& mu) {
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) {
    atoms.push_back({{"point", point_to_json(a.point, mu.kind())}, {"weight", a.weight}});
  }
  return {{"dim", mu.dim()}, {"kind", kind_name(mu.kind())}, {"atoms", atoms}};
}

AtomicMeasure measure_from_json(const json& j) {
  const std::size_t dim = dim_from_json(j);
  const Kind kind = kind_from_json(j);
  if (!j.contains("atoms") || !j["atoms"].is_array())
    throw ValidationError("measure is missing its \"atoms\" array");
  std::vector<Atom> atoms;
  for (const auto& a : j["atoms"]) {
    if (!a.contains("point") || !a.contains("weight"))
      throw ValidationError("atom needs \"point\" and \"weight\"");
    atoms.push_back(
        {point_from_json(a["point"], dim, kind), number_from_json(a["weight"], "weight")});
  }
  return AtomicMeasure(dim, kind, std::move(atoms));
}

json to_json(const SignedAtomicMeasure& mu) {
  json atoms = json::array();
  for (const SignedAtom& a : mu.atoms()) {
    atoms.push_back({{"point", point_to_json(a.point, mu.kind())},
                     {"re", a.weight.real()},
                     {"im", a.weight.imag()}});
  }
  return {{"dim", mu.dim()}, {"kind", kind_name(mu.kind())}, {"atoms", atoms}};
}

json to_json(const TruncatedSequence& seq) {
  json entries = json::array();
  if (seq.kind() == Kind::real) {
    for (const MultiIndex& n : seq.index_list())
      entries.push_back({{"idx", to_json(n)}, {"value", seq.at(n)}});
  } else {
    for (const MultiIndex& m : seq.index_list()) {
      for (const MultiIndex& n : seq.index_list()) {
        const Scalar c = seq.at(m, n);
        entries.push_back({{"idx_m", to_json(m)},
                           {"idx_n", to_json(n)},
                           {"re", c.real()},
                           {"im", c.imag()}});
      }
    }
  }
  return {{"dim", seq.dim()},
          {"kind", kind_name(seq.kind())},
          {"max_degree", seq.max_degree()},
          {"entries", entries}};
}

TruncatedSequence sequence_from_json(const json& j) {
  const std::size_t dim = dim_from_json(j);
  const Kind kind = kind_from_json(j);
  if (!j.contains("max_degree") || !j["max_degree"].is_number_unsigned())
    throw ValidationError("sequence is missing \"max_degree\"");
  const unsigned max_degree = j["max_degree"].get<unsigned>();
  if (!j.contains("entries") || !j["entries"].is_array())
    throw ValidationError("sequence is missing its \"entries\" array");

  if (kind == Kind::real) {
    std::unordered_map<MultiIndex, double, MultiIndexHash> values;
    for (const auto& e : j["entries"]) {
      if (!e.contains("idx") || !e.contains("value"))
        throw ValidationError("real sequence entry needs \"idx\" and \"value\"");
      MultiIndex idx = multiindex_from_json(e["idx"]);
      if (idx.dim() != dim) throw DimensionError("sequence entry dimension mismatch");
      if (!values.emplace(idx, number_from_json(e["value"], "value")).second)
        throw ValidationError("duplicate sequence entry at " + e["idx"].dump());
    }
    return TruncatedSequence(dim, max_degree, std::move(values));
  }

  const auto indices = indices_up_to(dim, max_degree);
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> pos;
  for (std::size_t i = 0; i < indices.size(); ++i) pos.emplace(indices[i], i);
  std::vector<std::vector<Scalar>> values(indices.size(),
                                          std::vector<Scalar>(indices.size()));
  std::vector<std::vector<bool>> seen(indices.size(), std::vector<bool>(indices.size()));
  for (const auto& e : j["entries"]) {
    if (!e.contains("idx_m") || !e.contains("idx_n"))
      throw ValidationError("complex sequence entry needs \"idx_m\" and \"idx_n\"");
    MultiIndex m = multiindex_from_json(e["idx_m"]);
    MultiIndex n = multiindex_from_json(e["idx_n"]);
    if (m.dim() != dim || n.dim() != dim)
      throw DimensionError("sequence entry dimension mismatch");
    auto im_ = pos.find(m);
    auto in_ = pos.find(n);
    if (im_ == pos.end() || in_ == pos.end())
      throw ValidationError("complex sequence entry outside the degree bound");
    if (seen[im_->second][in_->second])
      throw ValidationError("duplicate complex sequence entry");
    seen[im_->second][in_->second] = true;
    values[im_->second][in_->second] = {number_from_json(e.value("re", json(0.0)), "re"),
                                        number_from_json(e.value("im", json(0.0)), "im")};
  }
  for (const auto& row : seen)
    for (bool s : row)
      if (!s) throw ValidationError("complex sequence is missing an entry within its bound");
  return TruncatedSequence(dim, max_degree, std::move(values));
}

json to_json(const MeasureFamily& family) {
  json members = json::array();
  for (const auto& [xi, mu] : family.members())
    members.push_back({{"xi", to_json(xi)}, {"measure", to_json(mu)}});
  return {{"dim", family.dim()}, {"kind", kind_name(family.kind())}, {"members", members}};
}

MeasureFamily family_from_json(const json& j) {
  const std::size_t dim = dim_from_json(j);
  const Kind kind = kind_from_json(j);
  if (!j.contains("members") || !j["members"].is_array())
    throw ValidationError("family is missing its \"members\" array");
  MeasureFamily family(dim, kind, Provenance::user_supplied);
  for (const auto& m : j["members"]) {
    if (!m.contains("xi") || !m.contains("measure"))
      throw ValidationError("family member needs \"xi\" and \"measure\"");
    CoefficientVector xi = coefficient_vector_from_json(m["xi"], dim);
    AtomicMeasure mu = measure_from_json(m["measure"]);
    if (mu.dim() != dim || mu.kind() != kind)
      throw ValidationError("family member measure dim/kind mismatch");
    family.insert(xi, std::move(mu));
  }
  return family;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("JSON parse error: ") + e.what());
  }
}

}  // namespace momcert
