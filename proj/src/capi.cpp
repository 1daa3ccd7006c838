#include "momcert.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstring>
#include <new>

#include "momcert/dilation.hpp"
#include "momcert/families.hpp"
#include "momcert/json_io.hpp"
#include "momcert/rkhs.hpp"
#include "momcert/sequences.hpp"
#include "momcert/solver.hpp"
#include "momcert/version.hpp"
#include "momcert/weaklimits.hpp"

using nlohmann::json;

struct momcert_measure {
  momcert::AtomicMeasure value;
};
struct momcert_sequence {
  momcert::TruncatedSequence value;
};
struct momcert_family {
  momcert::MeasureFamily value;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

char* dup_string(const std::string& text) {
  char* out = new (std::nothrow) char[text.size() + 1];
  if (!out) return nullptr;
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

momcert_status emit(const json& report, char** out) {
  if (out) *out = dup_string(report.dump(2));
  return MOMCERT_OK;
}

json report_head(const char* command, double tol) {
  return {{"version", momcert::kVersion}, {"command", command}, {"tol", tol}};
}

// Runs `body`; exceptions become MOMCERT_ERROR with the message preserved.
template <typename Body>
momcert_status guarded(Body&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    set_error(e.what());
    return MOMCERT_ERROR;
  } catch (...) {
    set_error("unknown error");
    return MOMCERT_ERROR;
  }
}

json to_json(const momcert::MomentConditionReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    json rec{{"xi", momcert::to_json(r.xi)},
             {"residual", r.residual},
             {"scale", r.scale},
             {"pass", r.pass},
             {"lhs", momcert::to_json(r.lhs)},
             {"rhs", momcert::to_json(r.rhs)}};
    if (r.idx_n) {
      rec["idx_m"] = momcert::to_json(r.idx_m);
      rec["idx_n"] = momcert::to_json(*r.idx_n);
    } else {
      rec["idx"] = momcert::to_json(r.idx_m);
    }
    records.push_back(std::move(rec));
  }
  return {{"pass", report.pass},
          {"max_residual", report.max_residual},
          {"records", records}};
}

json to_json(const momcert::ParallelogramReport& report) {
  json records = json::array();
  for (const auto& r : report.records) {
    records.push_back({{"xi", momcert::to_json(r.xi)},
                       {"eta", momcert::to_json(r.eta)},
                       {"min_weight", r.min_weight},
                       {"scale", r.scale},
                       {"pass", r.pass}});
  }
  json out{{"pass", report.pass}, {"records", records}};
  if (report.zero_member_mass) {
    out["zero_member_mass"] = *report.zero_member_mass;
    out["zero_member_pass"] = report.zero_member_pass;
  }
  return out;
}

json to_json(const momcert::SesquilinearReport& report) {
  json regions = json::array();
  for (const auto& r : report.region_records) {
    regions.push_back({{"region", r.region},
                       {"hermitian_defect", r.hermitian_defect},
                       {"min_eigenvalue", r.min_eigenvalue},
                       {"max_schwarz_excess", r.max_schwarz_excess},
                       {"pass", r.pass}});
  }
  json diagonals = json::array();
  for (const auto& r : report.diagonal_records) {
    diagonals.push_back({{"xi", momcert::to_json(r.xi)},
                         {"form_mass", r.form_mass},
                         {"seminorm_sq", r.seminorm_sq},
                         {"residual", r.residual},
                         {"pass", r.pass}});
  }
  json homogeneity = json::array();
  for (const auto& r : report.homogeneity_records) {
    homogeneity.push_back({{"xi", momcert::to_json(r.xi)},
                           {"factor", momcert::to_json(r.factor)},
                           {"max_atom_defect", r.max_atom_defect},
                           {"pass", r.pass}});
  }
  return {{"pass", report.pass},
          {"regions", regions},
          {"diagonal_masses", diagonals},
          {"homogeneity", homogeneity}};
}

}  // namespace

extern "C" {

const char* momcert_version(void) { return momcert::kVersion; }

const char* momcert_last_error(void) { return g_last_error.c_str(); }

void momcert_string_free(char* text) { delete[] text; }

/* --- handles ---------------------------------------------------------------- */

momcert_status momcert_measure_from_json(const char* json_text, momcert_measure** out) {
  return guarded([&]() -> momcert_status {
    if (!json_text || !out) throw momcert::Error("null argument");
    *out = new momcert_measure{momcert::measure_from_json(momcert::parse_json(json_text))};
    return MOMCERT_OK;
  });
}

momcert_status momcert_measure_to_json(const momcert_measure* measure, char** out) {
  return guarded([&]() -> momcert_status {
    if (!measure || !out) throw momcert::Error("null argument");
    *out = dup_string(momcert::to_json(measure->value).dump(2));
    return MOMCERT_OK;
  });
}

void momcert_measure_free(momcert_measure* measure) { delete measure; }

momcert_status momcert_sequence_from_json(const char* json_text, momcert_sequence** out) {
  return guarded([&]() -> momcert_status {
    if (!json_text || !out) throw momcert::Error("null argument");
    *out = new momcert_sequence{momcert::sequence_from_json(momcert::parse_json(json_text))};
    return MOMCERT_OK;
  });
}

momcert_status momcert_sequence_to_json(const momcert_sequence* sequence, char** out) {
  return guarded([&]() -> momcert_status {
    if (!sequence || !out) throw momcert::Error("null argument");
    *out = dup_string(momcert::to_json(sequence->value).dump(2));
    return MOMCERT_OK;
  });
}

void momcert_sequence_free(momcert_sequence* sequence) { delete sequence; }

momcert_status momcert_family_from_json(const char* json_text, momcert_family** out) {
  return guarded([&]() -> momcert_status {
    if (!json_text || !out) throw momcert::Error("null argument");
    *out = new momcert_family{momcert::family_from_json(momcert::parse_json(json_text))};
    return MOMCERT_OK;
  });
}

momcert_status momcert_family_to_json(const momcert_family* family, char** out) {
  return guarded([&]() -> momcert_status {
    if (!family || !out) throw momcert::Error("null argument");
    *out = dup_string(momcert::to_json(family->value).dump(2));
    return MOMCERT_OK;
  });
}

void momcert_family_free(momcert_family* family) { delete family; }

/* --- operations ------------------------------------------------------------- */

momcert_status momcert_moments(const momcert_measure* measure, unsigned max_degree,
                               momcert_sequence** out) {
  return guarded([&]() -> momcert_status {
    if (!measure || !out) throw momcert::Error("null argument");
    *out = new momcert_sequence{momcert::moments_of(measure->value, max_degree)};
    return MOMCERT_OK;
  });
}

momcert_status momcert_localize(const momcert_sequence* sequence, const char* xi_json,
                                momcert_sequence** out) {
  return guarded([&]() -> momcert_status {
    if (!sequence || !xi_json || !out) throw momcert::Error("null argument");
    const momcert::CoefficientVector xi = momcert::coefficient_vector_from_json(
        momcert::parse_json(xi_json), sequence->value.dim());
    *out = new momcert_sequence{momcert::localize(sequence->value, xi)};
    return MOMCERT_OK;
  });
}

momcert_status momcert_check_psd(const momcert_sequence* sequence, unsigned order,
                                 double tol, char** report_json) {
  return guarded([&]() -> momcert_status {
    if (!sequence) throw momcert::Error("null argument");
    const momcert::PsdReport report =
        momcert::check_positive_definite(sequence->value, order, tol);
    json out = report_head("check-psd", tol);
    out["order"] = report.order;
    out["min_eigenvalue"] = report.min_eigenvalue;
    out["spectral_norm"] = report.spectral_norm;
    out["verdict"] = report.pass ? "pass" : "fail";
    emit(out, report_json);
    return report.pass ? MOMCERT_OK : MOMCERT_VIOLATION;
  });
}

momcert_status momcert_certify_generate(const momcert_measure* measure,
                                        const char* xi_set_json, momcert_family** out) {
  return guarded([&]() -> momcert_status {
    if (!measure || !xi_set_json || !out) throw momcert::Error("null argument");
    const auto xi_set = momcert::xi_set_from_json(momcert::parse_json(xi_set_json),
                                                  measure->value.dim());
    if (xi_set.empty()) throw momcert::Error("certify generate needs a nonempty xi set");
    *out = new momcert_family{
        momcert::generate_certificate(measure->value, momcert::audit_closure(xi_set))};
    return MOMCERT_OK;
  });
}

momcert_status momcert_certify_verify(const momcert_family* family,
                                      const momcert_sequence* sequence,
                                      const char* basis_json, double tol,
                                      char** report_json) {
  return guarded([&]() -> momcert_status {
    if (!family || !sequence) throw momcert::Error("null argument");
    const momcert::MeasureFamily& fam = family->value;
    const momcert::TruncatedSequence& seq = sequence->value;

    const momcert::MomentConditionReport moments =
        momcert::verify_moment_conditions(fam, seq, tol);
    const momcert::ParallelogramReport parallelogram =
        momcert::verify_parallelogram_positivity(fam, momcert::derivable_pairs(fam), tol);

    bool pass = moments.pass && parallelogram.pass;
    json out = report_head("certify-verify", tol);
    out["moment_conditions"] = to_json(moments);
    out["parallelogram"] = to_json(parallelogram);

    if (basis_json) {
      const auto basis =
          momcert::xi_set_from_json(momcert::parse_json(basis_json), fam.dim());
      // Single-atom regions over the union of member supports.
      std::vector<momcert::SignedAtom> support;
      for (const auto& [xi, mu] : fam.members())
        for (const momcert::Atom& a : mu.atoms())
          support.push_back({a.point, momcert::Scalar{1.0, 0.0}});
      const momcert::SignedAtomicMeasure merged(fam.dim(), fam.kind(), std::move(support));
      std::vector<std::vector<momcert::Point>> regions;
      for (const momcert::SignedAtom& a : merged.atoms()) regions.push_back({a.point});
      const momcert::SesquilinearReport sesq =
          momcert::sesquilinear_audit(fam, basis, regions, seq, tol, true);
      out["sesquilinear"] = to_json(sesq);
      pass = pass && sesq.pass;
    }

    out["pass"] = pass;
    emit(out, report_json);
    return pass ? MOMCERT_OK : MOMCERT_VIOLATION;
  });
}

momcert_status momcert_certify_solve(const momcert_sequence* sequence,
                                     const char* xi_set_json, double tol,
                                     char** report_json, momcert_family** family_out) {
  return guarded([&]() -> momcert_status {
    if (!sequence || !xi_set_json) throw momcert::Error("null argument");
    const auto xi_set = momcert::xi_set_from_json(momcert::parse_json(xi_set_json),
                                                  sequence->value.dim());
    json out = report_head("certify-solve", tol);
    try {
      momcert::SolveFamilyResult result =
          momcert::solve_family(sequence->value, xi_set, tol);
      json records = json::array();
      for (const auto& r : result.records) {
        records.push_back({{"xi", momcert::to_json(r.xi)},
                           {"feasible", r.feasible},
                           {"atom_count", r.atom_count},
                           {"max_target_residual", r.max_target_residual}});
      }
      out["feasible"] = true;
      out["records"] = records;
      out["constraint_report"] = to_json(result.constraint_report);
      out["all_pairs_pass"] = result.constraint_report.pass;
      emit(out, report_json);
      if (family_out) *family_out = new momcert_family{std::move(result.family)};
      return MOMCERT_OK;
    } catch (const momcert::FamilyInfeasibleError& e) {
      json infeasible = json::array();
      for (const auto& [xi, witness] : e.infeasible) {
        infeasible.push_back(
            {{"xi", momcert::to_json(xi)}, {"witness", momcert::witness_json(witness)}});
      }
      out["feasible"] = false;
      out["infeasible"] = infeasible;
      out["message"] = e.what();
      emit(out, report_json);
      set_error(e.what());
      if (family_out) *family_out = nullptr;
      return MOMCERT_VIOLATION;
    }
  });
}

momcert_status momcert_dilate(const momcert_family* family, const char* basis_json,
                              const momcert_sequence* sequence, double tol,
                              char** report_json) {
  return guarded([&]() -> momcert_status {
    if (!family || !basis_json) throw momcert::Error("null argument");
    const momcert::MeasureFamily& fam = family->value;
    const auto basis =
        momcert::xi_set_from_json(momcert::parse_json(basis_json), fam.dim());
    if (basis.empty()) throw momcert::Error("dilate needs a nonempty basis");
    unsigned order = 0;
    for (const auto& xi : basis) order = std::max(order, xi.degree());

    // Without a sequence the comparison data comes from the member at the
    // constant vector, which for a certificate family is the base measure.
    std::optional<momcert::TruncatedSequence> implied;
    if (!sequence) {
      const momcert::CoefficientVector constant =
          momcert::CoefficientVector::unit(momcert::MultiIndex::zero(fam.dim()));
      const momcert::AtomicMeasure* base = fam.find(constant);
      if (!base)
        throw momcert::IncompletenessError(
            "dilate without a sequence needs the member at the constant vector",
            {momcert::to_json(constant).dump()});
      const unsigned degree =
          fam.kind() == momcert::Kind::real
              ? std::min(2 * order + 2, momcert::kMaxSequenceDegree)
              : std::max(order, 1u);
      implied = momcert::moments_of(*base, degree);
    }
    const momcert::TruncatedSequence& seq = sequence ? sequence->value : *implied;

    json out = report_head("dilate", tol);
    try {
      const momcert::DilationPipelineResult result =
          momcert::dilation_pipeline(fam, seq, basis, tol);

      json blocks = json::array();
      for (std::size_t j = 0; j < result.semispectral.blocks.size(); ++j) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
            result.semispectral.blocks[j], Eigen::EigenvaluesOnly);
        const auto& block = result.semispectral.blocks[j];
        json entries = json::array();
        for (Eigen::Index r = 0; r < block.rows(); ++r)
          for (Eigen::Index c = 0; c < block.cols(); ++c)
            entries.push_back({{"re", block(r, c).real()}, {"im", block(r, c).imag()}});
        blocks.push_back({{"atom", j},
                          {"rows", block.rows()},
                          {"entries", entries},
                          {"min_eigenvalue", solver.eigenvalues().minCoeff()}});
      }

      // Projection algebra measured on the materialized projections.
      double projection_defect = 0.0;
      const auto& dil = result.dilation;
      for (std::size_t j = 0; j < dil.spans.size(); ++j) {
        const Eigen::MatrixXcd ej = dil.projection(j);
        projection_defect =
            std::max(projection_defect, (ej * ej - ej).cwiseAbs().maxCoeff());
        projection_defect =
            std::max(projection_defect, (ej - ej.adjoint()).cwiseAbs().maxCoeff());
        for (std::size_t k = j + 1; k < dil.spans.size(); ++k)
          projection_defect = std::max(
              projection_defect, (ej * dil.projection(k)).cwiseAbs().maxCoeff());
      }

      const bool pass = result.max_reconstruction_residual <= tol &&
                        result.max_dilation_defect <= tol &&
                        result.max_compression_defect <= tol && projection_defect <= tol;
      out["atom_count"] = result.semispectral.points.size();
      out["block_dim"] = result.semispectral.total.rows();
      out["dilation_dim"] = dil.space_dim;
      out["blocks"] = blocks;
      out["dilation_defect"] = result.max_dilation_defect;
      out["projection_defect"] = projection_defect;
      out["compression_defect"] = result.max_compression_defect;
      out["reconstruction_residual"] = result.max_reconstruction_residual;
      out["pass"] = pass;
      emit(out, report_json);
      return pass ? MOMCERT_OK : MOMCERT_VIOLATION;
    } catch (const momcert::PositivityError& e) {
      out["pass"] = false;
      out["defect"] = e.what();
      emit(out, report_json);
      set_error(e.what());
      return MOMCERT_VIOLATION;
    }
  });
}

momcert_status momcert_weak_limit_demo(double tol, char** report_json) {
  return guarded([&]() -> momcert_status {
    // The bundled suites converge at a 1/sqrt(k) rate; the proxy tolerance
    // cannot be tighter than that.
    const double effective_tol = std::max(tol, momcert::kBundledSuiteTol);
    json out = report_head("weak-limit-demo", effective_tol);
    bool all_match = true;
    bool any_falsification = false;

    json part1 = json::array();
    for (const momcert::Part1Suite& suite : momcert::bundled_part1_suites()) {
      const momcert::Part1Report r =
          momcert::audit_part1(suite.sequence, suite.limit, suite.phi, suite.c,
                               suite.test_functions, effective_tol);
      const bool match =
          r.a_holds == suite.expect_a && r.b_holds == suite.expect_b &&
          r.c_holds == suite.expect_c;
      all_match = all_match && match;
      any_falsification = any_falsification || r.falsification;
      part1.push_back({{"suite", suite.name},
                       {"a_weak_convergence", r.a_holds},
                       {"b_uniform_bound", r.b_holds},
                       {"c_limit_bound", r.c_holds},
                       {"falsification", r.falsification},
                       {"matches_documented", match}});
    }
    json part2 = json::array();
    for (const momcert::Part2Suite& suite : momcert::bundled_part2_suites()) {
      const momcert::Part2Report r =
          momcert::audit_part2(suite.sequence, suite.limit, suite.phi, suite.a, suite.c,
                               suite.test_functions, effective_tol);
      const bool match = r.a_holds == suite.expect_a && r.b_holds == suite.expect_b &&
                         r.c_holds == suite.expect_c && r.d_holds == suite.expect_d;
      all_match = all_match && match;
      any_falsification = any_falsification || r.falsification;
      part2.push_back({{"suite", suite.name},
                       {"a_weak_convergence", r.a_holds},
                       {"b_integral_converges", r.b_holds},
                       {"c_square_bound", r.c_holds},
                       {"d_limit_integral", r.d_holds},
                       {"falsification", r.falsification},
                       {"matches_documented", match}});
    }
    out["part1"] = part1;
    out["part2"] = part2;
    const bool pass = all_match && !any_falsification;
    out["pass"] = pass;
    emit(out, report_json);
    if (!pass) set_error("weak-limit suites deviated from their documented verdicts");
    return pass ? MOMCERT_OK : MOMCERT_VIOLATION;
  });
}

}  // extern "C"
