// Command-line front end for the momcert shared library. Everything flows
// through the C API: files in, JSON out, exit code from the status
// (0 = checks pass, 1 = operational error, 2 = certified violation).

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "momcert.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_output(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + output_path);
  out << text << "\n";
}

int fail(const char* context) {
  std::cerr << "error: " << context << ": " << momcert_last_error() << "\n";
  return kExitError;
}

struct StringOut {
  char* text = nullptr;
  ~StringOut() { momcert_string_free(text); }
  std::string str() const { return text ? std::string(text) : std::string(); }
};

using MeasureHandle = std::unique_ptr<momcert_measure, decltype(&momcert_measure_free)>;
using SequenceHandle = std::unique_ptr<momcert_sequence, decltype(&momcert_sequence_free)>;
using FamilyHandle = std::unique_ptr<momcert_family, decltype(&momcert_family_free)>;

MeasureHandle load_measure(const std::string& path) {
  momcert_measure* raw = nullptr;
  if (momcert_measure_from_json(read_file(path).c_str(), &raw) != MOMCERT_OK)
    throw std::runtime_error(std::string("measure ") + path + ": " + momcert_last_error());
  return MeasureHandle(raw, &momcert_measure_free);
}

SequenceHandle load_sequence(const std::string& path) {
  momcert_sequence* raw = nullptr;
  if (momcert_sequence_from_json(read_file(path).c_str(), &raw) != MOMCERT_OK)
    throw std::runtime_error(std::string("sequence ") + path + ": " + momcert_last_error());
  return SequenceHandle(raw, &momcert_sequence_free);
}

FamilyHandle load_family(const std::string& path) {
  momcert_family* raw = nullptr;
  if (momcert_family_from_json(read_file(path).c_str(), &raw) != MOMCERT_OK)
    throw std::runtime_error(std::string("family ") + path + ": " + momcert_last_error());
  return FamilyHandle(raw, &momcert_family_free);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"momcert: certification toolkit for truncated multidimensional moment problems"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("momcert ") + momcert_version());

  double tol = 1e-9;
  std::string output_path;
  app.add_option("--tol", tol, "verdict tolerance")->capture_default_str();
  app.add_option("--output", output_path, "output file (default: stdout)");

  // moments <measure> --degree D
  auto* cmd_moments = app.add_subcommand("moments", "moments of an atomic measure");
  std::string moments_measure;
  unsigned moments_degree = 4;
  cmd_moments->add_option("measure", moments_measure, "measure JSON file")->required();
  cmd_moments->add_option("--degree", moments_degree, "maximal degree")->required();

  // localize <sequence> --xi <file>
  auto* cmd_localize = app.add_subcommand("localize", "localized sequence for a coefficient vector");
  std::string localize_sequence, localize_xi;
  cmd_localize->add_option("sequence", localize_sequence, "sequence JSON file")->required();
  cmd_localize->add_option("--xi", localize_xi, "coefficient vector JSON file")->required();

  // check-psd <sequence> --order k
  auto* cmd_psd = app.add_subcommand("check-psd", "positive-definiteness test");
  std::string psd_sequence;
  unsigned psd_order = 1;
  cmd_psd->add_option("sequence", psd_sequence, "sequence JSON file")->required();
  cmd_psd->add_option("--order", psd_order, "gram order")->required();

  // certify {generate|verify|solve}
  auto* cmd_certify = app.add_subcommand("certify", "measure-family certification");
  cmd_certify->require_subcommand(1);

  auto* cmd_generate = cmd_certify->add_subcommand(
      "generate", "certificate family (audit closure) from a measure");
  std::string generate_measure, generate_xi;
  cmd_generate->add_option("measure", generate_measure, "measure JSON file")->required();
  cmd_generate->add_option("--xi", generate_xi, "xi-set JSON file")->required();

  auto* cmd_verify = cmd_certify->add_subcommand("verify", "verify a family against a sequence");
  std::string verify_family, verify_sequence, verify_xi;
  cmd_verify->add_option("family", verify_family, "family JSON file")->required();
  cmd_verify->add_option("--sequence", verify_sequence, "sequence JSON file")->required();
  cmd_verify->add_option("--xi", verify_xi,
                         "basis xi-set file enabling the full sesquilinear audit");

  auto* cmd_solve = cmd_certify->add_subcommand(
      "solve", "solve the initial truncations per xi and report (19.2)-type constraints");
  std::string solve_sequence, solve_xi, solve_family_out;
  cmd_solve->add_option("sequence", solve_sequence, "sequence JSON file")->required();
  cmd_solve->add_option("--xi", solve_xi, "xi-set JSON file")->required();
  cmd_solve->add_option("--family-output", solve_family_out, "write the solved family here");

  // dilate <family> --xi <basis> [--sequence <file>]
  auto* cmd_dilate = app.add_subcommand("dilate", "semispectral measure and Naimark dilation");
  std::string dilate_family, dilate_xi, dilate_sequence;
  cmd_dilate->add_option("family", dilate_family, "family JSON file")->required();
  cmd_dilate->add_option("--xi", dilate_xi, "basis xi-set JSON file")->required();
  cmd_dilate->add_option("--sequence", dilate_sequence, "reference sequence JSON file");

  auto* cmd_weak = app.add_subcommand("weak-limit-demo", "bundled weak-limit lemma suites");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_moments) {
      auto measure = load_measure(moments_measure);
      momcert_sequence* seq = nullptr;
      if (momcert_moments(measure.get(), moments_degree, &seq) != MOMCERT_OK)
        return fail("moments");
      SequenceHandle seq_handle(seq, &momcert_sequence_free);
      StringOut text;
      if (momcert_sequence_to_json(seq, &text.text) != MOMCERT_OK) return fail("moments");
      write_output(text.str(), output_path);
      return kExitOk;
    }

    if (*cmd_localize) {
      auto sequence = load_sequence(localize_sequence);
      momcert_sequence* localized = nullptr;
      if (momcert_localize(sequence.get(), read_file(localize_xi).c_str(), &localized) !=
          MOMCERT_OK)
        return fail("localize");
      SequenceHandle localized_handle(localized, &momcert_sequence_free);
      StringOut text;
      if (momcert_sequence_to_json(localized, &text.text) != MOMCERT_OK)
        return fail("localize");
      write_output(text.str(), output_path);
      return kExitOk;
    }

    if (*cmd_psd) {
      auto sequence = load_sequence(psd_sequence);
      StringOut report;
      const momcert_status status =
          momcert_check_psd(sequence.get(), psd_order, tol, &report.text);
      if (status == MOMCERT_ERROR) return fail("check-psd");
      write_output(report.str(), output_path);
      return status == MOMCERT_OK ? kExitOk : kExitViolation;
    }

    if (*cmd_generate) {
      auto measure = load_measure(generate_measure);
      momcert_family* family = nullptr;
      if (momcert_certify_generate(measure.get(), read_file(generate_xi).c_str(), &family) !=
          MOMCERT_OK)
        return fail("certify generate");
      FamilyHandle family_handle(family, &momcert_family_free);
      StringOut text;
      if (momcert_family_to_json(family, &text.text) != MOMCERT_OK)
        return fail("certify generate");
      write_output(text.str(), output_path);
      return kExitOk;
    }

    if (*cmd_verify) {
      auto family = load_family(verify_family);
      auto sequence = load_sequence(verify_sequence);
      std::optional<std::string> basis;
      if (!verify_xi.empty()) basis = read_file(verify_xi);
      StringOut report;
      const momcert_status status =
          momcert_certify_verify(family.get(), sequence.get(),
                                 basis ? basis->c_str() : nullptr, tol, &report.text);
      if (status == MOMCERT_ERROR) return fail("certify verify");
      write_output(report.str(), output_path);
      return status == MOMCERT_OK ? kExitOk : kExitViolation;
    }

    if (*cmd_solve) {
      auto sequence = load_sequence(solve_sequence);
      StringOut report;
      momcert_family* family = nullptr;
      const momcert_status status =
          momcert_certify_solve(sequence.get(), read_file(solve_xi).c_str(), tol,
                                &report.text, &family);
      FamilyHandle family_handle(family, &momcert_family_free);
      if (status == MOMCERT_ERROR) return fail("certify solve");
      write_output(report.str(), output_path);
      if (family && !solve_family_out.empty()) {
        StringOut family_text;
        if (momcert_family_to_json(family, &family_text.text) != MOMCERT_OK)
          return fail("certify solve");
        write_output(family_text.str(), solve_family_out);
      }
      return status == MOMCERT_OK ? kExitOk : kExitViolation;
    }

    if (*cmd_dilate) {
      auto family = load_family(dilate_family);
      SequenceHandle sequence(nullptr, &momcert_sequence_free);
      if (!dilate_sequence.empty()) sequence = load_sequence(dilate_sequence);
      StringOut report;
      const momcert_status status =
          momcert_dilate(family.get(), read_file(dilate_xi).c_str(), sequence.get(), tol,
                         &report.text);
      if (status == MOMCERT_ERROR) return fail("dilate");
      write_output(report.str(), output_path);
      return status == MOMCERT_OK ? kExitOk : kExitViolation;
    }

    if (*cmd_weak) {
      StringOut report;
      const momcert_status status = momcert_weak_limit_demo(tol, &report.text);
      if (status == MOMCERT_ERROR) return fail("weak-limit-demo");
      write_output(report.str(), output_path);
      return status == MOMCERT_OK ? kExitOk : kExitViolation;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
