#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "jetreduce/dsl.hpp"
#include "jetreduce/selftest.hpp"

namespace jetreduce::cli {

enum class Format { Text, Json, Latex };

// Canonical rendering of a form used in a report.
struct FormEntry {
  std::string name;
  std::string text;
  std::string latex;
};

// One result line. Failing statuses are "fail" and "error"; "member",
// "non_member", "manifest", "not_manifest", "holds", "violated", "skipped"
// and "info" are classifications.
struct Row {
  std::string kind;
  std::string subject;
  std::string status;
  std::optional<double> residual;            // numeric residual
  std::optional<std::string> residual_form;  // symbolic residual, canonical text
  std::optional<double> value;
  std::optional<std::string> value_text;
  std::vector<FormEntry> forms;
  std::string note;

  bool failed() const { return status == "fail" || status == "error"; }
};

struct Report {
  std::string command;
  std::vector<std::string> inputs;
  std::vector<Row> results;
  std::vector<std::string> diagnostics;  // rendered parse diagnostics
  bool parse_failed = false;

  // "pass", "fail", or "error" after a parse failure.
  std::string verdict() const;
  int exit_code() const;
};

struct Tolerances {
  double numeric = 1e-6;   // grid zero-locus and invariance residuals
  double drift = 1e-4;     // relative charge drift across slices
  double ratio_lo = 3.2;   // Richardson order window
  double ratio_hi = 4.8;
};

struct RunConfig {
  std::string command;
  std::vector<std::string> inputs;
  Format format = Format::Text;
  Tolerances tol;
  std::optional<int> jet_order;
  std::uint64_t seed = 0;
  std::optional<std::string> subject;  // restrict to one declaration
  SelftestOptions selftest;
};

// Result rows for the individual computations.
std::vector<Row> cmd_el(const Theory& T);
std::vector<Row> cmd_symmetry(const Action& act);
std::vector<Row> cmd_verify_momap(const MomentumMap& mu);
std::vector<Row> cmd_zero_locus(const MomentumMap& mu, const std::vector<const dsl::FieldDecl*>& fields,
                                const Tolerances& tol = {});
std::vector<Row> cmd_invariance(const MomentumMap& mu, const dsl::FieldDecl& field, const std::string& label,
                                const Tolerances& tol = {});
std::vector<Row> cmd_charge(const MomentumMap& mu, const std::string& label, const dsl::FieldDecl& field,
                            double slice, const Tolerances& tol = {});
std::vector<Row> cmd_selftest(const SelftestOptions& opt);

// Runs `command` over a parsed document: el, symmetry, verify-momap,
// zero-locus or check.
std::vector<Row> run_document(const std::string& command, const dsl::Document& doc, const RunConfig& cfg);

// Full pipeline over cfg.inputs (or no input for selftest).
Report run(const RunConfig& cfg);

std::string render_text(const Report& r);
std::string render_json(const Report& r);
std::string render_latex(const Report& r);
std::string render(const Report& r, Format f);

// Command-line entry point; returns the process exit code: 0 pass,
// 1 verification failure, 2 usage or parse failure, 3 internal error.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace jetreduce::cli
