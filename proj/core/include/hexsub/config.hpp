#pragma once
// JSON problem and domain configuration: parsing, validation, defaults.
// The JSON dependency stays inside the .cpp.

#include <optional>
#include <string>

#include "hexsub/perron.hpp"

namespace hexsub {

struct ToleranceConfig {
  std::optional<double> level;  // admissibility level tolerance
  double rel_tol = 1e-10;       // ODE per-step relative tolerance
};

struct ProblemConfig {
  explicit ProblemConfig(OperatorSpec op) : operator_spec(std::move(op)) {}

  OperatorSpec operator_spec;
  // exactly one source: explicit matrix or a named family
  std::optional<CandidateMatrix> matrix;
  std::optional<Family> family;
  double family_epsilon = 0.0;
  FamilyMode mode = FamilyMode::Exact;

  Vector b;
  double delta = 0.0;
  double c1 = 0.0;
  double c2 = 2.0;
  double s_max = 1e6;
  ToleranceConfig tol;

  CandidateMatrix make_matrix() const;
  CandidateMatrix make_matrix(FamilyMode mode_override) const;
  double level_tolerance() const;
  double level_tolerance(FamilyMode mode_override) const;
};

struct DomainConfig {
  DomainSpec dom;
  BoundaryData phi;
};

ProblemConfig parse_problem_config(const std::string& json_text);
ProblemConfig load_problem_config(const std::string& path);
DomainConfig parse_domain_config(const std::string& json_text);
DomainConfig load_domain_config(const std::string& path);

// report serialization used by the CLI and the pipeline
std::string report_to_json(const OperatorSpec& op, const AdmissibilityReport& r,
                           std::optional<double> delta);
std::string verification_to_json(const VerificationReport& r);
std::string sandwich_to_json(const GlueConfig& cfg, const SandwichReport& r);

// profile CSV: header "s,w,u", 17-significant-digit decimal columns
std::string profile_to_csv(const UProfile& profile);
struct ProfileData {
  std::vector<double> s, w, u;
};
ProfileData parse_profile_csv(const std::string& text);

// rebuilds a queryable profile from CSV data; node derivatives are
// recomputed from the ODE right-hand side
UProfile profile_from_data(const GContext& ctx, const ProfileData& data, double c2, double delta);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace hexsub
