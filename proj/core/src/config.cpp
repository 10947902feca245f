#include "hexsub/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hexsub {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

double parse_theta(const json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "pi") return kPi;
    throw std::runtime_error("config: theta must be a number or the literal \"pi\"");
  }
  if (!j.is_number()) throw std::runtime_error("config: theta must be a number or \"pi\"");
  return j.get<double>();
}

OperatorSpec parse_operator(const json& j) {
  if (!j.is_object() || !j.contains("type") || !j.contains("n"))
    throw std::runtime_error("config: operator needs \"type\" and \"n\"");
  const std::string type = j.at("type").get<std::string>();
  const int n = j.at("n").get<int>();
  if (type == "sigma_k") {
    if (!j.contains("k")) throw std::runtime_error("config: sigma_k operator needs \"k\"");
    return OperatorSpec::sigma_k(n, j.at("k").get<int>());
  }
  if (type == "quotient") {
    if (!j.contains("k") || !j.contains("l"))
      throw std::runtime_error("config: quotient operator needs \"k\" and \"l\"");
    return OperatorSpec::quotient(n, j.at("k").get<int>(), j.at("l").get<int>());
  }
  if (type == "lagrangian") {
    if (!j.contains("theta")) throw std::runtime_error("config: lagrangian operator needs \"theta\"");
    return OperatorSpec::lagrangian(n, parse_theta(j.at("theta")));
  }
  throw std::runtime_error("config: unknown operator type \"" + type + "\"");
}

Matrix parse_matrix_rows(const json& j) {
  if (!j.is_array() || j.empty()) throw std::runtime_error("config: matrix must be a 2d array");
  const int n = static_cast<int>(j.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw std::runtime_error("config: matrix must be square");
    for (int c = 0; c < n; ++c) m(i, c) = row.at(static_cast<std::size_t>(c)).get<double>();
  }
  return m;
}

json operator_to_json(const OperatorSpec& op) {
  json j;
  j["n"] = op.dimension();
  switch (op.kind()) {
    case OperatorKind::SigmaK:
      j["type"] = "sigma_k";
      j["k"] = op.order_k();
      break;
    case OperatorKind::Quotient:
      j["type"] = "quotient";
      j["k"] = op.order_k();
      j["l"] = op.order_l();
      break;
    case OperatorKind::Lagrangian:
      j["type"] = "lagrangian";
      j["theta"] = op.theta();
      break;
  }
  return j;
}

}  // namespace

CandidateMatrix ProblemConfig::make_matrix() const { return make_matrix(mode); }

CandidateMatrix ProblemConfig::make_matrix(FamilyMode mode_override) const {
  if (matrix) return *matrix;
  if (family) return example_family(*family, family_epsilon, mode_override);
  throw std::runtime_error("config: no matrix or family given");
}

double ProblemConfig::level_tolerance() const { return level_tolerance(mode); }

double ProblemConfig::level_tolerance(FamilyMode mode_override) const {
  if (tol.level) return *tol.level;
  if (family && mode_override == FamilyMode::Paper) return kPaperLevelTolerance;
  return kExactLevelTolerance;
}

ProblemConfig parse_problem_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("operator"))
    throw std::runtime_error("config: missing \"operator\"");

  ProblemConfig cfg{parse_operator(j.at("operator"))};
  const int n = cfg.operator_spec.dimension();

  if (j.contains("matrix")) {
    const auto& jm = j.at("matrix");
    if (jm.contains("diag")) {
      cfg.matrix = CandidateMatrix::diagonal(jm.at("diag").get<Vector>());
    } else if (jm.contains("full")) {
      cfg.matrix = CandidateMatrix::full(parse_matrix_rows(jm.at("full")));
    } else if (jm.contains("family")) {
      const auto fam = family_from_name(jm.at("family").get<std::string>());
      if (!fam) throw std::runtime_error("config: unknown family name");
      cfg.family = *fam;
      cfg.family_epsilon = jm.value("epsilon", 0.0);
      if (jm.contains("mode"))
        cfg.mode = jm.at("mode").get<std::string>() == "paper" ? FamilyMode::Paper
                                                               : FamilyMode::Exact;
      const OperatorSpec fop = family_operator(*fam);
      if (fop.kind() != cfg.operator_spec.kind() || fop.dimension() != n)
        throw std::runtime_error("config: family does not match the declared operator");
    } else {
      throw std::runtime_error("config: matrix needs \"diag\", \"full\", or \"family\"");
    }
  } else {
    throw std::runtime_error("config: missing \"matrix\"");
  }
  if (cfg.matrix && cfg.matrix->dim() != n)
    throw std::runtime_error("config: matrix dimension does not match the operator");

  cfg.b.assign(static_cast<std::size_t>(n), 0.0);
  if (j.contains("b")) {
    cfg.b = j.at("b").get<Vector>();
    if (static_cast<int>(cfg.b.size()) != n)
      throw std::runtime_error("config: b has the wrong length");
  }
  cfg.delta = j.value("delta", default_delta(cfg.operator_spec));
  cfg.c1 = j.value("c1", 0.0);
  cfg.c2 = j.value("c2", 2.0);
  cfg.s_max = j.value("s_max", 1e6);
  if (j.contains("tolerances")) {
    const auto& jt = j.at("tolerances");
    if (jt.contains("level")) cfg.tol.level = jt.at("level").get<double>();
    cfg.tol.rel_tol = jt.value("rel_tol", 1e-10);
  }
  return cfg;
}

ProblemConfig load_problem_config(const std::string& path) {
  return parse_problem_config(read_file(path));
}

DomainConfig parse_domain_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("domain config: invalid JSON: ") + e.what());
  }
  if (!j.contains("B") || !j.contains("r"))
    throw std::runtime_error("domain config: needs \"B\" and \"r\"");
  DomainConfig dc;
  dc.dom.B = parse_matrix_rows(j.at("B"));
  dc.dom.r = j.at("r").get<double>();
  if (!(dc.dom.r > 0.0)) throw std::runtime_error("domain config: r must be positive");
  const int n = dc.dom.B.rows();
  dc.phi.c0 = 0.0;
  dc.phi.b.assign(static_cast<std::size_t>(n), 0.0);
  dc.phi.Q = Matrix(n, n, 0.0);
  if (j.contains("phi")) {
    const auto& jp = j.at("phi");
    dc.phi.c0 = jp.value("c0", 0.0);
    if (jp.contains("b")) {
      dc.phi.b = jp.at("b").get<Vector>();
      if (static_cast<int>(dc.phi.b.size()) != n)
        throw std::runtime_error("domain config: phi.b has the wrong length");
    }
    if (jp.contains("Q")) dc.phi.Q = parse_matrix_rows(jp.at("Q"));
  }
  return dc;
}

DomainConfig load_domain_config(const std::string& path) {
  return parse_domain_config(read_file(path));
}

std::string report_to_json(const OperatorSpec& op, const AdmissibilityReport& r,
                           std::optional<double> delta) {
  json j;
  j["operator"] = operator_to_json(op);
  j["a"] = r.a.values();
  j["f_at_a"] = r.f_at_a;
  j["grad_at_a"] = r.grad_at_a;
  j["a_hat"] = r.a_hat;
  j["f_hat"] = r.f_hat;
  j["ratio"] = r.ratio;
  j["delta_max"] = r.delta_max;
  j["level_residual"] = r.level_residual;
  j["grad_argmax_index"] = r.grad_argmax_index;
  j["in_A"] = r.in_A;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (delta) {
    j["delta"] = *delta;
    const double a = alpha_delta(r, *delta);
    j["alpha_delta"] = a;
    j["two_alpha_minus_2"] = 2.0 * a - 2.0;
  }
  return j.dump(2) + "\n";
}

std::string verification_to_json(const VerificationReport& r) {
  json j;
  j["sbar_found"] = r.sbar_found;
  j["min_residual"] = r.min_residual;
  j["comparison_min_gap"] = r.comparison_min_gap;
  j["eigen_bound_violations"] = r.eigen_bound_violations;
  j["asymptotic_sup"] = r.asymptotic_sup;
  j["samples_used"] = r.samples_used;
  j["certified"] = r.certified;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j.dump(2) + "\n";
}

std::string sandwich_to_json(const GlueConfig& cfg, const SandwichReport& r) {
  json j;
  j["glue"] = {{"sbar", cfg.sbar},     {"shat", cfg.shat},   {"beta", cfg.beta},
               {"bhat", cfg.bhat},     {"c_star", cfg.c_star}, {"c", cfg.c},
               {"alpha_c", cfg.alpha_c}, {"delta", cfg.delta}, {"chat", cfg.chat}};
  j["sandwich"] = {{"violations", r.violations},
                   {"worst_violation", r.worst_violation},
                   {"boundary_gap", r.boundary_gap},
                   {"anchor_gap", r.anchor_gap},
                   {"far_field_worst", r.far_field_worst},
                   {"interface_jump", r.interface_jump},
                   {"omega_beta_violations", r.omega_beta_violations},
                   {"samples", r.samples},
                   {"pass", r.pass}};
  return j.dump(2) + "\n";
}

std::string profile_to_csv(const UProfile& profile) {
  const auto& s = profile.base.nodes();
  const auto& w = profile.base.node_values();
  std::string out = "s,w,u\n";
  char buf[96];
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", s[i], w[i], profile.u[i]);
    out += buf;
  }
  return out;
}

ProfileData parse_profile_csv(const std::string& text) {
  ProfileData d;
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("s,w,u", 0) != 0)
    throw std::runtime_error("profile csv: missing \"s,w,u\" header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    double s, w, u;
    if (std::sscanf(line.c_str(), "%lg,%lg,%lg", &s, &w, &u) != 3)
      throw std::runtime_error("profile csv: malformed row: " + line);
    d.s.push_back(s);
    d.w.push_back(w);
    d.u.push_back(u);
  }
  if (d.s.size() < 2) throw std::runtime_error("profile csv: too few rows");
  return d;
}

UProfile profile_from_data(const GContext& ctx, const ProfileData& data, double c2,
                           double delta) {
  WProfile prof(ctx, c2, delta);
  std::vector<double> wp(data.s.size(), 0.0);
  const double a1 = ctx.a[0];
  const double an = ctx.a.max();
  std::size_t anchor = data.s.size();
  for (std::size_t i = 0; i < data.s.size(); ++i) {
    if (data.s[i] == 1.0) anchor = i;
    if (c2 != 1.0)
      wp[i] = (g_of_w(ctx, data.w[i]) - a1 * data.w[i]) / ((2.0 * an + delta) * data.s[i]);
  }
  if (anchor == data.s.size()) throw std::runtime_error("profile csv: no row at s = 1");
  if (std::abs(data.w[anchor] - c2) > 1e-9)
    throw std::runtime_error("profile csv: w(1) does not match the declared c2");
  prof.set_nodes(data.s, data.w, std::move(wp));

  UProfile up{std::move(prof), data.u[anchor], data.u, 0.0, 0.0, 0.0};
  const double send = up.base.s_back();
  const double integral = up.base.integral_w_minus_1(1.0, send);
  const PowerLawFit fit = fit_tail(up.base, send / 10.0, send);
  double tail = 0.0;
  if (fit.amplitude > 0.0 && fit.exponent > 1.0)
    tail = fit.amplitude * std::pow(send, 1.0 - fit.exponent) / (fit.exponent - 1.0);
  up.mu = integral + tail - 1.0;
  up.alpha = ctx.alpha(delta);
  up.sbar = std::numeric_limits<double>::quiet_NaN();
  return up;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

}  // namespace hexsub
