// hexsub: generalized-symmetric subsolution toolkit for Hessian-family
// equations f(lambda(D^2 u)) = 1 on exterior domains.
//
// Subcommands: check, exponent, subsolve, verify, perron,
// reproduce-examples, run.

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hexsub/examples_table.hpp"
#include "hexsub/pipeline.hpp"

namespace {

using namespace hexsub;

struct GlobalFlags {
  bool json = false;
  bool quiet = false;
  std::string out;
};

void emit(const GlobalFlags& g, const std::string& machine, const std::string& human) {
  if (!g.out.empty()) write_file(g.out, machine);
  if (g.quiet) return;
  std::printf("%s", (g.json ? machine : human).c_str());
}

FamilyMode mode_from_string(const std::string& m) {
  if (m == "paper") return FamilyMode::Paper;
  if (m == "exact") return FamilyMode::Exact;
  throw CLI::ValidationError("--mode must be \"paper\" or \"exact\"");
}

int cmd_check(const GlobalFlags& g, const std::string& config_path,
              std::optional<double> delta, std::optional<std::string> mode) {
  ProblemConfig cfg = load_problem_config(config_path);
  if (mode) cfg.mode = mode_from_string(*mode);
  const CandidateMatrix A = cfg.make_matrix();
  const AdmissibilityReport rep = analyze(cfg.operator_spec, A, cfg.level_tolerance());
  const double d = delta.value_or(cfg.delta);
  const std::string js = report_to_json(cfg.operator_spec, rep, rep.in_A ? std::optional<double>(d)
                                                                         : std::nullopt);
  std::string human;
  if (rep.in_A) {
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "admissible: ratio = %.10g, delta_max = %.10g, alpha_delta(%g) = %.10g\n",
                  rep.ratio, rep.delta_max, d, alpha_delta(rep, d));
    human = buf;
  } else {
    human = "not admissible: " + rep.reason + "\n";
  }
  emit(g, js, human);
  return rep.in_A ? 0 : 1;
}

int cmd_exponent(const GlobalFlags& g, const std::string& config_path,
                 std::optional<double> delta) {
  ProblemConfig cfg = load_problem_config(config_path);
  const CandidateMatrix A = cfg.make_matrix();
  const AdmissibilityReport rep = analyze(cfg.operator_spec, A, cfg.level_tolerance());
  if (!rep.in_A) {
    emit(g, report_to_json(cfg.operator_spec, rep, std::nullopt),
         "not admissible: " + rep.reason + "\n");
    return 1;
  }
  const double d = delta.value_or(cfg.delta);
  const double a = alpha_delta(rep, d);
  const double fam = family_alpha_delta(cfg.operator_spec, rep.a, d);
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "{\n  \"delta\": %.17g,\n  \"alpha_delta\": %.17g,\n  \"two_alpha_minus_2\": "
                "%.17g,\n  \"family_alpha_delta\": %.17g,\n  \"delta_max\": %.17g\n}\n",
                d, a, 2.0 * a - 2.0, fam, rep.delta_max);
  const std::string js = buf;
  std::snprintf(buf, sizeof(buf),
                "alpha_delta(%g) = %.10g   (2 alpha - 2 = %.10g, delta_max = %.10g)\n", d, a,
                2.0 * a - 2.0, rep.delta_max);
  emit(g, js, buf);
  return a > 1.0 ? 0 : 1;
}

int cmd_subsolve(const GlobalFlags& g, const std::string& config_path,
                 std::optional<double> c1, std::optional<double> c2, std::optional<double> delta,
                 std::optional<double> smax, const std::string& out_csv) {
  ProblemConfig cfg = load_problem_config(config_path);
  if (c1) cfg.c1 = *c1;
  if (c2) cfg.c2 = *c2;
  if (delta) cfg.delta = *delta;
  if (smax) cfg.s_max = *smax;

  const CandidateMatrix A = cfg.make_matrix();
  const AdmissibilityReport rep = analyze(cfg.operator_spec, A, cfg.level_tolerance());
  if (!rep.in_A) {
    if (!g.quiet) std::printf("not admissible: %s\n", rep.reason.c_str());
    return 1;
  }
  if (!(alpha_delta(rep, cfg.delta) > 1.0)) {
    if (!g.quiet)
      std::printf("alpha_delta <= 1 at delta = %g; delta_max = %.10g\n", cfg.delta,
                  rep.delta_max);
    return 1;
  }
  GContext ctx = make_context(cfg.operator_spec, rep);
  const WProfile prof = integrate_w(ctx, cfg.c2, cfg.delta, cfg.s_max, cfg.tol.rel_tol);
  const UProfile uprof = build_u(prof, cfg.c1);
  write_file(out_csv, profile_to_csv(uprof));

  char buf[512];
  const bool fit_ok = cfg.s_max >= 1e5 && cfg.c2 > 1.0;
  const double fitted = fit_ok ? decay_exponent_fit(prof) : 0.0;
  if (fit_ok)
    std::snprintf(buf, sizeof(buf),
                  "{\n  \"mu\": %.17g,\n  \"alpha_delta\": %.17g,\n  \"fitted_exponent\": "
                  "%.17g\n}\n",
                  uprof.mu, uprof.alpha, fitted);
  else
    std::snprintf(buf, sizeof(buf), "{\n  \"mu\": %.17g,\n  \"alpha_delta\": %.17g\n}\n",
                  uprof.mu, uprof.alpha);
  const std::string js = buf;
  if (fit_ok)
    std::snprintf(buf, sizeof(buf), "mu = %.10g, alpha_delta = %.10g, fitted exponent = %.10g\n",
                  uprof.mu, uprof.alpha, fitted);
  else
    std::snprintf(buf, sizeof(buf), "mu = %.10g, alpha_delta = %.10g\n", uprof.mu, uprof.alpha);
  emit(g, js, buf);
  return 0;
}

int cmd_verify(const GlobalFlags& g, const std::string& config_path,
               const std::string& profile_path, double c2, std::optional<double> delta,
               const std::string& out_json) {
  ProblemConfig cfg = load_problem_config(config_path);
  if (delta) cfg.delta = *delta;
  const CandidateMatrix A = cfg.make_matrix();
  GContext ctx = make_context(cfg.operator_spec, A, cfg.level_tolerance());
  UProfile uprof = profile_from_data(ctx, parse_profile_csv(read_file(profile_path)), c2,
                                     cfg.delta);
  VerificationReport rep = verify_profile(ctx, uprof);
  const std::string js = verification_to_json(rep);
  if (!out_json.empty()) write_file(out_json, js);
  char buf[256];
  if (rep.certified)
    std::snprintf(buf, sizeof(buf),
                  "certified: s_bar = %.6g, min residual = %.3g, asymptotic sup = %.6g\n",
                  rep.sbar_found, rep.min_residual, rep.asymptotic_sup);
  else
    std::snprintf(buf, sizeof(buf), "certification failed: %s\n", rep.detail.c_str());
  if (!g.quiet) std::printf("%s", (g.json ? js : std::string(buf)).c_str());
  return rep.certified ? 0 : 2;
}

int cmd_perron(const GlobalFlags& g, const std::string& config_path,
               const std::string& domain_path, std::optional<double> c,
               const std::string& out_json) {
  ProblemConfig cfg = load_problem_config(config_path);
  const DomainConfig dc = load_domain_config(domain_path);
  const CandidateMatrix A = cfg.make_matrix();
  GContext ctx = make_context(cfg.operator_spec, A, cfg.level_tolerance());
  const Glue glue = build_glue(ctx, dc.dom, dc.phi, cfg.delta, c);
  const SandwichReport rep = sandwich_check(glue);
  const std::string js = sandwich_to_json(glue.cfg, rep);
  if (!out_json.empty()) write_file(out_json, js);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%s: c_star = %.6g, alpha(c) = %.6g, violations = %d, boundary gap = %.3g\n",
                rep.pass ? "sandwich verified" : "sandwich FAILED", glue.cfg.c_star,
                glue.cfg.alpha_c, rep.violations, rep.boundary_gap);
  if (!g.quiet) std::printf("%s", (g.json ? js : std::string(buf)).c_str());
  return rep.pass ? 0 : 2;
}

int cmd_reproduce(const GlobalFlags& g) {
  const auto rows = reproduce_examples();
  emit(g, examples_table_json(rows), examples_table_text(rows));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized-symmetric subsolutions of f(lambda(D^2 u)) = 1 on exterior domains"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags remain valid after the subcommand name

  GlobalFlags g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--quiet", g.quiet, "suppress stdout");
  app.add_option("--out", g.out, "write the machine-readable output to this path");

  std::string config_path, profile_path, domain_path, out_path;
  std::optional<double> delta, c1, c2opt, smax, c;
  std::optional<std::string> mode;
  double c2 = 2.0;

  auto* check = app.add_subcommand("check", "classify the matrix against the admissible set");
  check->add_option("--config", config_path, "problem config JSON")->required();
  check->add_option("--delta", delta, "decay parameter");
  check->add_option("--mode", mode, "family construction: paper|exact");

  auto* expo = app.add_subcommand("exponent", "prescribed decay exponent alpha_delta");
  expo->add_option("--config", config_path, "problem config JSON")->required();
  expo->add_option("--delta", delta, "decay parameter");

  auto* subsolve = app.add_subcommand("subsolve", "integrate the profile w and u");
  subsolve->add_option("--config", config_path, "problem config JSON")->required();
  subsolve->add_option("--c1", c1, "u(1)");
  subsolve->add_option("--c2", c2opt, "initial slope w(1)");
  subsolve->add_option("--delta", delta, "decay parameter");
  subsolve->add_option("--smax", smax, "grid endpoint");
  subsolve->add_option("--out", out_path, "profile CSV path")->required();

  auto* verify = app.add_subcommand("verify", "certify a stored profile as a subsolution");
  verify->add_option("--config", config_path, "problem config JSON")->required();
  verify->add_option("--profile", profile_path, "profile CSV")->required();
  verify->add_option("--c2", c2, "initial slope the profile was built with")->required();
  verify->add_option("--delta", delta, "decay parameter");
  verify->add_option("--out", out_path, "report JSON path");

  auto* perron = app.add_subcommand("perron", "barrier glue and sandwich check");
  perron->add_option("--config", config_path, "problem config JSON")->required();
  perron->add_option("--domain", domain_path, "domain JSON")->required();
  perron->add_option("--c", c, "prescribed additive constant (> c_star)");
  perron->add_option("--out", out_path, "glue report JSON path");

  app.add_subcommand("reproduce-examples", "exponent table for the four example families");

  std::string run_out = "hexsub-out";
  auto* run = app.add_subcommand("run", "full pipeline: check, subsolve, verify, perron");
  run->add_option("--config", config_path, "problem config JSON")->required();
  run->add_option("--domain", domain_path, "optional domain JSON");
  run->add_option("--c", c, "perron constant");
  run->add_option("--out-dir", run_out, "artifact directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand("check")) return cmd_check(g, config_path, delta, mode);
    if (app.got_subcommand("exponent")) return cmd_exponent(g, config_path, delta);
    if (app.got_subcommand("subsolve"))
      return cmd_subsolve(g, config_path, c1, c2opt, delta, smax, out_path);
    if (app.got_subcommand("verify"))
      return cmd_verify(g, config_path, profile_path, c2, delta, out_path);
    if (app.got_subcommand("perron"))
      return cmd_perron(g, config_path, domain_path, c, out_path);
    if (app.got_subcommand("reproduce-examples")) return cmd_reproduce(g);
    if (app.got_subcommand("run")) {
      ProblemConfig cfg = load_problem_config(config_path);
      std::optional<DomainConfig> dom;
      if (!domain_path.empty()) dom = load_domain_config(domain_path);
      PipelineOptions popt;
      popt.perron_c = c;
      popt.quiet = g.quiet;
      return run_pipeline(cfg, dom, run_out, popt);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hexsub: %s\n", e.what());
    return 1;
  }
  return 0;
}
