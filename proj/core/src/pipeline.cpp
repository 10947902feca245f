#include "hexsub/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace hexsub {

namespace {

void say(const PipelineOptions& opt, const std::string& line) {
  if (!opt.quiet) std::printf("%s\n", line.c_str());
}

bool is_zero(const Vector& v) {
  for (double x : v)
    if (x != 0.0) return false;
  return true;
}

}  // namespace

int run_pipeline(const ProblemConfig& cfg, const std::optional<DomainConfig>& domain,
                 const std::string& out_dir, const PipelineOptions& opt) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  auto path = [&](const char* name) { return (fs::path(out_dir) / name).string(); };

  const CandidateMatrix A = cfg.make_matrix();
  const AdmissibilityReport report = analyze(cfg.operator_spec, A, cfg.level_tolerance());
  write_file(path("check.json"), report_to_json(cfg.operator_spec, report, cfg.delta));
  if (!report.in_A) {
    say(opt, "check: not admissible (" + report.reason + ")");
    return 1;
  }
  const double alpha = alpha_delta(report, cfg.delta);
  if (!(alpha > 1.0)) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "check: alpha_delta = %.6g <= 1; delta_max = %.17g", alpha,
                  report.delta_max);
    say(opt, buf);
    return 1;
  }
  say(opt, "check: admissible, alpha_delta = " + std::to_string(alpha));

  // frame reduction: everything downstream runs on the ascending eigenvalues
  const ReducedProblem reduced = reduce_frame(cfg.operator_spec, A, cfg.b, cfg.level_tolerance());
  if (!A.is_diagonal() || !is_zero(cfg.b)) {
    std::string fj = "{\n  \"t\": [";
    for (std::size_t i = 0; i < reduced.frame.t.size(); ++i) {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%s%.17g", i ? ", " : "", reduced.frame.t[i]);
      fj += buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "],\n  \"c_shift\": %.17g\n}\n", reduced.frame.c_shift);
    fj += buf;
    write_file(path("frame.json"), fj);
  }

  if (report.level_residual > 1e-9) {
    say(opt,
        "subsolve: level residual too large for profile integration; re-solve the matrix onto "
        "the level set (exact mode)");
    return 1;
  }

  GContext ctx = make_context(cfg.operator_spec, report);
  const WProfile prof = integrate_w(ctx, cfg.c2, cfg.delta, cfg.s_max, cfg.tol.rel_tol);
  UProfile uprof = build_u(prof, cfg.c1);
  write_file(path("profile.csv"), profile_to_csv(uprof));
  {
    std::string summary = "{\n";
    char buf[256];
    std::snprintf(buf, sizeof(buf), "  \"c1\": %.17g,\n  \"c2\": %.17g,\n  \"delta\": %.17g,\n",
                  cfg.c1, cfg.c2, cfg.delta);
    summary += buf;
    std::snprintf(buf, sizeof(buf), "  \"mu\": %.17g,\n  \"alpha_delta\": %.17g", uprof.mu,
                  uprof.alpha);
    summary += buf;
    if (cfg.s_max >= 1e5 && cfg.c2 > 1.0) {
      std::snprintf(buf, sizeof(buf), ",\n  \"fitted_exponent\": %.17g",
                    decay_exponent_fit(prof));
      summary += buf;
    }
    summary += "\n}\n";
    write_file(path("profile_summary.json"), summary);
  }
  say(opt, "subsolve: profile written, mu = " + std::to_string(uprof.mu));

  VerificationReport vrep = verify_profile(ctx, uprof);
  write_file(path("verify.json"), verification_to_json(vrep));
  if (!vrep.certified) {
    say(opt, "verify: certification failed (" + vrep.detail + ")");
    return 2;
  }
  say(opt, "verify: certified beyond s_bar = " + std::to_string(vrep.sbar_found));

  if (domain) {
    if (!is_zero(cfg.b)) {
      say(opt, "perron: centered domains require b = 0 in this build");
      return 1;
    }
    DomainSpec dom = domain->dom;
    BoundaryData phi = domain->phi;
    if (!A.is_diagonal()) {
      // rotate the domain and data into the diagonal frame
      const Matrix& V = reduced.frame.V;
      dom.B = V.transposed() * dom.B * V;
      phi.Q = V.transposed() * phi.Q * V;
      phi.b = V.transposed() * phi.b;
    }
    const Glue glue = build_glue(ctx, dom, phi, cfg.delta, opt.perron_c);
    const SandwichReport srep = sandwich_check(glue);
    write_file(path("glue_report.json"), sandwich_to_json(glue.cfg, srep));
    if (!srep.pass) {
      say(opt, "perron: sandwich check failed");
      return 2;
    }
    say(opt, "perron: sandwich verified, c_star = " + std::to_string(glue.cfg.c_star));
  }
  return 0;
}

}  // namespace hexsub
