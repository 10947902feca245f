#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "hexsub/pipeline.hpp"
#include "test_util.hpp"

using namespace hexsub;

namespace {

constexpr double kPi = 3.14159265358979323846;

const char* kRadialConfig = R"({
  "operator": {"type": "sigma_k", "n": 3, "k": 3},
  "matrix": {"diag": [1.0, 1.0, 1.0]},
  "delta": 0.0,
  "c1": 0.0,
  "c2": 2.0,
  "s_max": 1e6
})";

std::string temp_dir(const char* tag) {
  auto p = std::filesystem::temp_directory_path() / (std::string("hexsub-test-") + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p.string();
}

}  // namespace

TEST_CASE("problem config: parsing, defaults, and validation") {
  const ProblemConfig cfg = parse_problem_config(kRadialConfig);
  CHECK(cfg.operator_spec.kind() == OperatorKind::SigmaK);
  CHECK(cfg.delta == 0.0);
  CHECK(cfg.s_max == 1e6);
  CHECK(cfg.c2 == 2.0);
  CHECK(cfg.level_tolerance() == kExactLevelTolerance);

  // family source with mode and per-family default delta
  const ProblemConfig lf = parse_problem_config(R"({
    "operator": {"type": "lagrangian", "n": 3, "theta": "pi"},
    "matrix": {"family": "L", "epsilon": 0.035}
  })");
  CHECK(lf.operator_spec.theta() == doctest::Approx(kPi));
  CHECK(lf.delta == 0.001);
  CHECK(lf.family.has_value());
  CHECK(lf.make_matrix().eigenvalues().min() == doctest::Approx(std::tan(kPi / 3.0 - 0.035)));

  // paper-mode family defaults to the loose level tolerance
  const ProblemConfig qp = parse_problem_config(R"({
    "operator": {"type": "quotient", "n": 3, "k": 3, "l": 2},
    "matrix": {"family": "Q", "epsilon": 0.1, "mode": "paper"}
  })");
  CHECK(qp.level_tolerance() == kPaperLevelTolerance);
  CHECK(qp.level_tolerance(FamilyMode::Exact) == kExactLevelTolerance);

  CHECK_THROWS_AS(parse_problem_config("{"), std::runtime_error);
  CHECK_THROWS_AS(parse_problem_config(R"({"operator": {"type": "zigzag", "n": 3}})"),
                  std::runtime_error);
  // family must match the declared operator
  CHECK_THROWS_AS(parse_problem_config(R"({
    "operator": {"type": "sigma_k", "n": 3, "k": 2},
    "matrix": {"family": "Q"}
  })"),
                  std::runtime_error);
}

TEST_CASE("domain config parsing") {
  const DomainConfig dc = parse_domain_config(R"({
    "B": [[1,0,0],[0,1,0],[0,0,1]],
    "r": 0.5,
    "phi": {"c0": 0.25, "b": [0,0,0], "Q": [[0,0,0],[0,0,0],[0,0,0]]}
  })");
  CHECK(dc.dom.r == 0.5);
  CHECK(dc.phi.c0 == 0.25);
  CHECK(dc.dom.contains(Vector{0.1, 0.1, 0.1}));
  CHECK_FALSE(dc.dom.contains(Vector{1.0, 0.0, 0.0}));
  CHECK_THROWS_AS(parse_domain_config(R"({"B": [[1,0],[0,1]], "r": -1})"), std::runtime_error);
}

TEST_CASE("reduce_frame: diagonal, translated, and rotated inputs") {
  const OperatorSpec ma = OperatorSpec::sigma_k(3, 3);

  // diagonal with b = 0: identity map
  const ReducedProblem idp =
      reduce_frame(ma, CandidateMatrix::diagonal({1.0, 1.0, 1.0}), Vector(3, 0.0));
  for (int i = 0; i < 3; ++i) CHECK(idp.frame.t[static_cast<std::size_t>(i)] == 0.0);
  CHECK(idp.frame.c_shift == 0.0);

  // identity with b = e1: translation by -e1 and c' = c - 1/2
  const ReducedProblem tr =
      reduce_frame(ma, CandidateMatrix::diagonal({1.0, 1.0, 1.0}), Vector{1.0, 0.0, 0.0});
  CHECK(tr.frame.t[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(tr.frame.c_shift == doctest::Approx(-0.5).epsilon(1e-14));

  // conjugated diagonal recovers its spectrum and the frame round-trips the
  // quadratic (use the sigma_2 operator where diag(1,2,3)-like scales fit)
  const OperatorSpec s2 = OperatorSpec::sigma_k(3, 2);
  const Spectrum base = example_family(Family::H, 0.05, FamilyMode::Paper).eigenvalues();
  Matrix rot = Matrix::identity(3);
  {
    Matrix g1 = Matrix::identity(3), g2 = Matrix::identity(3);
    const double t1 = 0.7, t2 = -1.1;
    g1(0, 0) = g1(1, 1) = std::cos(t1);
    g1(0, 1) = -std::sin(t1);
    g1(1, 0) = std::sin(t1);
    g2(1, 1) = g2(2, 2) = std::cos(t2);
    g2(1, 2) = -std::sin(t2);
    g2(2, 1) = std::sin(t2);
    rot = g1 * g2;
  }
  const Matrix full = rot * Matrix::diagonal(base.values()) * rot.transposed();
  const Vector b{0.3, -0.2, 0.05};
  const ReducedProblem rp = reduce_frame(s2, CandidateMatrix::full(full), b);
  for (int i = 0; i < 3; ++i) CHECK(rp.report.a[i] == doctest::Approx(base[i]).epsilon(1e-10));

  testutil::Rng rng(42);
  const double c = 1.7;
  for (int trial = 0; trial < 20; ++trial) {
    const Vector y = testutil::random_positive(rng, 3, -2.0, 2.0);
    const Vector x = rp.frame.to_original(y);
    // original quadratic at x
    double qx = c;
    for (int i = 0; i < 3; ++i) {
      qx += b[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
      for (int j = 0; j < 3; ++j)
        qx += 0.5 * x[static_cast<std::size_t>(i)] * full(i, j) * x[static_cast<std::size_t>(j)];
    }
    // reduced quadratic at y
    double qy = c + rp.frame.c_shift;
    for (int i = 0; i < 3; ++i)
      qy += 0.5 * rp.report.a[i] * y[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)];
    CHECK(qx == doctest::Approx(qy).epsilon(1e-10));
    // and the map round-trips
    const Vector back = rp.frame.to_reduced(x);
    for (int i = 0; i < 3; ++i)
      CHECK(back[static_cast<std::size_t>(i)] ==
            doctest::Approx(y[static_cast<std::size_t>(i)]).epsilon(1e-12));
  }

  CHECK_THROWS_AS(reduce_frame(ma, CandidateMatrix::diagonal({1.0, 1.0, 2.0}), Vector(3, 0.0)),
                  std::invalid_argument);
}

TEST_CASE("profile CSV round trip and determinism") {
  const GContext ma =
      make_context(OperatorSpec::sigma_k(3, 3), CandidateMatrix::diagonal({1.0, 1.0, 1.0}));
  const UProfile u = build_u(integrate_w(ma, 2.0, 0.0, 1e4), 0.5);
  const std::string csv = profile_to_csv(u);

  const ProfileData data = parse_profile_csv(csv);
  CHECK(data.s.size() == u.base.nodes().size());
  for (std::size_t i = 0; i < data.s.size(); ++i) {
    CHECK(data.s[i] == u.base.nodes()[i]);  // 17 digits round-trip exactly
    CHECK(data.w[i] == u.base.node_values()[i]);
    CHECK(data.u[i] == u.u[i]);
  }

  const UProfile rebuilt = profile_from_data(ma, data, 2.0, 0.0);
  CHECK(rebuilt.c1 == 0.5);
  for (double s : {1.0, 3.0, 500.0, 9999.0}) {
    CHECK(rebuilt.value(s) == doctest::Approx(u.value(s)).epsilon(1e-13));
    CHECK(rebuilt.deriv(s) == doctest::Approx(u.deriv(s)).epsilon(1e-13));
  }

  // identical configs give identical bytes
  const UProfile u2 = build_u(integrate_w(ma, 2.0, 0.0, 1e4), 0.5);
  CHECK(profile_to_csv(u2) == csv);

  CHECK_THROWS_AS(parse_profile_csv("x,y\n1,2\n"), std::runtime_error);
}

TEST_CASE("run_pipeline: radial success and failure exits") {
  const ProblemConfig good = parse_problem_config(kRadialConfig);
  const std::string dir = temp_dir("pipeline");
  PipelineOptions opt;
  opt.quiet = true;
  CHECK(run_pipeline(good, std::nullopt, dir, opt) == 0);
  CHECK(std::filesystem::exists(dir + "/check.json"));
  CHECK(std::filesystem::exists(dir + "/profile.csv"));
  CHECK(std::filesystem::exists(dir + "/profile_summary.json"));
  CHECK(std::filesystem::exists(dir + "/verify.json"));

  // not admissible: identity misses the sigma_2 level set
  const ProblemConfig bad = parse_problem_config(R"({
    "operator": {"type": "sigma_k", "n": 3, "k": 2},
    "matrix": {"diag": [1.0, 1.0, 1.0]}
  })");
  CHECK(run_pipeline(bad, std::nullopt, temp_dir("pipeline-bad"), opt) == 1);

  // delta too large: alpha_delta <= 1
  ProblemConfig big_delta = parse_problem_config(kRadialConfig);
  big_delta.delta = 1.5;
  CHECK(run_pipeline(big_delta, std::nullopt, temp_dir("pipeline-delta"), opt) == 1);
}
