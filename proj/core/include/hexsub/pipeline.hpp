#pragma once
// End-to-end orchestration: admissibility check, frame reduction, profile
// integration, certification, and optionally the barrier glue, with all
// artifacts written to an output directory. Deterministic for a fixed
// config. Exit codes: 0 success, 1 inadmissible input, 2 failed
// certification or sandwich.

#include <optional>
#include <string>

#include "hexsub/config.hpp"
#include "hexsub/frame.hpp"

namespace hexsub {

struct PipelineOptions {
  std::optional<double> perron_c;  // overrides the default c_star-based choice
  bool quiet = false;
};

int run_pipeline(const ProblemConfig& cfg, const std::optional<DomainConfig>& domain,
                 const std::string& out_dir, const PipelineOptions& opt = {});

}  // namespace hexsub
