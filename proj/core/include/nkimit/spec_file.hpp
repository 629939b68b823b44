#pragma once

#include <iosfwd>
#include <string>

#include "nkimit/harness.hpp"

namespace nkimit {

// Experiment spec files are line-oriented `key = value` text. Lists are
// comma-separated, `#` starts a comment, blank lines are ignored.
//
//   n = 12
//   k = 4
//   landscape_seeds = 1, 2, 3
//   topology = ring, watts_strogatz, community
//   l = 200
//   m = 14, full          # ring / watts_strogatz only; "full" means l-1
//   beta = 0, 0.2, 1      # watts_strogatz only
//   p = 0.5, 0.55, 0.6
//   replicas = 1000
//   master_seed = 42      # required
//   max_cost = 10000      # rescaled-cost failure cutoff
//   clusters = 4
//   p_in = 0.3
//   p_out = 0.001
//   update_order = shuffled       # or sequential
//   model_snapshot = current      # or trial_start
//   model_pool = neighbors_and_self  # or neighbors
//   threads = 1
//   output = results.csv
//
// Missing keys keep the ExperimentSpec defaults, except master_seed.
ExperimentSpec parse_spec(std::istream& in, const std::string& source_name = "<spec>");
ExperimentSpec load_spec(const std::string& path);

// Applies a single `key = value` assignment; used for command-line overrides.
void apply_setting(ExperimentSpec& spec, const std::string& key, const std::string& value);

}  // namespace nkimit
