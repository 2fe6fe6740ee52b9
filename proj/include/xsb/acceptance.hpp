#pragma once

// The release gate: each criterion is a self-contained check with its
// tolerance pinned in code. The acceptance binary runs all of them; the CLI
// `reproduce` subcommand runs one by id.

#include <string>
#include <vector>

namespace xsb::accept {

struct CriterionResult {
  std::string id;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

const std::vector<std::string>& criterion_ids();

// Throws std::invalid_argument for unknown ids.
CriterionResult run_criterion(const std::string& id);

}  // namespace xsb::accept
