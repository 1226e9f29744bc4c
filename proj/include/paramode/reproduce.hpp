#pragma once
// Named end-to-end examples: ex3.1, ex3.9, ex4.1, ex4.2, thm3.3-counter, thm4.3-rhs.

#include <string>
#include <vector>

#include "paramode/io.hpp"

namespace paramode::reproduce {

struct Result {
  std::string id;
  bool pass = true;
  io::json report;  // checks, tables and notes
  std::string csv;  // the main table
};

const std::vector<std::string>& ids();

/// Throws std::invalid_argument for an unknown id.
Result run(const std::string& id, const SolverOptions& opt = {});

}  // namespace paramode::reproduce
