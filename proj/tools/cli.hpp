#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "zonoshape/cone.hpp"
#include "zonoshape/types.hpp"

namespace zonoshape::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

/// `args` excludes the program name. Results go to `out` (or the --out file),
/// diagnostics and usage to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Presets orthant<d>, circ3:<facets> (half-angle pi/4), wedge:(a,b),(c,d),...;
/// anything else is read as a JSON cone file.
PolyhedralCone parse_cone(const std::string& spec);

/// "1,2", "(1,2)" or "1 2".
IntVec parse_int_vector(const std::string& text);

}  // namespace zonoshape::cli
