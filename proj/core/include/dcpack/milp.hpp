#pragma once

#include <filesystem>
#include <iosfwd>

#include "dcpack/feasibility.hpp"

namespace dcpack {

// Writes the binary-encoded grid model in CPLEX LP syntax (feasibility only,
// empty objective). Per circle: Theta-bit coordinate vectors
// (alpha/beta restricted, gamma/omega relaxed) and one-hot candidate
// selectors (psi/eta) linked to the bit vectors by equalities. Per pair:
// one-hot frontier selectors (pi/Pi) and four one-hot sign-pattern binaries
// that make the offset bounds hold on |delta i| and |delta j|.
void export_milp(const FeasibilityProblem& problem, std::ostream& out);
void export_milp(const FeasibilityProblem& problem,
                 const std::filesystem::path& destination);

}  // namespace dcpack
