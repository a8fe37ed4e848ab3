#pragma once

#include <string>
#include <string_view>

#include "freight/ue_solver.hpp"

namespace freight {

/// Lossless JSON form of an equilibrium solution (path sets included), so
/// reports can be regenerated without re-solving.
std::string solution_to_json(const EquilibriumSolution& solution);
EquilibriumSolution solution_from_json(std::string_view text, const std::string& source = "<json>");

}  // namespace freight
