#pragma once

#include "toriclg/rational.hpp"

#include <optional>
#include <vector>

namespace toriclg {

/// Dense exact feasibility problems solved by phase-one simplex with
/// Bland's rule (terminates without cycling).

/// Some x >= 0 with A x = b, or nullopt.
std::optional<std::vector<Rational>> find_nonnegative_solution(
    const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
    std::size_t variables);

/// Some unconstrained x with  A_ge x >= b_ge  and  A_eq x = b_eq, or nullopt.
std::optional<std::vector<Rational>> find_feasible_point(
    const std::vector<std::vector<Rational>>& a_ge, const std::vector<Rational>& b_ge,
    const std::vector<std::vector<Rational>>& a_eq, const std::vector<Rational>& b_eq,
    std::size_t variables);

}  // namespace toriclg
