#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "halldec/constraints.hpp"

namespace halldec {
namespace oracle {

enum class Level { DC, RC, BC };

/// Domains as sorted explicit value sets.
using Domains = std::vector<std::vector<int>>;

/// Brute-force ground-truth enforcement of DC/RC/BC to a fixpoint.
/// Returns nullopt when the constraint is infeasible (some domain wipes out).
/// Throws std::length_error when the assignment space exceeds `cap`.
std::optional<Domains> enforce(Level level, const GlobalSpec& g, Domains doms,
                               std::uint64_t cap = 10'000'000);

/// Exhaustive solution enumeration in lexicographic order.
/// Throws std::length_error when the assignment space exceeds `cap`.
std::vector<std::vector<int>> enumerate_solutions(const GlobalSpec& g, const Domains& doms,
                                                  std::uint64_t cap = 10'000'000);

}  // namespace oracle
}  // namespace halldec
