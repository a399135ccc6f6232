#pragma once

#include <optional>
#include <span>
#include <vector>

#include "halldec/constraints.hpp"
#include "halldec/engine.hpp"

namespace halldec {

struct DecompositionReport {
    int occupancy_vars = 0;
    int bound_vars = 0;
    int count_vars = 0;
    int propagators = 0;
};

/// Interval-occupancy decomposition of AllDifferent. RC uses value-level
/// interval channels; BC goes through the bound-literal representation.
/// `hall_cap` limits the width of the intervals whose sum constraints
/// (and channels) are posted.
DecompositionReport post_alldiff_rc(Engine& e, std::span<const VarId> xs,
                                    std::optional<int> hall_cap = std::nullopt);
DecompositionReport post_alldiff_bc(Engine& e, std::span<const VarId> xs,
                                    std::optional<int> hall_cap = std::nullopt);

/// AllDifferent specialised to n consecutive values: interval sums become
/// equalities, which can prune strictly more than RC.
DecompositionReport post_permutation(Engine& e, std::span<const VarId> xs,
                                     Consistency consistency,
                                     std::optional<int> hall_cap = std::nullopt);

/// Global cardinality over values 1..m with per-value occurrence bounds.
/// Count variables N[l,u] are linked by sums and prefix triangles.
DecompositionReport post_gcc(Engine& e, std::span<const VarId> xs,
                             const std::vector<int>& lower, const std::vector<int>& upper,
                             Consistency consistency);

/// Same(xs, ys): ys is a permutation of xs. With `share_counts` both
/// families feed one N[l,u] family; without it each family gets its own
/// (two independent eGCC-style views, no cross pruning).
DecompositionReport post_same(Engine& e, std::span<const VarId> xs, std::span<const VarId> ys,
                              Consistency consistency, bool share_counts = true);

/// Baseline clique of binary disequalities.
DecompositionReport post_bi_clique(Engine& e, std::span<const VarId> xs);

}  // namespace halldec
