#pragma once

#include <vector>

#include "halldec/engine.hpp"

namespace halldec {

// Primitive propagators. Each factory posts the propagator, wires up its
// event subscriptions and returns the propagator id.

/// a=1 <=> x in [l,u], value-level on x.
int post_channel_interval(Engine& e, VarId a, VarId x, int l, int u);

/// b=1 <=> x <= l, prunes only bounds of x.
int post_channel_bound(Engine& e, VarId b, VarId x, int l);

/// a <=> (!b_lo && b_hi), all booleans.
int post_channel_conj(Engine& e, VarId a, VarId b_lo, VarId b_hi);

/// sum(as) <= cap
int post_sum_leq(Engine& e, std::vector<VarId> as, int cap);
/// sum(as) = total
int post_sum_eq(Engine& e, std::vector<VarId> as, int total);
/// n = sum(as)
int post_sum_count(Engine& e, std::vector<VarId> as, VarId n);

/// n_tot = n_left + n_right, bound consistent.
int post_triangle(Engine& e, VarId n_tot, VarId n_left, VarId n_right);

/// x != y; prunes only when one side is fixed.
int post_not_equal(Engine& e, VarId x, VarId y);

/// diff = |x - y|, bound consistent.
int post_abs_diff(Engine& e, VarId diff, VarId x, VarId y);

}  // namespace halldec
