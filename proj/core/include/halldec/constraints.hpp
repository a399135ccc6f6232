#pragma once

#include <span>
#include <vector>

namespace halldec {

enum class Kind { AllDifferent, Permutation, Gcc, Same, BiClique, AbsDiff };
enum class Consistency { RC, BC };

/// Declarative description of one global constraint over a variable tuple.
/// For Same, the tuple is xs ++ ys and `split` is |xs|. For Gcc, value v
/// (1-based) must occur between lower[v-1] and upper[v-1] times. For
/// AbsDiff, the tuple is (diff, x, y).
struct GlobalSpec {
    Kind kind = Kind::AllDifferent;
    int split = 0;
    std::vector<int> lower, upper;
};

/// Direct evaluation of the constraint semantics on a total assignment.
bool satisfies(const GlobalSpec& g, std::span<const int> vals);

}  // namespace halldec
