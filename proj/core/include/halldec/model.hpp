#pragma once

#include <optional>
#include <vector>

#include "halldec/decomp.hpp"
#include "halldec/engine.hpp"
#include "halldec/instance.hpp"

namespace halldec {

enum class Method { AsDeclared, Bi, Hi, HiK };

struct BuildOptions {
    std::optional<Consistency> consistency;  // override every constraint
    std::optional<int> hall_cap;             // override every constraint
    Method method = Method::AsDeclared;      // alldifferent/permutation lowering
    int method_k = 1;                        // HiK width cap
};

struct BuiltModel {
    std::vector<VarId> vars;  // one per InstanceFile var, in declaration order
    DecompositionReport report;
};

/// Lower a declarative instance into engine variables and propagators.
/// Variables get explicit value sets when they sit under value-level pruning
/// (RC-level decompositions, disequality cliques) or have holes in their
/// declared domain; BC-only variables stay bounds-only.
BuiltModel build_model(Engine& e, const InstanceFile& f, const BuildOptions& opt = {});

}  // namespace halldec
