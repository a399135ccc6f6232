#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "halldec/instance.hpp"

namespace halldec {

enum class EncodeMode { Hi, Bi };

/// Bijection between structured literals and 1-based OPB indices.
/// Z_ij: X_i = j; B_ij: X_i <= j; A_ilu: X_i in [l,u]. i is 1-based here.
struct VarMap {
    std::map<std::pair<int, int>, int> z, b;
    std::map<std::tuple<int, int, int>, int> a;
    int num_vars = 0;

    std::string to_text() const;
};

struct PbTerm {
    int coef = 0;
    int var = 0;  // 1-based OPB index
};

struct PbConstraint {
    std::vector<PbTerm> terms;
    bool equality = false;  // else >=
    int rhs = 0;
};

struct PbFormula {
    VarMap map;
    std::vector<PbConstraint> constraints;

    std::string to_opb() const;
    /// vals is indexed 1..num_vars; index 0 unused.
    bool eval(const std::vector<bool>& vals) const;
};

/// Pseudo-Boolean encoding of an instance. Hi is the Hall-interval order
/// encoding (sums capped at width k when given); Bi is the direct encoding
/// with a clique of pairwise disequalities. Gcc and Same are not encodable
/// here (their count variables are not Boolean) and raise invalid_argument.
PbFormula encode(const InstanceFile& inst, EncodeMode mode,
                 std::optional<int> k = std::nullopt);

/// Truth values (indexed 1..num_vars) of the unique extension of a total
/// assignment of the original variables.
std::vector<bool> extend_assignment(const InstanceFile& inst, const VarMap& map,
                                    const std::vector<int>& xvals);

/// Read a solver model ("7 -8 ..." or "x7 -x8 ..." token forms) back into an
/// assignment of the original variables. Throws std::runtime_error naming the
/// variable whose Z row is not exactly-one.
std::vector<int> decode_model(const InstanceFile& inst, const VarMap& map,
                              const std::string& model_text);

}  // namespace halldec
