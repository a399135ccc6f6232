#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "halldec/constraints.hpp"

namespace halldec {

struct Interval {
    int lo = 0, hi = 0;
    bool operator==(const Interval&) const = default;
};

struct VarDecl {
    std::string name;
    std::vector<Interval> ranges;  // ordered, disjoint, non-adjacent

    std::vector<int> values() const;
    bool operator==(const VarDecl&) const = default;
};

struct ConstraintDecl {
    Kind kind = Kind::AllDifferent;
    std::vector<std::string> scope;     // Same: xs ++ ys with split = |xs|
    int split = 0;                      // Same only
    std::vector<int> lower, upper;      // Gcc only
    Consistency consistency = Consistency::RC;
    std::optional<int> hall_cap;
    bool operator==(const ConstraintDecl&) const = default;
};

struct InstanceFile {
    std::vector<VarDecl> vars;
    std::vector<ConstraintDecl> constraints;

    int var_index(const std::string& name) const;  // -1 if absent
    bool operator==(const InstanceFile&) const = default;
};

/// Line-based text format:
///   var <name> <a>..<b> [<a>..<b> ...]
///   alldifferent [cap=<k>] [consistency=rc|bc] <name>...
///   permutation [cap=<k>] [consistency=rc|bc] <name>...
///   gcc lower=<csv> upper=<csv> [consistency=rc|bc] <name>...
///   same [consistency=rc|bc] <xs>... | <ys>...
///   absdiff <e> <x> <y>
///   biclique <name>...
/// '#' starts a comment. parse(print(f)) == f.
InstanceFile parse_instance(std::istream& in);
InstanceFile parse_instance_file(const std::string& path);
std::string print_instance(const InstanceFile& f);

/// Direct semantic check of a total assignment (one value per declared
/// variable, in declaration order): domain membership + every constraint
/// evaluated by definition, with no propagators involved.
bool check_witness(const InstanceFile& f, const std::vector<int>& vals,
                   std::string* why = nullptr);

}  // namespace halldec
