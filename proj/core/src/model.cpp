#include "halldec/model.hpp"

#include <stdexcept>

#include "halldec/propagators.hpp"

namespace halldec {

namespace {

struct Effective {
    Consistency consistency;
    std::optional<int> hall_cap;
    bool as_clique;  // method Bi turns alldifferent/permutation into a clique
};

Effective effective(const ConstraintDecl& c, const BuildOptions& opt) {
    Effective eff;
    eff.consistency = opt.consistency.value_or(c.consistency);
    eff.hall_cap = opt.hall_cap ? opt.hall_cap : c.hall_cap;
    eff.as_clique = false;
    bool hall_kind = c.kind == Kind::AllDifferent || c.kind == Kind::Permutation;
    if (hall_kind && opt.method != Method::AsDeclared) {
        switch (opt.method) {
            case Method::Bi: eff.as_clique = true; break;
            case Method::Hi: eff.hall_cap = std::nullopt; break;
            case Method::HiK: eff.hall_cap = opt.method_k; break;
            default: break;
        }
    }
    return eff;
}

void merge(DecompositionReport& into, const DecompositionReport& r) {
    into.occupancy_vars += r.occupancy_vars;
    into.bound_vars += r.bound_vars;
    into.count_vars += r.count_vars;
    into.propagators += r.propagators;
}

}  // namespace

BuiltModel build_model(Engine& e, const InstanceFile& f, const BuildOptions& opt) {
    std::vector<bool> needs_values(f.vars.size(), false);
    for (std::size_t i = 0; i < f.vars.size(); ++i)
        if (f.vars[i].ranges.size() > 1) needs_values[i] = true;
    for (const auto& c : f.constraints) {
        Effective eff = effective(c, opt);
        bool value_level;
        switch (c.kind) {
            case Kind::BiClique: value_level = true; break;
            case Kind::AbsDiff: value_level = false; break;
            case Kind::AllDifferent:
            case Kind::Permutation:
                value_level = eff.as_clique || eff.consistency == Consistency::RC;
                break;
            default:
                value_level = eff.consistency == Consistency::RC;
                break;
        }
        if (value_level)
            for (const auto& name : c.scope) needs_values[f.var_index(name)] = true;
    }

    BuiltModel m;
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        const VarDecl& v = f.vars[i];
        int lo = v.ranges.front().lo, hi = v.ranges.back().hi;
        if (needs_values[i] && hi - lo + 1 > 64)
            throw std::runtime_error("variable '" + v.name +
                                     "' needs value-level pruning but spans > 64 values");
        VarId x = e.new_int(lo, hi, needs_values[i], v.name);
        for (std::size_t r = 0; r + 1 < v.ranges.size(); ++r)
            for (int val = v.ranges[r].hi + 1; val < v.ranges[r + 1].lo; ++val)
                e.remove_value(x, val);
        m.vars.push_back(x);
    }

    for (const auto& c : f.constraints) {
        Effective eff = effective(c, opt);
        std::vector<VarId> scope;
        for (const auto& name : c.scope) scope.push_back(m.vars[f.var_index(name)]);
        switch (c.kind) {
            case Kind::AllDifferent:
                if (eff.as_clique)
                    merge(m.report, post_bi_clique(e, scope));
                else if (eff.consistency == Consistency::RC)
                    merge(m.report, post_alldiff_rc(e, scope, eff.hall_cap));
                else
                    merge(m.report, post_alldiff_bc(e, scope, eff.hall_cap));
                break;
            case Kind::Permutation:
                if (eff.as_clique)
                    merge(m.report, post_bi_clique(e, scope));
                else
                    merge(m.report, post_permutation(e, scope, eff.consistency, eff.hall_cap));
                break;
            case Kind::Gcc:
                merge(m.report, post_gcc(e, scope, c.lower, c.upper, eff.consistency));
                break;
            case Kind::Same: {
                std::span<const VarId> s(scope);
                merge(m.report, post_same(e, s.subspan(0, c.split), s.subspan(c.split),
                                          eff.consistency));
                break;
            }
            case Kind::BiClique:
                merge(m.report, post_bi_clique(e, scope));
                break;
            case Kind::AbsDiff:
                post_abs_diff(e, scope[0], scope[1], scope[2]);
                m.report.propagators += 1;
                break;
        }
    }
    return m;
}

}  // namespace halldec
