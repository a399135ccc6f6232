#include "halldec/generators.hpp"

#include <stdexcept>

namespace halldec {

InstanceFile gen_php(int n) {
    if (n < 2) throw std::invalid_argument("gen_php needs n >= 2");
    InstanceFile f;
    ConstraintDecl c;
    c.kind = Kind::AllDifferent;
    for (int i = 1; i <= n; ++i) {
        std::string name = "p" + std::to_string(i);
        f.vars.push_back({name, {{1, n - 1}}});
        c.scope.push_back(name);
    }
    f.constraints.push_back(std::move(c));
    return f;
}

InstanceFile gen_double_wheel(int n) {
    if (n < 3) throw std::invalid_argument("gen_double_wheel needs n >= 3");
    InstanceFile f;
    int q = 3 * n;

    ConstraintDecl nodes;
    nodes.kind = Kind::AllDifferent;
    auto node = [&](const std::string& name) {
        f.vars.push_back({name, {{0, q}}});
        nodes.scope.push_back(name);
    };
    node("hub0");
    node("hub1");
    for (int i = 0; i < n; ++i) node("r" + std::to_string(i));

    ConstraintDecl edges;
    edges.kind = Kind::Permutation;
    std::vector<ConstraintDecl> links;
    auto edge = [&](const std::string& name, const std::string& u, const std::string& v) {
        f.vars.push_back({name, {{1, q}}});
        edges.scope.push_back(name);
        ConstraintDecl link;
        link.kind = Kind::AbsDiff;
        link.scope = {name, u, v};
        links.push_back(std::move(link));
    };
    for (int i = 0; i < n; ++i) {
        auto r = "r" + std::to_string(i), rn = "r" + std::to_string((i + 1) % n);
        edge("e" + std::to_string(i), r, rn);
    }
    for (int h = 0; h < 2; ++h)
        for (int i = 0; i < n; ++i)
            edge("s" + std::to_string(h) + "_" + std::to_string(i),
                 "hub" + std::to_string(h), "r" + std::to_string(i));

    f.constraints.push_back(std::move(nodes));
    f.constraints.push_back(std::move(edges));
    for (auto& l : links) f.constraints.push_back(std::move(l));
    return f;
}

}  // namespace halldec
