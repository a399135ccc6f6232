#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "halldec/generators.hpp"
#include "halldec/instance.hpp"

using namespace halldec;

namespace {

InstanceFile reparse(const InstanceFile& f) {
    std::stringstream ss(print_instance(f));
    return parse_instance(ss);
}

}  // namespace

TEST_CASE("parse basic instance") {
    std::stringstream ss(R"(# a comment
var x 1..4
var y 2 5..6   # holes
alldifferent cap=2 consistency=bc x y
absdiff x x y
)");
    InstanceFile f = parse_instance(ss);
    REQUIRE(f.vars.size() == 2);
    CHECK(f.vars[1].values() == std::vector<int>{2, 5, 6});
    REQUIRE(f.constraints.size() == 2);
    CHECK(f.constraints[0].kind == Kind::AllDifferent);
    CHECK(f.constraints[0].hall_cap == 2);
    CHECK(f.constraints[0].consistency == Consistency::BC);
    CHECK(f.constraints[1].kind == Kind::AbsDiff);
    CHECK(reparse(f) == f);
}

TEST_CASE("parse errors") {
    auto parse_str = [](const std::string& s) {
        std::stringstream ss(s);
        return parse_instance(ss);
    };
    CHECK_THROWS_AS(parse_str("var x 4..1\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_str("var x 1..3\nvar x 1..3\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_str("alldifferent x\n"), std::runtime_error);  // undeclared
    CHECK_THROWS_AS(parse_str("var x 1..3\nsame consistency=bc x x\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_str("var x 1..3\ngcc lower=1 upper=1,1 x\n"), std::runtime_error);
    CHECK_THROWS_AS(parse_str("var x 1..2 2..4\n"), std::runtime_error);  // overlap
}

TEST_CASE("round trip on randomized instances") {
    std::mt19937 rng(2024);
    for (int it = 0; it < 100; ++it) {
        InstanceFile f;
        int n = 2 + static_cast<int>(rng() % 4);
        for (int i = 0; i < n; ++i) {
            VarDecl v{"v" + std::to_string(i), {}};
            int lo = static_cast<int>(rng() % 5);
            int hi = lo + 1 + static_cast<int>(rng() % 4);
            if (rng() % 2) {
                int cut = lo + static_cast<int>(rng() % (hi - lo));
                v.ranges = {{lo, cut}, {cut + 2, hi + 2}};
            } else {
                v.ranges = {{lo, hi}};
            }
            f.vars.push_back(std::move(v));
        }
        ConstraintDecl c;
        c.kind = rng() % 2 ? Kind::AllDifferent : Kind::BiClique;
        if (c.kind == Kind::AllDifferent) {
            if (rng() % 2) c.hall_cap = 1 + static_cast<int>(rng() % 3);
            c.consistency = rng() % 2 ? Consistency::RC : Consistency::BC;
        }
        for (const auto& v : f.vars) c.scope.push_back(v.name);
        f.constraints.push_back(std::move(c));
        CHECK(reparse(f) == f);
        CHECK(print_instance(reparse(f)) == print_instance(f));
    }
}

TEST_CASE("check_witness evaluates semantics directly") {
    std::stringstream ss("var x 1..3\nvar y 1..3\nvar e 0..2\nalldifferent x y\nabsdiff e x y\n");
    InstanceFile f = parse_instance(ss);
    CHECK(check_witness(f, {1, 3, 2}));
    std::string why;
    CHECK(!check_witness(f, {1, 1, 0}, &why));
    CHECK(why.find("alldifferent") != std::string::npos);
    CHECK(!check_witness(f, {1, 3, 1}, &why));  // |1-3| != 1
    CHECK(!check_witness(f, {0, 3, 2}, &why));  // 0 outside dom(x)
    CHECK(why.find('x') != std::string::npos);
}

TEST_CASE("gen_php shape and determinism") {
    InstanceFile f = gen_php(5);
    CHECK(f.vars.size() == 5);
    for (const auto& v : f.vars) CHECK(v.ranges == std::vector<Interval>{{1, 4}});
    REQUIRE(f.constraints.size() == 1);
    CHECK(f.constraints[0].kind == Kind::AllDifferent);
    CHECK(print_instance(gen_php(5)) == print_instance(f));

    InstanceFile tiny = gen_php(2);
    CHECK(tiny.vars.size() == 2);
    CHECK(tiny.vars[0].ranges == std::vector<Interval>{{1, 1}});

    CHECK_THROWS_AS(gen_php(1), std::invalid_argument);
}

TEST_CASE("gen_double_wheel shape") {
    InstanceFile f = gen_double_wheel(3);
    // DW_3: a 3-cycle joined to two hubs, q = 9 edges, 5 nodes
    int nodes = 0, edges = 0;
    for (const auto& v : f.vars) {
        if (v.name[0] == 'e' || v.name[0] == 's') {
            CHECK(v.ranges == std::vector<Interval>{{1, 9}});
            ++edges;
        } else {
            CHECK(v.ranges == std::vector<Interval>{{0, 9}});
            ++nodes;
        }
    }
    CHECK(nodes == 5);
    CHECK(edges == 9);
    int absdiffs = 0;
    for (const auto& c : f.constraints) {
        if (c.kind == Kind::AllDifferent) CHECK(c.scope.size() == 5);
        if (c.kind == Kind::Permutation) CHECK(c.scope.size() == 9);
        absdiffs += c.kind == Kind::AbsDiff;
    }
    CHECK(absdiffs == 9);
    CHECK(print_instance(gen_double_wheel(3)) == print_instance(f));
    CHECK_THROWS_AS(gen_double_wheel(2), std::invalid_argument);
}

TEST_CASE("graceful witnesses of DW_3 must use each edge difference once") {
    InstanceFile f = gen_double_wheel(3);
    // hand-built invalid labeling: all edge labels claimed 1
    std::vector<int> vals(f.vars.size(), 1);
    CHECK(!check_witness(f, vals));
}
