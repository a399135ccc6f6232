#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "halldec/encoder.hpp"
#include "halldec/generators.hpp"
#include "halldec/instance.hpp"

using namespace halldec;

namespace {

InstanceFile parse_str(const std::string& s) {
    std::stringstream ss(s);
    return parse_instance(ss);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE_MESSAGE(in.good(), "missing file ", path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Every total assignment drawn from the domains extends to a PB model iff it
/// satisfies the declared constraints.
void check_faithful(const InstanceFile& f, EncodeMode mode, std::optional<int> k = {}) {
    PbFormula pb = encode(f, mode, k);
    std::vector<std::vector<int>> doms;
    for (const auto& v : f.vars) doms.push_back(v.values());
    std::vector<int> vals(doms.size());
    std::vector<std::size_t> idx(doms.size(), 0);
    long total = 1;
    for (const auto& d : doms) total *= static_cast<long>(d.size());
    REQUIRE(total <= 100000);
    for (long a = 0; a < total; ++a) {
        long rest = a;
        for (std::size_t i = 0; i < doms.size(); ++i) {
            vals[i] = doms[i][rest % doms[i].size()];
            rest /= static_cast<long>(doms[i].size());
        }
        bool csp_ok = check_witness(f, vals);
        bool pb_ok = pb.eval(extend_assignment(f, pb.map, vals));
        CHECK_MESSAGE(csp_ok == pb_ok, "assignment disagreement in mode ",
                      mode == EncodeMode::Hi ? "hi" : "bi");
        if (csp_ok != pb_ok) return;
    }
}

std::set<std::string> constraint_lines(const PbFormula& pb) {
    std::set<std::string> out;
    std::stringstream ss(pb.to_opb());
    std::string line;
    std::getline(ss, line);  // skip header
    while (std::getline(ss, line)) out.insert(line);
    return out;
}

}  // namespace

TEST_CASE("golden OPB for alldifferent n=2 d=2 in hi mode") {
    InstanceFile f = parse_str("var x 1..2\nvar y 1..2\nalldifferent consistency=rc x y\n");
    PbFormula pb = encode(f, EncodeMode::Hi, 2);
    CHECK(pb.to_opb() == slurp(std::string(TEST_DATA_DIR) + "/alldiff_n2_d2_hi.opb"));
    CHECK(pb.map.to_text() == slurp(std::string(TEST_DATA_DIR) + "/alldiff_n2_d2_hi.varmap"));
}

TEST_CASE("determinism: same input, byte-identical output") {
    InstanceFile f = gen_double_wheel(3);
    PbFormula a = encode(f, EncodeMode::Hi);
    PbFormula b = encode(f, EncodeMode::Hi);
    CHECK(a.to_opb() == b.to_opb());
    CHECK(a.map.to_text() == b.map.to_text());
    CHECK(encode(f, EncodeMode::Bi).to_opb() == encode(f, EncodeMode::Bi).to_opb());
}

TEST_CASE("faithfulness on small instances, both modes") {
    std::vector<std::string> texts = {
        "var x 1..2\nvar y 1..2\nalldifferent consistency=rc x y\n",
        "var x 1..3\nvar y 1..3\nvar z 1..3\npermutation consistency=rc x y z\n",
        "var x 1..4\nvar y 2..4\nvar z 1..2 4\nalldifferent consistency=rc x y z\n",
        "var x 1..3\nvar y 1..3\nbiclique x y\n",
        "var e 0..3\nvar x 1..4\nvar y 1..4\nabsdiff e x y\n",
        "var x 0..2\nvar y 1..3\nvar e 1..2\nalldifferent consistency=rc x y\nabsdiff e x y\n",
    };
    for (const auto& t : texts) {
        InstanceFile f = parse_str(t);
        check_faithful(f, EncodeMode::Hi);
        check_faithful(f, EncodeMode::Hi, 1);
        check_faithful(f, EncodeMode::Hi, 2);
        check_faithful(f, EncodeMode::Bi);
    }
}

TEST_CASE("faithfulness on random instances n<=3 d<=4") {
    std::mt19937 rng(777);
    for (int it = 0; it < 60; ++it) {
        InstanceFile f;
        int n = 2 + static_cast<int>(rng() % 2);
        ConstraintDecl c;
        c.kind = rng() % 2 ? Kind::AllDifferent : Kind::BiClique;
        for (int i = 0; i < n; ++i) {
            int lo = 1 + static_cast<int>(rng() % 3);
            int hi = lo + static_cast<int>(rng() % (5 - lo));
            f.vars.push_back({"v" + std::to_string(i), {{lo, hi}}});
            c.scope.push_back(f.vars.back().name);
        }
        f.constraints.push_back(std::move(c));
        check_faithful(f, EncodeMode::Hi);
        check_faithful(f, EncodeMode::Hi, 1 + static_cast<int>(rng() % 3));
        check_faithful(f, EncodeMode::Bi);
    }
}

TEST_CASE("hi(k) constraints are a textual subset of hi(k+1)") {
    InstanceFile php = gen_php(5);  // 5 vars on [1,4]: widths go up to 4
    for (int k = 1; k < 5; ++k) {
        auto smaller = constraint_lines(encode(php, EncodeMode::Hi, k));
        auto larger = constraint_lines(encode(php, EncodeMode::Hi, k + 1));
        for (const auto& line : smaller) CHECK(larger.count(line) == 1);
        if (k < 4)
            CHECK(larger.size() > smaller.size());
        else
            CHECK(larger.size() == smaller.size());  // no width-5 intervals exist
    }
    auto full = constraint_lines(encode(php, EncodeMode::Hi));
    CHECK(constraint_lines(encode(php, EncodeMode::Hi, 4)) == full);
}

TEST_CASE("php(4) hi(3) carries the saturated width-3 sum") {
    PbFormula pb = encode(gen_php(4), EncodeMode::Hi, 3);
    bool found = false;
    for (const auto& c : pb.constraints) {
        if (c.equality || c.terms.size() != 4 || c.rhs != -3) continue;
        bool all_neg = true;
        for (const auto& t : c.terms) all_neg &= t.coef == -1;
        // the four A_{i,1,3} literals, each forced 1 since dom = [1,3]
        if (all_neg) found = true;
    }
    CHECK(found);
}

TEST_CASE("decode accepts both token forms and flags bad rows") {
    InstanceFile f = parse_str("var x 1..2\nvar y 1..2\nalldifferent consistency=rc x y\n");
    PbFormula pb = encode(f, EncodeMode::Bi);
    int zx1 = pb.map.z.at({1, 1}), zx2 = pb.map.z.at({1, 2});
    int zy1 = pb.map.z.at({2, 1}), zy2 = pb.map.z.at({2, 2});

    auto model = std::to_string(zx1) + " -" + std::to_string(zx2) + " -" +
                 std::to_string(zy1) + " " + std::to_string(zy2);
    CHECK(decode_model(f, pb.map, model) == std::vector<int>{1, 2});

    auto tokens = "x" + std::to_string(zx2) + " -x" + std::to_string(zx1) + " x" +
                  std::to_string(zy1) + " -x" + std::to_string(zy2);
    CHECK(decode_model(f, pb.map, tokens) == std::vector<int>{2, 1});

    try {
        decode_model(f, pb.map, std::to_string(zx1) + " " + std::to_string(zx2));
        FAIL("expected decode error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("'x'") != std::string::npos);
    }
}

TEST_CASE("gcc and same are rejected") {
    InstanceFile f =
        parse_str("var x 1..2\nvar y 1..2\ngcc lower=0,0 upper=1,1 consistency=rc x y\n");
    CHECK_THROWS_AS(encode(f, EncodeMode::Hi), std::invalid_argument);
}
