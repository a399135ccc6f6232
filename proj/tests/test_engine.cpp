#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "halldec/decomp.hpp"
#include "halldec/engine.hpp"
#include "halldec/oracle.hpp"
#include "halldec/propagators.hpp"

using namespace halldec;

namespace {

std::vector<VarId> example1_vars(Engine& e) {
    return {e.new_int(3, 4, true, "X1"), e.new_int(1, 4, true, "X2"),
            e.new_int(3, 4, true, "X3"), e.new_int(2, 5, true, "X4"),
            e.new_int(1, 1, true, "X5")};
}

}  // namespace

TEST_CASE("new_int basics") {
    Engine e;
    VarId a = e.new_int(1, 1, false);
    CHECK(e.dom(a).fixed());
    VarId b = e.new_bool();
    CHECK(e.dom(b).lb == 0);
    CHECK(e.dom(b).ub == 1);
    CHECK_THROWS_AS(e.new_int(3, 2, false), std::invalid_argument);
    CHECK_THROWS_AS(e.new_int(0, 100, true), std::invalid_argument);
}

TEST_CASE("prune primitives") {
    Engine e;
    VarId x = e.new_int(1, 4, true);
    CHECK(e.remove_value(x, 1) == PruneResult::Changed);
    CHECK(e.dom(x).lb == 2);
    CHECK(e.dom(x).values() == std::vector<int>{2, 3, 4});

    VarId y = e.new_int(3, 4, false);
    CHECK(e.tighten_ub(y, 5) == PruneResult::Unchanged);

    VarId z = e.new_int(2, 2, true);
    CHECK(e.remove_value(z, 2) == PruneResult::Conflict);
    CHECK(e.in_conflict());
}

TEST_CASE("interior removal on a bounds-only variable is ignored") {
    Engine e;
    VarId x = e.new_int(1, 5, false);
    CHECK(e.remove_value(x, 3) == PruneResult::Unchanged);
    CHECK(e.dom(x).size() == 5);
    CHECK(e.remove_value(x, 1) == PruneResult::Changed);
    CHECK(e.dom(x).lb == 2);
}

TEST_CASE("conflict is sticky until pop") {
    Engine e;
    VarId x = e.new_int(1, 2, true);
    e.push();
    e.remove_value(x, 1);
    e.remove_value(x, 2);
    CHECK(e.in_conflict());
    CHECK(e.tighten_lb(x, 1) == PruneResult::Conflict);
    e.pop();
    CHECK(!e.in_conflict());
    CHECK(e.dom(x).size() == 2);
}

TEST_CASE("push/pop restores domains bit-exactly") {
    Engine e;
    VarId x = e.new_int(1, 9, true);
    VarId y = e.new_int(-3, 40, false);
    std::string root = e.serialize_domains();
    e.push();
    e.assign(x, 3);
    e.tighten_lb(y, 10);
    e.pop();
    CHECK(e.serialize_domains() == root);

    e.push();
    e.push();
    e.push();
    e.remove_value(x, 5);
    e.pop();
    e.pop();
    e.pop();
    CHECK(e.serialize_domains() == root);

    CHECK_THROWS_AS(e.pop(), std::logic_error);
}

TEST_CASE("randomized prune sequences restore exactly") {
    std::mt19937 rng(7);
    for (int it = 0; it < 50; ++it) {
        Engine e;
        for (int i = 0; i < 6; ++i) e.new_int(0, 10 + static_cast<int>(rng() % 20), i % 2 == 0);
        std::string snap = e.serialize_domains();
        e.push();
        for (int step = 0; step < 30 && !e.in_conflict(); ++step) {
            VarId v = static_cast<VarId>(rng() % 6);
            int val = static_cast<int>(rng() % 31);
            switch (rng() % 4) {
                case 0: e.tighten_lb(v, val); break;
                case 1: e.tighten_ub(v, val); break;
                case 2: e.remove_value(v, val); break;
                case 3:
                    if (e.dom(v).contains(val)) e.assign(v, val);
                    break;
            }
        }
        e.pop();
        CHECK(e.serialize_domains() == snap);
    }
}

TEST_CASE("fixpoint on example 1 with alldiff_rc reaches the RC closure") {
    Engine e;
    auto xs = example1_vars(e);
    post_alldiff_rc(e, xs);
    REQUIRE(e.propagate_fixpoint() == FixResult::Fixpoint);
    CHECK(e.dom(xs[0]).values() == std::vector<int>{3, 4});
    CHECK(e.dom(xs[1]).values() == std::vector<int>{2});
    CHECK(e.dom(xs[2]).values() == std::vector<int>{3, 4});
    CHECK(e.dom(xs[3]).values() == std::vector<int>{5});
    CHECK(e.dom(xs[4]).values() == std::vector<int>{1});
}

TEST_CASE("fixpoint on example 1 with alldiff_bc agrees without holes") {
    Engine e;
    auto xs = example1_vars(e);
    post_alldiff_bc(e, xs);
    REQUIRE(e.propagate_fixpoint() == FixResult::Fixpoint);
    CHECK(e.dom(xs[3]).values() == std::vector<int>{5});
    CHECK(e.dom(xs[1]).values() == std::vector<int>{2});
}

TEST_CASE("PHP(6) on [1,5] conflicts at the root with full alldiff_rc") {
    Engine e;
    std::vector<VarId> xs;
    for (int i = 0; i < 6; ++i) xs.push_back(e.new_int(1, 5, true));
    post_alldiff_rc(e, xs);
    CHECK(e.propagate_fixpoint() == FixResult::Conflict);
}

TEST_CASE("solve: PHP(5) with alldiff_rc is unsat without search") {
    Engine e;
    std::vector<VarId> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(e.new_int(1, 4, true));
    post_alldiff_rc(e, xs);
    auto res = e.solve(xs, Branching::Lex);
    CHECK(res.verdict == Verdict::Unsat);
    CHECK(res.stats.backtracks == 0);
}

TEST_CASE("solve: PHP(5) with bi_clique needs search") {
    Engine e;
    std::vector<VarId> xs;
    for (int i = 0; i < 5; ++i) xs.push_back(e.new_int(1, 4, true));
    post_bi_clique(e, xs);
    auto res = e.solve(xs, Branching::Lex);
    CHECK(res.verdict == Verdict::Unsat);
    CHECK(res.stats.backtracks > 0);
    // golden value under the fixed Lex value-ascending branching: each of the
    // 4! assignments to the first four vars wipes out the fifth
    CHECK(res.stats.backtracks == 24);
}

TEST_CASE("solve: sat instance returns a verified assignment") {
    Engine e;
    std::vector<VarId> xs;
    for (int i = 0; i < 4; ++i) xs.push_back(e.new_int(1, 4, true));
    post_alldiff_rc(e, xs);
    auto res = e.solve(xs, Branching::MinDomain);
    REQUIRE(res.verdict == Verdict::Sat);
    std::vector<int> sorted = res.assignment;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == std::vector<int>{1, 2, 3, 4});
}

TEST_CASE("solve: node cap yields Unknown") {
    Engine e;
    std::vector<VarId> xs;
    for (int i = 0; i < 8; ++i) xs.push_back(e.new_int(1, 7, true));
    post_bi_clique(e, xs);
    auto res = e.solve(xs, Branching::Lex, {.max_nodes = 10});
    CHECK(res.verdict == Verdict::Unknown);
}

TEST_CASE("confluence: random wake orders reach the identical fixpoint") {
    std::mt19937 rng(99);
    for (int inst = 0; inst < 5; ++inst) {
        std::vector<std::pair<int, int>> bounds;
        int n = 4 + static_cast<int>(rng() % 2);
        for (int i = 0; i < n; ++i) {
            int a = 1 + static_cast<int>(rng() % 5);
            int b = a + static_cast<int>(rng() % 3);
            bounds.push_back({a, b});
        }
        std::string reference;
        for (int order = 0; order < 100; ++order) {
            Engine e;
            e.set_shuffle_seed(order == 0 ? std::optional<std::uint32_t>{}
                                          : std::optional<std::uint32_t>{order});
            std::vector<VarId> xs;
            for (auto [a, b] : bounds) xs.push_back(e.new_int(a, b, true));
            post_alldiff_rc(e, xs);
            bool conflict = e.propagate_fixpoint() == FixResult::Conflict;
            std::string s = conflict ? "CONFLICT" : e.serialize_domains();
            if (order == 0)
                reference = s;
            else
                CHECK(s == reference);
        }
    }
}

TEST_CASE("soundness: propagation never removes a solution") {
    std::mt19937 rng(4242);
    GlobalSpec g{Kind::AllDifferent, 0, {}, {}};
    for (int inst = 0; inst < 50; ++inst) {
        int n = 3 + static_cast<int>(rng() % 3);
        std::vector<std::pair<int, int>> bounds;
        for (int i = 0; i < n; ++i) {
            int a = 1 + static_cast<int>(rng() % 5);
            int b = a + static_cast<int>(rng() % 4);
            bounds.push_back({a, b});
        }
        oracle::Domains before;
        for (auto [a, b] : bounds) {
            std::vector<int> vals;
            for (int v = a; v <= b; ++v) vals.push_back(v);
            before.push_back(vals);
        }
        auto sols_before = oracle::enumerate_solutions(g, before);

        Engine e;
        std::vector<VarId> xs;
        for (auto [a, b] : bounds) xs.push_back(e.new_int(a, b, true));
        post_alldiff_rc(e, xs);
        if (e.propagate_fixpoint() == FixResult::Conflict) {
            CHECK(sols_before.empty());
            continue;
        }
        oracle::Domains after;
        for (VarId x : xs) after.push_back(e.dom(x).values());
        auto sols_after = oracle::enumerate_solutions(g, after);
        CHECK(sols_before == sols_after);
    }
}

TEST_CASE("wake budget: channel and sum wakeups stay within the amortized bounds") {
    std::mt19937 rng(5150);
    for (int inst = 0; inst < 10; ++inst) {
        int n = 4 + static_cast<int>(rng() % 2);
        int d = 5 + static_cast<int>(rng() % 2);
        Engine e;
        std::vector<VarId> xs;
        for (int i = 0; i < n; ++i) {
            int a = 1 + static_cast<int>(rng() % d);
            int b = a + static_cast<int>(rng() % (d - a + 1));
            xs.push_back(e.new_int(a, b, true));
        }
        post_alldiff_rc(e, xs);
        e.reset_wakeup_counts();
        // one greedy dive down a branch
        if (e.propagate_fixpoint() == FixResult::Conflict) continue;
        for (VarId x : xs) {
            if (e.dom(x).fixed()) continue;
            e.push();
            e.assign(x, e.dom(x).lb);
            if (e.propagate_fixpoint() == FixResult::Conflict) break;
        }
        auto wakes = e.wakeup_counts();
        const double C = 16.0;
        CHECK(static_cast<double>(wakes["channel_interval"]) <= C * n * d * d * d);
        CHECK(static_cast<double>(wakes["sum_bool"]) <= C * n * d * d);
    }
}
