#include "halldec/decomp.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "halldec/propagators.hpp"

namespace halldec {

namespace {

void hull(Engine& e, std::span<const VarId> xs, int& lo, int& hi) {
    lo = e.dom(xs.front()).lb;
    hi = e.dom(xs.front()).ub;
    for (VarId x : xs) {
        lo = std::min(lo, e.dom(x).lb);
        hi = std::max(hi, e.dom(x).ub);
    }
}

std::string count_name(int l, int u) {
    return "N[" + std::to_string(l) + "," + std::to_string(u) + "]";
}

/// Bound literals B[i][k] <=> X_i <= k for one variable family, with the
/// trivially-false/true ends folded to two shared fixed booleans.
struct BoundLits {
    std::vector<std::vector<VarId>> b;
    VarId always_false = -1, always_true = -1;
    int lo = 0, hi = 0;

    void build(Engine& e, std::span<const VarId> xs, int lo_, int hi_,
               DecompositionReport& r) {
        lo = lo_;
        hi = hi_;
        always_false = e.new_bool();
        e.assign(always_false, 0);
        always_true = e.new_bool();
        e.assign(always_true, 1);
        b.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            b[i].resize(std::max(hi - lo, 0));
            for (int k = lo; k < hi; ++k) {
                b[i][k - lo] = e.new_bool();
                post_channel_bound(e, b[i][k - lo], xs[i], k);
                ++r.bound_vars;
                ++r.propagators;
            }
        }
    }

    VarId at(std::size_t i, int k) const {
        if (k < lo) return always_false;
        if (k >= hi) return always_true;
        return b[i][k - lo];
    }
};

/// Post occupancy booleans A_ilu for one interval, channelled per the
/// requested consistency, and return them.
std::vector<VarId> occupancy_row(Engine& e, std::span<const VarId> xs, int l, int u,
                                 Consistency cons, const BoundLits* blits,
                                 DecompositionReport& r) {
    std::vector<VarId> as;
    as.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        VarId a = e.new_bool();
        if (cons == Consistency::RC)
            post_channel_interval(e, a, xs[i], l, u);
        else
            post_channel_conj(e, a, blits->at(i, l - 1), blits->at(i, u));
        ++r.occupancy_vars;
        ++r.propagators;
        as.push_back(a);
    }
    return as;
}

DecompositionReport post_alldiff_core(Engine& e, std::span<const VarId> xs, Consistency cons,
                                      std::optional<int> hall_cap, bool equality) {
    DecompositionReport r;
    if (xs.empty()) return r;
    const int n = static_cast<int>(xs.size());
    int lo, hi;
    hull(e, xs, lo, hi);
    int max_width = std::min(hi - lo + 1, n);  // u - l < n
    if (hall_cap) max_width = std::min(max_width, *hall_cap);

    BoundLits blits;
    if (cons == Consistency::BC) blits.build(e, xs, lo, hi, r);

    for (int w = 1; w <= max_width; ++w) {
        for (int l = lo; l + w - 1 <= hi; ++l) {
            const int u = l + w - 1;
            std::vector<VarId> as = occupancy_row(e, xs, l, u, cons, &blits, r);
            if (equality)
                post_sum_eq(e, std::move(as), w);
            else
                post_sum_leq(e, std::move(as), w);
            ++r.propagators;
        }
    }
    return r;
}

}  // namespace

DecompositionReport post_alldiff_rc(Engine& e, std::span<const VarId> xs,
                                    std::optional<int> hall_cap) {
    return post_alldiff_core(e, xs, Consistency::RC, hall_cap, false);
}

DecompositionReport post_alldiff_bc(Engine& e, std::span<const VarId> xs,
                                    std::optional<int> hall_cap) {
    return post_alldiff_core(e, xs, Consistency::BC, hall_cap, false);
}

DecompositionReport post_permutation(Engine& e, std::span<const VarId> xs,
                                     Consistency consistency, std::optional<int> hall_cap) {
    if (xs.empty()) return {};
    int lo, hi;
    hull(e, xs, lo, hi);
    if (hi - lo + 1 != static_cast<int>(xs.size()))
        throw std::invalid_argument("permutation: need exactly as many values as variables");
    return post_alldiff_core(e, xs, consistency, hall_cap, true);
}

DecompositionReport post_gcc(Engine& e, std::span<const VarId> xs,
                             const std::vector<int>& lower, const std::vector<int>& upper,
                             Consistency consistency) {
    if (lower.size() != upper.size())
        throw std::invalid_argument("gcc: lower/upper length mismatch");
    for (std::size_t v = 0; v < lower.size(); ++v)
        if (lower[v] > upper[v]) throw std::invalid_argument("gcc: lower > upper");
    DecompositionReport r;
    const int n = static_cast<int>(xs.size());
    const int m = static_cast<int>(lower.size());
    for (VarId x : xs) {
        e.tighten_lb(x, 1);
        e.tighten_ub(x, m);
    }

    // N[l][u] with initial domain [sum lower, sum upper] ∩ [0,n]; N[1][m] = n
    std::vector<std::vector<VarId>> N(m + 1, std::vector<VarId>(m + 1, -1));
    for (int l = 1; l <= m; ++l) {
        int sl = 0, su = 0;
        for (int u = l; u <= m; ++u) {
            sl += lower[u - 1];
            su += upper[u - 1];
            N[l][u] = e.new_int(0, n, false, count_name(l, u));
            e.tighten_lb(N[l][u], sl);
            e.tighten_ub(N[l][u], su);
            ++r.count_vars;
        }
    }
    e.assign(N[1][m], n);

    BoundLits blits;
    if (consistency == Consistency::BC) blits.build(e, xs, 1, m, r);

    for (int l = 1; l <= m; ++l)
        for (int u = l; u <= m; ++u) {
            std::vector<VarId> as = occupancy_row(e, xs, l, u, consistency, &blits, r);
            post_sum_count(e, std::move(as), N[l][u]);
            ++r.propagators;
        }
    for (int u = 2; u <= m; ++u)
        for (int k = 1; k < u; ++k) {
            post_triangle(e, N[1][u], N[1][k], N[k + 1][u]);
            ++r.propagators;
        }
    return r;
}

DecompositionReport post_same(Engine& e, std::span<const VarId> xs, std::span<const VarId> ys,
                              Consistency consistency, bool share_counts) {
    if (xs.size() != ys.size()) throw std::invalid_argument("same: scope length mismatch");
    DecompositionReport r;
    if (xs.empty()) return r;
    const int n = static_cast<int>(xs.size());
    std::vector<VarId> all(xs.begin(), xs.end());
    all.insert(all.end(), ys.begin(), ys.end());
    int lo, hi;
    hull(e, all, lo, hi);

    auto make_counts = [&](const std::string& tag) {
        std::vector<std::vector<VarId>> N(hi - lo + 1, std::vector<VarId>(hi - lo + 1, -1));
        for (int l = lo; l <= hi; ++l)
            for (int u = l; u <= hi; ++u) {
                N[l - lo][u - lo] = e.new_int(0, n, false, tag + count_name(l, u));
                ++r.count_vars;
            }
        e.assign(N[0][hi - lo], n);
        for (int u = lo + 1; u <= hi; ++u)
            for (int k = lo; k < u; ++k) {
                post_triangle(e, N[0][u - lo], N[0][k - lo], N[k + 1 - lo][u - lo]);
                ++r.propagators;
            }
        return N;
    };

    std::vector<std::vector<std::vector<VarId>>> counts;
    counts.push_back(make_counts(share_counts ? "" : "X."));
    if (!share_counts) counts.push_back(make_counts("Y."));

    std::span<const VarId> fams[2] = {xs, ys};
    for (int f = 0; f < 2; ++f) {
        const auto& N = share_counts ? counts[0] : counts[f];
        BoundLits blits;
        if (consistency == Consistency::BC) blits.build(e, fams[f], lo, hi, r);
        for (int l = lo; l <= hi; ++l)
            for (int u = l; u <= hi; ++u) {
                std::vector<VarId> as =
                    occupancy_row(e, fams[f], l, u, consistency, &blits, r);
                post_sum_count(e, std::move(as), N[l - lo][u - lo]);
                ++r.propagators;
            }
    }
    return r;
}

DecompositionReport post_bi_clique(Engine& e, std::span<const VarId> xs) {
    DecompositionReport r;
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            post_not_equal(e, xs[i], xs[j]);
            ++r.propagators;
        }
    return r;
}

}  // namespace halldec
