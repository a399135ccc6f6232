#include "halldec/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace halldec {
namespace oracle {

namespace {

void check_cap(const Domains& doms, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (const auto& d : doms) {
        total *= static_cast<std::uint64_t>(d.size());
        if (total > cap) throw std::length_error("oracle: assignment space exceeds cap");
    }
}

/// Backtracking support search over per-variable candidate lists, with
/// kind-aware pruning of partial assignments.
class SupportSearch {
public:
    SupportSearch(const GlobalSpec& g, const std::vector<std::vector<int>>& cands)
        : g_(g), cands_(cands), vals_(cands.size()) {}

    bool run() { return descend(0); }

private:
    bool descend(std::size_t i) {
        if (i == cands_.size()) return satisfies(g_, vals_);
        for (int v : cands_[i]) {
            if (!partial_ok(i, v)) continue;
            vals_[i] = v;
            if (descend(i + 1)) return true;
        }
        return false;
    }

    bool partial_ok(std::size_t i, int v) const {
        switch (g_.kind) {
            case Kind::AllDifferent:
            case Kind::BiClique:
            case Kind::Permutation:
                for (std::size_t j = 0; j < i; ++j)
                    if (vals_[j] == v) return false;
                return true;
            case Kind::Gcc: {
                if (v < 1 || v > static_cast<int>(g_.upper.size())) return false;
                int c = 1;
                for (std::size_t j = 0; j < i; ++j)
                    if (vals_[j] == v) ++c;
                return c <= g_.upper[v - 1];
            }
            case Kind::Same: {
                if (static_cast<int>(i) < g_.split) return true;
                // y values must fit in the multiset of already-chosen x values
                int have = 0;
                for (int j = 0; j < g_.split; ++j)
                    if (vals_[j] == v) ++have;
                for (std::size_t j = g_.split; j < i; ++j)
                    if (vals_[j] == v) --have;
                return have > 0;
            }
            case Kind::AbsDiff:
                return true;
        }
        return true;
    }

    const GlobalSpec& g_;
    const std::vector<std::vector<int>>& cands_;
    std::vector<int> vals_;
};

std::vector<int> range_list(const std::vector<int>& dom) {
    std::vector<int> out;
    for (int v = dom.front(); v <= dom.back(); ++v) out.push_back(v);
    return out;
}

// support for var i = v, with the other variables ranging over `others[j]`
bool has_support(const GlobalSpec& g, const std::vector<std::vector<int>>& others,
                 std::size_t i, int v) {
    std::vector<std::vector<int>> cands = others;
    cands[i] = {v};
    return SupportSearch(g, cands).run();
}

}  // namespace

std::optional<Domains> enforce(Level level, const GlobalSpec& g, Domains doms,
                               std::uint64_t cap) {
    check_cap(doms, cap);
    const std::size_t n = doms.size();
    bool changed = true;
    while (changed) {
        changed = false;
        if (level == Level::BC) {
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::vector<int>> ranges(n);
                while (!doms[i].empty()) {
                    for (std::size_t j = 0; j < n; ++j)
                        if (!doms[j].empty()) ranges[j] = range_list(doms[j]);
                    if (std::any_of(doms.begin(), doms.end(),
                                    [](const auto& d) { return d.empty(); }))
                        return std::nullopt;
                    if (!has_support(g, ranges, i, doms[i].front())) {
                        doms[i].erase(doms[i].begin());
                        changed = true;
                        continue;
                    }
                    if (doms[i].size() > 1 && !has_support(g, ranges, i, doms[i].back())) {
                        doms[i].pop_back();
                        changed = true;
                        continue;
                    }
                    break;
                }
                if (doms[i].empty()) return std::nullopt;
            }
        } else {
            std::vector<std::vector<int>> cands(n);
            for (std::size_t j = 0; j < n; ++j) {
                if (doms[j].empty()) return std::nullopt;
                cands[j] = (level == Level::DC) ? doms[j] : range_list(doms[j]);
            }
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<int> kept;
                for (int v : doms[i])
                    if (has_support(g, cands, i, v)) kept.push_back(v);
                if (kept.size() != doms[i].size()) {
                    doms[i] = std::move(kept);
                    changed = true;
                    if (doms[i].empty()) return std::nullopt;
                }
            }
        }
    }
    return doms;
}

std::vector<std::vector<int>> enumerate_solutions(const GlobalSpec& g, const Domains& doms,
                                                  std::uint64_t cap) {
    check_cap(doms, cap);
    std::vector<std::vector<int>> out;
    std::vector<int> vals(doms.size());
    auto rec = [&](auto&& self, std::size_t i) -> void {
        if (i == doms.size()) {
            if (satisfies(g, vals)) out.push_back(vals);
            return;
        }
        for (int v : doms[i]) {
            vals[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    return out;
}

}  // namespace oracle
}  // namespace halldec
