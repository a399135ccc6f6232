#include "halldec/encoder.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace halldec {

namespace {

struct VarInfo {
    int lo, hi;
    std::vector<int> values;
    bool has(int v) const { return std::binary_search(values.begin(), values.end(), v); }
};

bool hall_kind(Kind k) { return k == Kind::AllDifferent || k == Kind::Permutation; }

struct Builder {
    const InstanceFile& inst;
    EncodeMode mode;
    std::optional<int> cap;
    std::vector<VarInfo> info;
    PbFormula f;

    explicit Builder(const InstanceFile& in, EncodeMode m, std::optional<int> k)
        : inst(in), mode(m), cap(k) {
        for (const auto& v : inst.vars) {
            VarInfo vi{v.ranges.front().lo, v.ranges.back().hi, v.values()};
            info.push_back(std::move(vi));
        }
    }

    // ---- literal lookups (1-based OPB indices; i is 1-based) ----
    int z(int i, int j) const { return f.map.z.at({i, j}); }
    int b(int i, int j) const { return f.map.b.at({i, j}); }
    int a(int i, int l, int u) const { return f.map.a.at({i, l, u}); }

    void emit(std::vector<PbTerm> terms, bool eq, int rhs) {
        f.constraints.push_back({std::move(terms), eq, rhs});
    }

    void allocate() {
        int n = 0;
        for (std::size_t i = 0; i < info.size(); ++i)
            for (int j : info[i].values) f.map.z[{static_cast<int>(i) + 1, j}] = ++n;
        if (mode == EncodeMode::Hi) {
            std::set<int> under_hall;
            std::set<std::tuple<int, int, int>> occ;
            for (const auto& c : inst.constraints) {
                if (!hall_kind(c.kind)) continue;
                int nc = static_cast<int>(c.scope.size());
                int L = info[inst.var_index(c.scope.front())].lo, U = L;
                for (const auto& name : c.scope) {
                    const auto& vi = info[inst.var_index(name)];
                    L = std::min(L, vi.lo);
                    U = std::max(U, vi.hi);
                }
                for (const auto& name : c.scope) {
                    int i = inst.var_index(name) + 1;
                    under_hall.insert(i);
                    for (int l = L; l <= U; ++l)
                        for (int u = l; u <= U && u - l < nc; ++u) occ.insert({i, l, u});
                }
            }
            for (int i : under_hall)
                for (int j = info[i - 1].lo; j < info[i - 1].hi; ++j) f.map.b[{i, j}] = ++n;
            for (const auto& key : occ) f.map.a[key] = ++n;
        }
        f.map.num_vars = n;
    }

    void exactly_one_rows() {
        for (std::size_t i = 0; i < info.size(); ++i) {
            std::vector<PbTerm> terms;
            for (int j : info[i].values) terms.push_back({1, z(static_cast<int>(i) + 1, j)});
            emit(std::move(terms), true, 1);
        }
    }

    void order_encoding() {
        for (const auto& [key, idx] : f.map.b) {
            auto [i, j] = key;
            if (f.map.b.count({i, j + 1}))
                emit({{1, b(i, j + 1)}, {-1, idx}}, false, 0);  // B_ij => B_i(j+1)
        }
        // Z_ij = B_ij - B_i(j-1); B constant 0 below lo and 1 from hi up
        std::set<int> done;
        for (const auto& [key, idx] : f.map.b) done.insert(key.first);
        for (int i : done) {
            const auto& vi = info[i - 1];
            for (int j = vi.lo; j <= vi.hi; ++j) {
                bool have_j = j < vi.hi, have_p = j > vi.lo;
                if (vi.has(j)) {
                    std::vector<PbTerm> terms{{1, z(i, j)}};
                    int rhs = 0;
                    if (have_j)
                        terms.push_back({-1, b(i, j)});
                    else
                        rhs += 1;  // B_i,hi == 1
                    if (have_p) terms.push_back({1, b(i, j - 1)});
                    emit(std::move(terms), true, rhs);
                } else {
                    // hole: the order literal does not step here
                    emit({{1, b(i, j)}, {-1, b(i, j - 1)}}, true, 0);
                }
            }
        }
    }

    void conjunctions() {
        for (const auto& [key, idx] : f.map.a) {
            auto [i, l, u] = key;
            const auto& vi = info[i - 1];
            if (u < vi.lo || l > vi.hi) {
                emit({{-1, idx}}, false, 0);  // interval misses the domain
                continue;
            }
            if (l <= vi.lo && u >= vi.hi) {
                emit({{1, idx}}, false, 1);  // interval covers the domain
                continue;
            }
            bool have_hi = u < vi.hi;      // else B_iu == 1
            bool have_lo = l - 1 >= vi.lo; // else B_i(l-1) == 0
            if (have_hi) emit({{-1, idx}, {1, b(i, u)}}, false, 0);
            if (have_lo) emit({{-1, idx}, {-1, b(i, l - 1)}}, false, -1);
            std::vector<PbTerm> back{{1, idx}};
            int rhs = 1;
            if (have_hi) {
                back.push_back({-1, b(i, u)});
                rhs -= 1;
            }
            if (have_lo) back.push_back({1, b(i, l - 1)});
            emit(std::move(back), false, rhs);
        }
    }

    void hall_sums() {
        for (const auto& c : inst.constraints) {
            if (!hall_kind(c.kind)) continue;
            int nc = static_cast<int>(c.scope.size());
            int width_cap = cap.value_or(nc);
            std::set<std::pair<int, int>> ivs;
            for (const auto& name : c.scope) {
                int i = inst.var_index(name) + 1;
                for (const auto& [key, idx] : f.map.a)
                    if (std::get<0>(key) == i) ivs.insert({std::get<1>(key), std::get<2>(key)});
            }
            for (auto [l, u] : ivs) {
                if (u - l + 1 > width_cap) continue;
                std::vector<PbTerm> terms;
                for (const auto& name : c.scope)
                    terms.push_back({c.kind == Kind::Permutation ? 1 : -1,
                                     a(inst.var_index(name) + 1, l, u)});
                if (c.kind == Kind::Permutation)
                    emit(std::move(terms), true, u - l + 1);
                else
                    emit(std::move(terms), false, -(u - l + 1));
            }
        }
    }

    void strengthening() {
        for (const auto& [key, idx] : f.map.a) {
            auto [i, l, u] = key;
            for (int j = l; j <= u; ++j)
                if (info[i - 1].has(j)) emit({{1, idx}, {-1, z(i, j)}}, false, 0);
        }
    }

    void pairwise(const ConstraintDecl& c) {
        for (std::size_t p = 0; p < c.scope.size(); ++p)
            for (std::size_t q = p + 1; q < c.scope.size(); ++q) {
                int ip = inst.var_index(c.scope[p]), iq = inst.var_index(c.scope[q]);
                for (int v : info[ip].values)
                    if (info[iq].has(v))
                        emit({{-1, z(ip + 1, v)}, {-1, z(iq + 1, v)}}, false, -1);
            }
    }

    void at_least_one(const ConstraintDecl& c) {
        int L = info[inst.var_index(c.scope.front())].lo, U = L;
        for (const auto& name : c.scope) {
            const auto& vi = info[inst.var_index(name)];
            L = std::min(L, vi.lo);
            U = std::max(U, vi.hi);
        }
        for (int v = L; v <= U; ++v) {
            std::vector<PbTerm> terms;
            for (const auto& name : c.scope) {
                int i = inst.var_index(name);
                if (info[i].has(v)) terms.push_back({1, z(i + 1, v)});
            }
            if (terms.empty()) throw std::invalid_argument("permutation value with empty column");
            emit(std::move(terms), false, 1);
        }
    }

    void abs_diff(const ConstraintDecl& c) {
        int ie = inst.var_index(c.scope[0]), ix = inst.var_index(c.scope[1]),
            iy = inst.var_index(c.scope[2]);
        for (int xv : info[ix].values)
            for (int yv : info[iy].values) {
                int d = std::abs(xv - yv);
                if (info[ie].has(d))
                    emit({{-1, z(ix + 1, xv)}, {-1, z(iy + 1, yv)}, {1, z(ie + 1, d)}},
                         false, -1);
                else
                    emit({{-1, z(ix + 1, xv)}, {-1, z(iy + 1, yv)}}, false, -1);
            }
    }

    PbFormula build() {
        for (const auto& c : inst.constraints)
            if (c.kind == Kind::Gcc || c.kind == Kind::Same)
                throw std::invalid_argument("gcc/same constraints have no Boolean encoding here");
        allocate();
        exactly_one_rows();
        if (mode == EncodeMode::Hi) {
            order_encoding();
            conjunctions();
            hall_sums();
            strengthening();
        } else {
            for (const auto& c : inst.constraints)
                if (hall_kind(c.kind)) pairwise(c);
            for (const auto& c : inst.constraints)
                if (c.kind == Kind::Permutation) at_least_one(c);
        }
        for (const auto& c : inst.constraints)
            if (c.kind == Kind::BiClique) pairwise(c);
        for (const auto& c : inst.constraints)
            if (c.kind == Kind::AbsDiff) abs_diff(c);
        return std::move(f);
    }
};

}  // namespace

PbFormula encode(const InstanceFile& inst, EncodeMode mode, std::optional<int> k) {
    return Builder(inst, mode, k).build();
}

std::string VarMap::to_text() const {
    std::ostringstream out;
    for (const auto& [key, idx] : z)
        out << "Z " << key.first << ' ' << key.second << ' ' << idx << '\n';
    for (const auto& [key, idx] : b)
        out << "B " << key.first << ' ' << key.second << ' ' << idx << '\n';
    for (const auto& [key, idx] : a)
        out << "A " << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key)
            << ' ' << idx << '\n';
    return out.str();
}

std::string PbFormula::to_opb() const {
    std::ostringstream out;
    out << "* #variable= " << map.num_vars << " #constraint= " << constraints.size() << '\n';
    for (const auto& c : constraints) {
        for (const auto& t : c.terms) out << (t.coef >= 0 ? "+" : "") << t.coef << " x" << t.var << ' ';
        out << (c.equality ? "=" : ">=") << ' ' << c.rhs << " ;\n";
    }
    return out.str();
}

bool PbFormula::eval(const std::vector<bool>& vals) const {
    for (const auto& c : constraints) {
        int sum = 0;
        for (const auto& t : c.terms) sum += t.coef * (vals.at(t.var) ? 1 : 0);
        if (c.equality ? sum != c.rhs : sum < c.rhs) return false;
    }
    return true;
}

std::vector<bool> extend_assignment(const InstanceFile& inst, const VarMap& map,
                                    const std::vector<int>& xvals) {
    std::vector<bool> vals(map.num_vars + 1, false);
    for (const auto& [key, idx] : map.z) vals[idx] = xvals[key.first - 1] == key.second;
    for (const auto& [key, idx] : map.b) vals[idx] = xvals[key.first - 1] <= key.second;
    for (const auto& [key, idx] : map.a) {
        int v = xvals[std::get<0>(key) - 1];
        vals[idx] = std::get<1>(key) <= v && v <= std::get<2>(key);
    }
    return vals;
}

std::vector<int> decode_model(const InstanceFile& inst, const VarMap& map,
                              const std::string& model_text) {
    std::vector<bool> vals(map.num_vars + 1, false);
    std::stringstream ss(model_text);
    std::string tok;
    while (ss >> tok) {
        bool truth = true;
        std::string t = tok;
        if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
            truth = t[0] == '+';
            t.erase(0, 1);
        }
        if (!t.empty() && t[0] == 'x') t.erase(0, 1);
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos) continue;
        int idx = std::stoi(t);
        if (idx >= 1 && idx <= map.num_vars) vals[idx] = truth;
    }
    std::vector<int> out(inst.vars.size());
    std::vector<int> hits(inst.vars.size(), 0);
    for (const auto& [key, idx] : map.z)
        if (vals[idx]) {
            out[key.first - 1] = key.second;
            hits[key.first - 1] += 1;
        }
    for (std::size_t i = 0; i < inst.vars.size(); ++i)
        if (hits[i] != 1)
            throw std::runtime_error("model fixes " + std::to_string(hits[i]) +
                                     " values for variable '" + inst.vars[i].name + "'");
    return out;
}

}  // namespace halldec
