#include "halldec/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace halldec {

std::vector<int> VarDecl::values() const {
    std::vector<int> out;
    for (const auto& r : ranges)
        for (int v = r.lo; v <= r.hi; ++v) out.push_back(v);
    return out;
}

int InstanceFile::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == name) return static_cast<int>(i);
    return -1;
}

namespace {

[[noreturn]] void bad(int line, const std::string& msg) {
    throw std::runtime_error("instance parse error, line " + std::to_string(line) + ": " + msg);
}

std::vector<int> parse_csv(int line, const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            bad(line, "bad integer list '" + s + "'");
        }
    }
    if (out.empty()) bad(line, "empty integer list");
    return out;
}

Interval parse_range(int line, const std::string& tok) {
    auto dots = tok.find("..");
    try {
        if (dots == std::string::npos) {
            int v = std::stoi(tok);
            return {v, v};
        }
        Interval r{std::stoi(tok.substr(0, dots)), std::stoi(tok.substr(dots + 2))};
        if (r.lo > r.hi) bad(line, "empty range '" + tok + "'");
        return r;
    } catch (const std::runtime_error&) {
        throw;
    } catch (const std::exception&) {
        bad(line, "bad range '" + tok + "'");
    }
}

const std::map<std::string, Kind, std::less<>> kKindNames = {
    {"alldifferent", Kind::AllDifferent}, {"permutation", Kind::Permutation},
    {"gcc", Kind::Gcc},                   {"same", Kind::Same},
    {"biclique", Kind::BiClique},         {"absdiff", Kind::AbsDiff},
};

std::string kind_name(Kind k) {
    for (const auto& [name, kind] : kKindNames)
        if (kind == k) return name;
    return "?";
}

}  // namespace

InstanceFile parse_instance(std::istream& in) {
    InstanceFile f;
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
        std::stringstream ss(raw);
        std::string head;
        if (!(ss >> head)) continue;

        if (head == "var") {
            VarDecl v;
            if (!(ss >> v.name)) bad(lineno, "var needs a name");
            if (f.var_index(v.name) >= 0) bad(lineno, "duplicate variable '" + v.name + "'");
            std::string tok;
            while (ss >> tok) v.ranges.push_back(parse_range(lineno, tok));
            if (v.ranges.empty()) bad(lineno, "var needs at least one range");
            std::sort(v.ranges.begin(), v.ranges.end(),
                      [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
            for (std::size_t i = 1; i < v.ranges.size(); ++i)
                if (v.ranges[i].lo <= v.ranges[i - 1].hi + 1)
                    bad(lineno, "overlapping or adjacent ranges for '" + v.name + "'");
            f.vars.push_back(std::move(v));
            continue;
        }

        auto it = kKindNames.find(head);
        if (it == kKindNames.end()) bad(lineno, "unknown directive '" + head + "'");
        ConstraintDecl c;
        c.kind = it->second;
        std::string tok;
        bool after_bar = false;
        while (ss >> tok) {
            if (tok == "|") {
                if (c.kind != Kind::Same || after_bar) bad(lineno, "unexpected '|'");
                c.split = static_cast<int>(c.scope.size());
                after_bar = true;
            } else if (tok.rfind("consistency=", 0) == 0) {
                std::string v = tok.substr(12);
                if (v == "rc")
                    c.consistency = Consistency::RC;
                else if (v == "bc")
                    c.consistency = Consistency::BC;
                else
                    bad(lineno, "consistency must be rc or bc");
            } else if (tok.rfind("cap=", 0) == 0) {
                int k = 0;
                try {
                    k = std::stoi(tok.substr(4));
                } catch (const std::exception&) {
                    bad(lineno, "bad cap");
                }
                if (k < 1) bad(lineno, "cap must be >= 1");
                c.hall_cap = k;
            } else if (tok.rfind("lower=", 0) == 0) {
                c.lower = parse_csv(lineno, tok.substr(6));
            } else if (tok.rfind("upper=", 0) == 0) {
                c.upper = parse_csv(lineno, tok.substr(6));
            } else {
                if (f.var_index(tok) < 0) bad(lineno, "undeclared variable '" + tok + "'");
                c.scope.push_back(tok);
            }
        }
        switch (c.kind) {
            case Kind::Same:
                if (!after_bar) bad(lineno, "same needs '|' between the two scopes");
                if (c.split * 2 != static_cast<int>(c.scope.size()))
                    bad(lineno, "same scopes must have equal length");
                break;
            case Kind::Gcc:
                if (c.lower.empty() || c.lower.size() != c.upper.size())
                    bad(lineno, "gcc needs matching lower= and upper= lists");
                for (std::size_t v = 0; v < c.lower.size(); ++v)
                    if (c.lower[v] < 0 || c.lower[v] > c.upper[v])
                        bad(lineno, "gcc needs 0 <= lower <= upper");
                break;
            case Kind::AbsDiff:
                if (c.scope.size() != 3) bad(lineno, "absdiff needs exactly 3 variables");
                break;
            default:
                break;
        }
        if (c.scope.empty()) bad(lineno, "constraint has empty scope");
        f.constraints.push_back(std::move(c));
    }
    return f;
}

InstanceFile parse_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    return parse_instance(in);
}

std::string print_instance(const InstanceFile& f) {
    std::ostringstream out;
    for (const auto& v : f.vars) {
        out << "var " << v.name;
        for (const auto& r : v.ranges) {
            out << ' ' << r.lo;
            if (r.hi != r.lo) out << ".." << r.hi;
        }
        out << '\n';
    }
    for (const auto& c : f.constraints) {
        out << kind_name(c.kind);
        if (c.kind == Kind::Gcc) {
            auto csv = [&](const std::vector<int>& xs) {
                for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? "," : "") << xs[i];
            };
            out << " lower=";
            csv(c.lower);
            out << " upper=";
            csv(c.upper);
        }
        if (c.hall_cap) out << " cap=" << *c.hall_cap;
        if (c.kind != Kind::BiClique && c.kind != Kind::AbsDiff)
            out << " consistency=" << (c.consistency == Consistency::RC ? "rc" : "bc");
        for (std::size_t i = 0; i < c.scope.size(); ++i) {
            if (c.kind == Kind::Same && static_cast<int>(i) == c.split) out << " |";
            out << ' ' << c.scope[i];
        }
        out << '\n';
    }
    return out.str();
}

bool check_witness(const InstanceFile& f, const std::vector<int>& vals, std::string* why) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (vals.size() != f.vars.size()) return reject("wrong assignment length");
    for (std::size_t i = 0; i < f.vars.size(); ++i) {
        bool in = false;
        for (const auto& r : f.vars[i].ranges)
            in |= r.lo <= vals[i] && vals[i] <= r.hi;
        if (!in)
            return reject("value " + std::to_string(vals[i]) + " outside domain of " +
                          f.vars[i].name);
    }
    for (const auto& c : f.constraints) {
        std::vector<int> tuple;
        for (const auto& name : c.scope) tuple.push_back(vals[f.var_index(name)]);
        GlobalSpec g{c.kind, c.split, c.lower, c.upper};
        if (!satisfies(g, tuple)) return reject(kind_name(c.kind) + " constraint violated");
    }
    return true;
}

}  // namespace halldec
