#include "halldec/constraints.hpp"

#include <cstdlib>
#include <map>

namespace halldec {

bool satisfies(const GlobalSpec& g, std::span<const int> vals) {
    switch (g.kind) {
        case Kind::AllDifferent:
        case Kind::BiClique:
        case Kind::Permutation: {
            for (std::size_t i = 0; i < vals.size(); ++i)
                for (std::size_t j = i + 1; j < vals.size(); ++j)
                    if (vals[i] == vals[j]) return false;
            return true;
        }
        case Kind::Gcc: {
            std::map<int, int> count;
            for (int v : vals) ++count[v];
            for (std::size_t v = 0; v < g.lower.size(); ++v) {
                int c = count.count(static_cast<int>(v) + 1) ? count[static_cast<int>(v) + 1] : 0;
                if (c < g.lower[v] || c > g.upper[v]) return false;
            }
            // values outside 1..m are not admitted
            for (const auto& [v, c] : count)
                if (v < 1 || v > static_cast<int>(g.lower.size())) return false;
            return true;
        }
        case Kind::Same: {
            std::map<int, int> diff;
            for (int i = 0; i < g.split; ++i) ++diff[vals[i]];
            for (std::size_t i = g.split; i < vals.size(); ++i) --diff[vals[i]];
            for (const auto& [v, c] : diff)
                if (c != 0) return false;
            return true;
        }
        case Kind::AbsDiff:
            return vals[0] == std::abs(vals[1] - vals[2]);
    }
    return false;
}

}  // namespace halldec
