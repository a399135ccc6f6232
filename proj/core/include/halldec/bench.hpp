#pragma once

#include <string>
#include <vector>

#include "halldec/engine.hpp"
#include "halldec/instance.hpp"
#include "halldec/model.hpp"

namespace halldec {

/// "bi", "hi", "hi-<k>" or "declared" -> build options for the solve lane.
BuildOptions parse_method(const std::string& method);

/// Build, search, and (for Sat) verify the witness against the declarative
/// semantics. A witness failing the checker throws std::logic_error.
SolveResult run_solve(const InstanceFile& f, const BuildOptions& opt,
                      Branching branching = Branching::Lex, SolveLimits limits = {});

struct BenchRow {
    std::string instance;
    std::string method;
    Verdict verdict = Verdict::Unknown;
    std::uint64_t backtracks = 0;
    std::uint64_t nodes = 0;
    double time_ms = 0.0;
};

struct NamedInstance {
    std::string name;
    InstanceFile file;
};

/// One row per (instance, method), instances fanned out across `workers`
/// threads (0 = hardware concurrency), rows merged back in input order.
std::vector<BenchRow> run_bench(const std::vector<NamedInstance>& instances,
                                const std::vector<std::string>& methods,
                                SolveLimits limits, unsigned workers = 0);

std::string to_csv(const std::vector<BenchRow>& rows);

}  // namespace halldec
