#include "halldec/bench.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace halldec {

BuildOptions parse_method(const std::string& method) {
    BuildOptions opt;
    if (method == "declared") {
        opt.method = Method::AsDeclared;
    } else if (method == "bi") {
        opt.method = Method::Bi;
    } else if (method == "hi") {
        opt.method = Method::Hi;
    } else if (method.rfind("hi-", 0) == 0) {
        opt.method = Method::HiK;
        try {
            opt.method_k = std::stoi(method.substr(3));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad method '" + method + "'");
        }
        if (opt.method_k < 1) throw std::invalid_argument("hall cap must be >= 1");
    } else {
        throw std::invalid_argument("unknown method '" + method + "'");
    }
    return opt;
}

SolveResult run_solve(const InstanceFile& f, const BuildOptions& opt, Branching branching,
                      SolveLimits limits) {
    Engine e;
    BuiltModel m = build_model(e, f, opt);
    SolveResult res = e.solve(m.vars, branching, limits);
    if (res.verdict == Verdict::Sat) {
        std::string why;
        if (!check_witness(f, res.assignment, &why))
            throw std::logic_error("solver returned an invalid witness: " + why);
    }
    return res;
}

std::vector<BenchRow> run_bench(const std::vector<NamedInstance>& instances,
                                const std::vector<std::string>& methods, SolveLimits limits,
                                unsigned workers) {
    struct Task {
        std::size_t inst, method;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < instances.size(); ++i)
        for (std::size_t m = 0; m < methods.size(); ++m) tasks.push_back({i, m});

    std::vector<BenchRow> rows(tasks.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mu;

    auto worker = [&] {
        for (;;) {
            std::size_t t = next.fetch_add(1);
            if (t >= tasks.size() || failed.load()) return;
            const auto& inst = instances[tasks[t].inst];
            const auto& method = methods[tasks[t].method];
            BenchRow row{inst.name, method};
            try {
                SolveResult res = run_solve(inst.file, parse_method(method), Branching::Lex,
                                            limits);
                row.verdict = res.verdict;
                row.backtracks = res.stats.backtracks;
                row.nodes = res.stats.nodes;
                row.time_ms = res.stats.time_ms;
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lk(failure_mu);
                failure = inst.name + " [" + method + "]: " + ex.what();
                failed.store(true);
                return;
            }
            rows[t] = std::move(row);
        }
    };

    unsigned n = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(tasks.size()) + 1);
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (failed.load()) throw std::runtime_error("bench aborted: " + failure);
    return rows;
}

std::string to_csv(const std::vector<BenchRow>& rows) {
    std::ostringstream out;
    out << "instance,method,verdict,backtracks,nodes,time_ms\n";
    for (const auto& r : rows) {
        const char* v = r.verdict == Verdict::Sat     ? "SAT"
                        : r.verdict == Verdict::Unsat ? "UNSAT"
                                                      : "TIMEOUT";
        out << r.instance << ',' << r.method << ',' << v << ',' << r.backtracks << ','
            << r.nodes << ',' << r.time_ms << '\n';
    }
    return out.str();
}

}  // namespace halldec
