#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "halldec/bench.hpp"
#include "halldec/encoder.hpp"
#include "halldec/engine.hpp"
#include "halldec/generators.hpp"
#include "halldec/instance.hpp"
#include "halldec/model.hpp"

using namespace halldec;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 20;
constexpr int kExitTimeout = 30;
constexpr int kExitUsage = 64;

void write_out(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

std::string show_domain(const DomainState& d) {
    std::string s;
    if (d.has_mask) {
        s = "{";
        bool first = true;
        for (int v : d.values()) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
        s += "}";
    } else {
        s = "[" + std::to_string(d.lb) + "," + std::to_string(d.ub) + "]";
    }
    return s;
}

SolveLimits make_limits(double timeout_s, std::uint64_t nodes) {
    return {nodes, timeout_s > 0 ? timeout_s * 1000.0 : 0.0};
}

int cmd_propagate(const std::string& path, const std::string& consistency, int hall_cap,
                  bool trace) {
    InstanceFile f = parse_instance_file(path);
    BuildOptions opt;
    if (consistency == "rc") opt.consistency = Consistency::RC;
    if (consistency == "bc") opt.consistency = Consistency::BC;
    if (hall_cap > 0) opt.hall_cap = hall_cap;
    Engine e;
    if (trace)
        e.set_trace([](const std::string& name, const DomainState& d) {
            std::cout << "trace " << name << " -> " << show_domain(d) << '\n';
        });
    BuiltModel m = build_model(e, f, opt);
    if (e.propagate_fixpoint() == FixResult::Conflict) {
        std::cout << "CONFLICT\n";
        return kExitUnsat;
    }
    for (std::size_t i = 0; i < f.vars.size(); ++i)
        std::cout << f.vars[i].name << " = " << show_domain(e.dom(m.vars[i])) << '\n';
    return kExitSat;
}

int cmd_solve(const std::string& path, std::string method, int k, const std::string& branch,
              double timeout_s, std::uint64_t nodes) {
    InstanceFile f = parse_instance_file(path);
    if (method == "hi-k") method = "hi-" + std::to_string(k);
    BuildOptions opt = parse_method(method);
    Branching br = branch == "mindom" ? Branching::MinDomain : Branching::Lex;
    SolveResult res = run_solve(f, opt, br, make_limits(timeout_s, nodes));
    const char* verdict = res.verdict == Verdict::Sat     ? "SAT"
                          : res.verdict == Verdict::Unsat ? "UNSAT"
                                                          : "TIMEOUT";
    std::cout << verdict << " backtracks=" << res.stats.backtracks
              << " nodes=" << res.stats.nodes << " time_ms=" << res.stats.time_ms << '\n';
    if (res.verdict == Verdict::Sat)
        for (std::size_t i = 0; i < f.vars.size(); ++i)
            std::cout << f.vars[i].name << " = " << res.assignment[i] << '\n';
    return res.verdict == Verdict::Sat     ? kExitSat
           : res.verdict == Verdict::Unsat ? kExitUnsat
                                           : kExitTimeout;
}

int cmd_encode(const std::string& path, const std::string& mode, int k,
               const std::string& out) {
    InstanceFile f = parse_instance_file(path);
    std::optional<int> cap;
    if (k > 0) cap = k;
    PbFormula pb =
        encode(f, mode == "bi" ? EncodeMode::Bi : EncodeMode::Hi, cap);
    write_out(out, pb.to_opb());
    if (!out.empty() && out != "-") write_out(out + ".varmap", pb.map.to_text());
    return 0;
}

int cmd_decode(const std::string& path, const std::string& mode, int k,
               const std::string& model_path) {
    InstanceFile f = parse_instance_file(path);
    std::optional<int> cap;
    if (k > 0) cap = k;
    PbFormula pb = encode(f, mode == "bi" ? EncodeMode::Bi : EncodeMode::Hi, cap);
    std::ifstream in(model_path);
    if (!in) throw std::runtime_error("cannot open model file '" + model_path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::vector<int> vals = decode_model(f, pb.map, text);
    std::string why;
    if (!check_witness(f, vals, &why)) throw std::runtime_error("decoded model invalid: " + why);
    for (std::size_t i = 0; i < f.vars.size(); ++i)
        std::cout << f.vars[i].name << " = " << vals[i] << '\n';
    return 0;
}

int cmd_bench(const std::string& dir, const std::string& methods_csv, const std::string& csv,
              double timeout_s, std::uint64_t nodes, unsigned workers) {
    std::vector<NamedInstance> instances;
    std::vector<std::filesystem::path> paths;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.path().extension() == ".inst") paths.push_back(entry.path());
    std::sort(paths.begin(), paths.end());
    for (const auto& p : paths)
        instances.push_back({p.stem().string(), parse_instance_file(p.string())});
    if (instances.empty()) throw std::runtime_error("no .inst files in '" + dir + "'");

    std::vector<std::string> methods;
    std::stringstream ss(methods_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) methods.push_back(tok);
    if (methods.empty()) throw std::runtime_error("no methods given");
    for (const auto& m : methods) parse_method(m);  // validate up front

    auto rows = run_bench(instances, methods, make_limits(timeout_s, nodes), workers);
    write_out(csv, to_csv(rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hall-interval decompositions of global constraints"};
    app.require_subcommand(1);

    auto* gen = app.add_subcommand("gen", "generate an instance file");
    gen->require_subcommand(1);
    int gen_n = 0;
    std::string gen_out;
    auto* gen_php_cmd = gen->add_subcommand("php", "pigeon-hole: n pigeons, n-1 holes");
    gen_php_cmd->add_option("n", gen_n, "number of pigeons")->required();
    gen_php_cmd->add_option("-o,--out", gen_out, "output file (default stdout)");
    auto* gen_dw_cmd = gen->add_subcommand("dw", "graceful double wheel DW_n");
    gen_dw_cmd->add_option("n", gen_n, "cycle length")->required();
    gen_dw_cmd->add_option("-o,--out", gen_out, "output file (default stdout)");

    auto* prop = app.add_subcommand("propagate", "propagate to fixpoint, print domains");
    std::string in_path, consistency, branch = "lex", mode = "hi", methods_csv, csv_out,
                         model_path;
    int hall_cap = 0, k = 0;
    bool trace = false;
    double timeout_s = 0;
    std::uint64_t node_cap = 0;
    unsigned workers = 0;
    prop->add_option("file", in_path)->required();
    prop->add_option("--consistency", consistency)->check(CLI::IsMember({"rc", "bc"}));
    prop->add_option("--hall-cap", hall_cap);
    prop->add_flag("--trace", trace, "print every domain change of a named variable");

    auto* solve = app.add_subcommand("solve", "search for a solution");
    std::string method = "declared";
    solve->add_option("file", in_path)->required();
    solve->add_option("--method", method, "bi | hi | hi-k | hi-<k> | declared");
    solve->add_option("--k", k, "width cap for --method hi-k");
    solve->add_option("--branch", branch)->check(CLI::IsMember({"lex", "mindom"}));
    solve->add_option("--timeout", timeout_s, "seconds");
    solve->add_option("--nodes", node_cap);

    auto* enc = app.add_subcommand("encode", "emit a pseudo-Boolean OPB file");
    std::string enc_out;
    enc->add_option("file", in_path)->required();
    enc->add_option("--mode", mode)->check(CLI::IsMember({"hi", "bi"}))->required();
    enc->add_option("--k", k, "hall width cap (hi mode)");
    enc->add_option("-o,--out", enc_out, "output .opb (default stdout)");

    auto* dec = app.add_subcommand("decode", "decode a PB solver model");
    dec->add_option("file", in_path)->required();
    dec->add_option("--mode", mode)->check(CLI::IsMember({"hi", "bi"}));
    dec->add_option("--k", k);
    dec->add_option("--model", model_path)->required();

    auto* bench = app.add_subcommand("bench", "run a method x instance sweep");
    bench->add_option("dir", in_path)->required();
    bench->add_option("--methods", methods_csv)->required();
    bench->add_option("--csv", csv_out, "output csv (default stdout)");
    bench->add_option("--timeout", timeout_s, "seconds per run");
    bench->add_option("--nodes", node_cap);
    bench->add_option("--workers", workers);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (gen_php_cmd->parsed() || gen_dw_cmd->parsed()) {
            InstanceFile f = gen_php_cmd->parsed() ? gen_php(gen_n) : gen_double_wheel(gen_n);
            write_out(gen_out, print_instance(f));
            return 0;
        }
        if (prop->parsed()) return cmd_propagate(in_path, consistency, hall_cap, trace);
        if (solve->parsed())
            return cmd_solve(in_path, method, k, branch, timeout_s, node_cap);
        if (enc->parsed()) return cmd_encode(in_path, mode, k, enc_out);
        if (dec->parsed()) return cmd_decode(in_path, mode, k, model_path);
        if (bench->parsed())
            return cmd_bench(in_path, methods_csv, csv_out, timeout_s, node_cap, workers);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
