#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace halldec {

using VarId = int;

enum class PruneResult { Unchanged, Changed, Conflict };
enum class FixResult { Fixpoint, Conflict };
enum class EventKind : std::uint8_t { OnBounds, OnFixed, OnIntervalTouch };
enum class Verdict { Sat, Unsat, Unknown };
enum class Branching { Lex, MinDomain };

/// Domain of one integer variable. Either a plain interval [lb,ub] or,
/// when `has_mask`, an explicit value set stored as a bitmask over
/// [base, base+63]. The bounds always match the extreme set bits.
struct DomainState {
    int lb = 0;
    int ub = 0;
    int base = 0;
    std::uint64_t mask = 0;
    bool has_mask = false;

    bool fixed() const { return lb == ub; }
    int size() const;
    bool contains(int v) const;
    std::vector<int> values() const;
    bool operator==(const DomainState&) const = default;
};

class Engine;

class Propagator {
public:
    virtual ~Propagator() = default;
    /// Prune to fixpoint of this propagator's relation. Returns false on conflict.
    /// Must be idempotent; spurious wakeups are allowed.
    virtual bool propagate(Engine& e) = 0;
    virtual const char* cls() const = 0;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t backtracks = 0;
    double time_ms = 0.0;
    std::map<std::string, std::uint64_t> wakeups;
};

struct SolveResult {
    Verdict verdict = Verdict::Unknown;
    std::vector<int> assignment;  // values of the decision vars, when Sat
    SearchStats stats;
};

struct SolveLimits {
    std::uint64_t max_nodes = 0;  // 0 = unlimited
    double max_time_ms = 0.0;     // 0 = unlimited
};

/// Trail-based backtracking core: variable store, event-driven propagation
/// queue, fixpoint loop and depth-first search. Strictly single-threaded.
class Engine {
public:
    /// Fresh variable with domain [lb,ub]. Explicit value sets span at most
    /// 64 values. Throws std::invalid_argument on lb > ub.
    VarId new_int(int lb, int ub, bool with_values = false, std::string name = {});
    VarId new_bool(std::string name = {}) { return new_int(0, 1, false, std::move(name)); }

    int num_vars() const { return static_cast<int>(vars_.size()); }
    const DomainState& dom(VarId v) const { return vars_[v].dom; }
    const std::string& var_name(VarId v) const { return vars_[v].name; }

    int post(std::unique_ptr<Propagator> p);
    void subscribe(int prop, VarId v, EventKind kind, int l = 0, int u = 0);
    int num_propagators() const { return static_cast<int>(props_.size()); }

    PruneResult tighten_lb(VarId v, int val);
    PruneResult tighten_ub(VarId v, int val);
    /// Interior removals on a bounds-only variable are ignored (Unchanged).
    PruneResult remove_value(VarId v, int val);
    PruneResult assign(VarId v, int val);

    /// For propagators: mark conflict and return false.
    bool fail();
    bool in_conflict() const { return conflict_; }

    FixResult propagate_fixpoint();

    int push();
    void pop();  // throws std::logic_error at root level
    int level() const { return static_cast<int>(level_marks_.size()); }

    SolveResult solve(const std::vector<VarId>& decisions, Branching branching,
                      SolveLimits limits = {});

    std::map<std::string, std::uint64_t> wakeup_counts() const;
    void reset_wakeup_counts();

    /// When set, the fixpoint loop pops a pseudo-random pending propagator
    /// instead of the oldest one.
    void set_shuffle_seed(std::optional<std::uint32_t> seed);

    /// Called on every domain change of a named variable.
    void set_trace(std::function<void(const std::string&, const DomainState&)> fn) {
        trace_ = std::move(fn);
    }

    std::string serialize_domains() const;

private:
    struct Subscription {
        int prop;
        EventKind kind;
        int l, u;
    };
    struct VarInfo {
        DomainState dom;
        std::vector<Subscription> subs;
        std::string name;
        int saved_at = -1;  // deepest level whose trail already holds this var
    };
    struct TrailEntry {
        VarId var;
        DomainState dom;
        int prev_saved_at;
    };

    void save(VarId v);
    // `before` is by value: callers pass a reference to the live domain,
    // which this function overwrites before dispatching events.
    PruneResult commit(VarId v, DomainState before, const DomainState& after);
    void enqueue(int prop);
    void requeue_all();
    void clear_queue();
    Verdict search(const std::vector<VarId>& decisions, Branching branching,
                   const SolveLimits& limits, int depth, SearchStats& stats,
                   std::vector<int>& solution,
                   const std::chrono::steady_clock::time_point& t0);
    VarId pick_decision(const std::vector<VarId>& decisions, Branching branching) const;

    std::vector<VarInfo> vars_;
    std::vector<std::unique_ptr<Propagator>> props_;
    std::vector<int> prop_cls_;
    std::vector<std::string> cls_names_;
    std::vector<std::uint64_t> cls_wakeups_;
    std::vector<std::uint8_t> queued_;
    std::vector<int> queue_;
    std::size_t queue_head_ = 0;
    std::vector<TrailEntry> trail_;
    std::vector<std::size_t> level_marks_;
    bool conflict_ = false;
    std::optional<std::mt19937> rng_;
    std::function<void(const std::string&, const DomainState&)> trace_;
};

}  // namespace halldec
