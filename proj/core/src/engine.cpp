#include "halldec/engine.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <sstream>

namespace halldec {

namespace {

std::uint64_t bits_between(int base, int lo, int hi) {
    // bits for values in [lo,hi] relative to base; caller guarantees lo <= hi
    int a = lo - base;
    int b = hi - base;
    a = std::max(a, 0);
    b = std::min(b, 63);
    if (a > b) return 0;
    std::uint64_t width = static_cast<std::uint64_t>(b - a + 1);
    std::uint64_t m = (width >= 64) ? ~0ull : ((1ull << width) - 1);
    return m << a;
}

}  // namespace

int DomainState::size() const {
    if (has_mask) return std::popcount(mask);
    return ub - lb + 1;
}

bool DomainState::contains(int v) const {
    if (v < lb || v > ub) return false;
    if (!has_mask) return true;
    return (mask >> (v - base)) & 1;
}

std::vector<int> DomainState::values() const {
    std::vector<int> out;
    for (int v = lb; v <= ub; ++v)
        if (contains(v)) out.push_back(v);
    return out;
}

VarId Engine::new_int(int lb, int ub, bool with_values, std::string name) {
    if (lb > ub) throw std::invalid_argument("new_int: lb > ub");
    if (with_values && ub - lb + 1 > 64)
        throw std::invalid_argument("new_int: value-set span limited to 64");
    VarInfo v;
    v.dom.lb = lb;
    v.dom.ub = ub;
    v.dom.base = lb;
    v.dom.has_mask = with_values;
    if (with_values) v.dom.mask = bits_between(lb, lb, ub);
    v.name = std::move(name);
    vars_.push_back(std::move(v));
    return static_cast<VarId>(vars_.size()) - 1;
}

int Engine::post(std::unique_ptr<Propagator> p) {
    const char* c = p->cls();
    int cls = -1;
    for (std::size_t i = 0; i < cls_names_.size(); ++i)
        if (cls_names_[i] == c) { cls = static_cast<int>(i); break; }
    if (cls < 0) {
        cls = static_cast<int>(cls_names_.size());
        cls_names_.emplace_back(c);
        cls_wakeups_.push_back(0);
    }
    props_.push_back(std::move(p));
    prop_cls_.push_back(cls);
    queued_.push_back(0);
    int id = static_cast<int>(props_.size()) - 1;
    enqueue(id);
    return id;
}

void Engine::subscribe(int prop, VarId v, EventKind kind, int l, int u) {
    vars_[v].subs.push_back({prop, kind, l, u});
}

void Engine::enqueue(int prop) {
    if (!queued_[prop]) {
        queued_[prop] = 1;
        queue_.push_back(prop);
    }
}

void Engine::clear_queue() {
    for (std::size_t i = queue_head_; i < queue_.size(); ++i) queued_[queue_[i]] = 0;
    queue_.clear();
    queue_head_ = 0;
}

void Engine::requeue_all() {
    for (int p = 0; p < static_cast<int>(props_.size()); ++p) enqueue(p);
}

bool Engine::fail() {
    conflict_ = true;
    return false;
}

void Engine::save(VarId v) {
    int lvl = level();
    if (vars_[v].saved_at == lvl) return;
    trail_.push_back({v, vars_[v].dom, vars_[v].saved_at});
    vars_[v].saved_at = lvl;
}

PruneResult Engine::commit(VarId v, DomainState before, const DomainState& after) {
    save(v);
    vars_[v].dom = after;
    if (trace_ && !vars_[v].name.empty()) trace_(vars_[v].name, after);
    for (const Subscription& s : vars_[v].subs) {
        bool fire = false;
        switch (s.kind) {
            case EventKind::OnBounds:
                fire = before.lb != after.lb || before.ub != after.ub;
                break;
            case EventKind::OnFixed:
                fire = after.fixed() && !before.fixed();
                break;
            case EventKind::OnIntervalTouch: {
                // a bound crossed into (or past) [l,u], or values inside it vanished
                bool lb_crossed = before.lb < s.l && after.lb >= s.l;
                bool ub_crossed = before.ub > s.u && after.ub <= s.u;
                if (lb_crossed || ub_crossed) {
                    fire = true;
                } else {
                    // removed values intersect [l,u]?
                    int a = std::max(s.l, before.lb);
                    int b = std::min(s.u, before.ub);
                    if (a <= b) {
                        if (before.has_mask) {
                            std::uint64_t win = bits_between(before.base, a, b);
                            fire = ((before.mask & ~after.mask) & win) != 0;
                        } else {
                            fire = (after.lb > before.lb && a < after.lb) ||
                                   (after.ub < before.ub && b > after.ub);
                        }
                    }
                }
                break;
            }
        }
        if (fire) enqueue(s.prop);
    }
    return PruneResult::Changed;
}

PruneResult Engine::tighten_lb(VarId v, int val) {
    if (conflict_) return PruneResult::Conflict;
    const DomainState& d = vars_[v].dom;
    if (val <= d.lb) return PruneResult::Unchanged;
    if (val > d.ub) {
        conflict_ = true;
        return PruneResult::Conflict;
    }
    DomainState after = d;
    after.lb = val;
    if (d.has_mask) {
        after.mask = d.mask & ~bits_between(d.base, d.base, val - 1);
        if (after.mask == 0) {
            conflict_ = true;
            return PruneResult::Conflict;
        }
        after.lb = d.base + std::countr_zero(after.mask);
    }
    return commit(v, d, after);
}

PruneResult Engine::tighten_ub(VarId v, int val) {
    if (conflict_) return PruneResult::Conflict;
    const DomainState& d = vars_[v].dom;
    if (val >= d.ub) return PruneResult::Unchanged;
    if (val < d.lb) {
        conflict_ = true;
        return PruneResult::Conflict;
    }
    DomainState after = d;
    after.ub = val;
    if (d.has_mask) {
        after.mask = d.mask & bits_between(d.base, d.base, val);
        if (after.mask == 0) {
            conflict_ = true;
            return PruneResult::Conflict;
        }
        after.ub = d.base + 63 - std::countl_zero(after.mask);
    }
    return commit(v, d, after);
}

PruneResult Engine::remove_value(VarId v, int val) {
    if (conflict_) return PruneResult::Conflict;
    const DomainState& d = vars_[v].dom;
    if (!d.contains(val)) return PruneResult::Unchanged;
    if (d.fixed()) {
        conflict_ = true;
        return PruneResult::Conflict;
    }
    if (!d.has_mask) {
        if (val == d.lb) return tighten_lb(v, val + 1);
        if (val == d.ub) return tighten_ub(v, val - 1);
        return PruneResult::Unchanged;  // bounds representation cannot hold holes
    }
    DomainState after = d;
    after.mask = d.mask & ~(1ull << (val - d.base));
    assert(after.mask != 0);
    after.lb = d.base + std::countr_zero(after.mask);
    after.ub = d.base + 63 - std::countl_zero(after.mask);
    return commit(v, d, after);
}

PruneResult Engine::assign(VarId v, int val) {
    if (conflict_) return PruneResult::Conflict;
    const DomainState& d = vars_[v].dom;
    if (!d.contains(val)) {
        conflict_ = true;
        return PruneResult::Conflict;
    }
    if (d.fixed()) return PruneResult::Unchanged;
    DomainState after = d;
    after.lb = after.ub = val;
    if (d.has_mask) after.mask = 1ull << (val - d.base);
    return commit(v, d, after);
}

FixResult Engine::propagate_fixpoint() {
    if (conflict_) return FixResult::Conflict;
    while (queue_head_ < queue_.size()) {
        std::size_t at = queue_head_;
        if (rng_) {
            std::uniform_int_distribution<std::size_t> pick(queue_head_, queue_.size() - 1);
            at = pick(*rng_);
            std::swap(queue_[queue_head_], queue_[at]);
            at = queue_head_;
        }
        int p = queue_[at];
        ++queue_head_;
        queued_[p] = 0;
        ++cls_wakeups_[prop_cls_[p]];
        if (!props_[p]->propagate(*this) || conflict_) {
            conflict_ = true;
            clear_queue();
            return FixResult::Conflict;
        }
        if (queue_head_ == queue_.size()) {
            queue_.clear();
            queue_head_ = 0;
        }
    }
    return FixResult::Fixpoint;
}

int Engine::push() {
    level_marks_.push_back(trail_.size());
    return level();
}

void Engine::pop() {
    if (level_marks_.empty()) throw std::logic_error("pop at root level");
    std::size_t mark = level_marks_.back();
    level_marks_.pop_back();
    while (trail_.size() > mark) {
        TrailEntry& e = trail_.back();
        vars_[e.var].dom = e.dom;
        vars_[e.var].saved_at = e.prev_saved_at;
        trail_.pop_back();
    }
    conflict_ = false;
    clear_queue();
}

std::map<std::string, std::uint64_t> Engine::wakeup_counts() const {
    std::map<std::string, std::uint64_t> out;
    for (std::size_t i = 0; i < cls_names_.size(); ++i) out[cls_names_[i]] = cls_wakeups_[i];
    return out;
}

void Engine::reset_wakeup_counts() {
    std::fill(cls_wakeups_.begin(), cls_wakeups_.end(), 0);
}

void Engine::set_shuffle_seed(std::optional<std::uint32_t> seed) {
    if (seed)
        rng_.emplace(*seed);
    else
        rng_.reset();
}

std::string Engine::serialize_domains() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        const DomainState& d = vars_[i].dom;
        os << i << ':' << d.lb << ':' << d.ub;
        if (d.has_mask) os << ':' << d.mask;
        os << ';';
    }
    return os.str();
}

VarId Engine::pick_decision(const std::vector<VarId>& decisions, Branching branching) const {
    VarId best = -1;
    int best_size = 0;
    for (VarId v : decisions) {
        const DomainState& d = vars_[v].dom;
        if (d.fixed()) continue;
        if (branching == Branching::Lex) return v;
        int sz = d.size();
        if (best < 0 || sz < best_size) {
            best = v;
            best_size = sz;
        }
    }
    return best;
}

Verdict Engine::search(const std::vector<VarId>& decisions, Branching branching,
                       const SolveLimits& limits, int depth, SearchStats& stats,
                       std::vector<int>& solution,
                       const std::chrono::steady_clock::time_point& t0) {
    if (propagate_fixpoint() == FixResult::Conflict) {
        if (depth > 0) ++stats.backtracks;
        return Verdict::Unsat;
    }
    VarId var = pick_decision(decisions, branching);
    if (var < 0) {
        // total assignment: verify by a full re-propagation
        requeue_all();
        if (propagate_fixpoint() == FixResult::Conflict)
            throw std::logic_error("solution failed re-propagation");
        solution.clear();
        for (VarId v : decisions) solution.push_back(vars_[v].dom.lb);
        return Verdict::Sat;
    }
    while (true) {
        int val = vars_[var].dom.lb;
        ++stats.nodes;
        if (limits.max_nodes && stats.nodes > limits.max_nodes) return Verdict::Unknown;
        if (limits.max_time_ms && (stats.nodes & 1023) == 0) {
            double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
            if (ms > limits.max_time_ms) return Verdict::Unknown;
        }
        push();
        assign(var, val);
        Verdict r = search(decisions, branching, limits, depth + 1, stats, solution, t0);
        pop();
        if (r != Verdict::Unsat) return r;
        if (remove_value(var, val) == PruneResult::Conflict) return Verdict::Unsat;
    }
}

SolveResult Engine::solve(const std::vector<VarId>& decisions, Branching branching,
                          SolveLimits limits) {
    SolveResult res;
    auto before_wakeups = cls_wakeups_;
    auto t0 = std::chrono::steady_clock::now();
    res.verdict = search(decisions, branching, limits, 0, res.stats, res.assignment, t0);
    res.stats.time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    for (std::size_t i = 0; i < cls_names_.size(); ++i) {
        std::uint64_t prev = i < before_wakeups.size() ? before_wakeups[i] : 0;
        res.stats.wakeups[cls_names_[i]] = cls_wakeups_[i] - prev;
    }
    return res;
}

}  // namespace halldec
