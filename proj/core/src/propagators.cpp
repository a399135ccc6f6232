#include "halldec/propagators.hpp"

#include <algorithm>
#include <cstdlib>

namespace halldec {

namespace {

#define CHECK(op)                                   \
    do {                                            \
        if ((op) == PruneResult::Conflict) return false; \
    } while (0)

class ChannelInterval final : public Propagator {
public:
    ChannelInterval(VarId a, VarId x, int l, int u) : a_(a), x_(x), l_(l), u_(u) {}
    const char* cls() const override { return "channel_interval"; }

    bool propagate(Engine& e) override {
        const DomainState& a = e.dom(a_);
        if (a.fixed()) {
            if (a.lb == 1) {
                CHECK(e.tighten_lb(x_, l_));
                CHECK(e.tighten_ub(x_, u_));
            } else {
                if (!remove_interval(e)) return false;
            }
        }
        const DomainState& x = e.dom(x_);
        if (!intersects(x)) {
            CHECK(e.assign(a_, 0));
        } else if (x.lb >= l_ && x.ub <= u_) {
            CHECK(e.assign(a_, 1));
        }
        return true;
    }

private:
    bool intersects(const DomainState& x) const {
        if (x.ub < l_ || x.lb > u_) return false;
        if (!x.has_mask) return true;
        for (int v = std::max(l_, x.lb); v <= std::min(u_, x.ub); ++v)
            if (x.contains(v)) return true;
        return false;
    }

    bool remove_interval(Engine& e) {
        const DomainState& x = e.dom(x_);
        if (x.lb >= l_ && x.ub <= u_) return e.fail();
        if (x.has_mask) {
            int from = std::max(l_, x.lb);
            int to = std::min(u_, x.ub);
            for (int v = from; v <= to; ++v) CHECK(e.remove_value(x_, v));
        } else {
            if (x.lb >= l_ && x.lb <= u_) CHECK(e.tighten_lb(x_, u_ + 1));
            else if (x.ub >= l_ && x.ub <= u_) CHECK(e.tighten_ub(x_, l_ - 1));
        }
        return true;
    }

    VarId a_, x_;
    int l_, u_;
};

class ChannelBound final : public Propagator {
public:
    ChannelBound(VarId b, VarId x, int l) : b_(b), x_(x), l_(l) {}
    const char* cls() const override { return "channel_bound"; }

    bool propagate(Engine& e) override {
        const DomainState& b = e.dom(b_);
        if (b.fixed()) {
            if (b.lb == 1) CHECK(e.tighten_ub(x_, l_));
            else CHECK(e.tighten_lb(x_, l_ + 1));
        }
        const DomainState& x = e.dom(x_);
        if (x.ub <= l_) CHECK(e.assign(b_, 1));
        else if (x.lb > l_) CHECK(e.assign(b_, 0));
        return true;
    }

private:
    VarId b_, x_;
    int l_;
};

class ChannelConj final : public Propagator {
public:
    ChannelConj(VarId a, VarId lo, VarId hi) : a_(a), lo_(lo), hi_(hi) {}
    const char* cls() const override { return "channel_conj"; }

    bool propagate(Engine& e) override {
        // a <=> (!lo && hi)
        if (e.dom(a_).fixed() && e.dom(a_).lb == 1) {
            CHECK(e.assign(lo_, 0));
            CHECK(e.assign(hi_, 1));
            return true;
        }
        const DomainState& lo = e.dom(lo_);
        const DomainState& hi = e.dom(hi_);
        if ((lo.fixed() && lo.lb == 1) || (hi.fixed() && hi.ub == 0)) {
            CHECK(e.assign(a_, 0));
        } else if (lo.fixed() && hi.fixed()) {  // lo=0, hi=1 here
            CHECK(e.assign(a_, 1));
        }
        if (e.dom(a_).fixed() && e.dom(a_).ub == 0) {
            if (e.dom(lo_).fixed() && e.dom(lo_).lb == 0) CHECK(e.assign(hi_, 0));
            if (e.dom(hi_).fixed() && e.dom(hi_).lb == 1) CHECK(e.assign(lo_, 1));
        }
        return true;
    }

private:
    VarId a_, lo_, hi_;
};

class SumBool final : public Propagator {
public:
    enum class Mode { Leq, Eq, CountVar };
    SumBool(std::vector<VarId> as, Mode mode, int rhs, VarId n)
        : as_(std::move(as)), mode_(mode), rhs_(rhs), n_(n) {}
    const char* cls() const override { return "sum_bool"; }

    bool propagate(Engine& e) override {
        int sum_lb = 0, sum_ub = 0;
        for (VarId a : as_) {
            sum_lb += e.dom(a).lb;
            sum_ub += e.dom(a).ub;
        }
        int lo = 0, hi = 0;
        switch (mode_) {
            case Mode::Leq:
                lo = 0;
                hi = rhs_;
                break;
            case Mode::Eq:
                lo = hi = rhs_;
                break;
            case Mode::CountVar:
                CHECK(e.tighten_lb(n_, sum_lb));
                CHECK(e.tighten_ub(n_, sum_ub));
                lo = e.dom(n_).lb;
                hi = e.dom(n_).ub;
                break;
        }
        if (sum_lb > hi || sum_ub < lo) return e.fail();
        if (sum_lb == hi) {
            for (VarId a : as_)
                if (!e.dom(a).fixed()) CHECK(e.assign(a, 0));
        } else if (sum_ub == lo) {
            for (VarId a : as_)
                if (!e.dom(a).fixed()) CHECK(e.assign(a, 1));
        }
        return true;
    }

private:
    std::vector<VarId> as_;
    Mode mode_;
    int rhs_;
    VarId n_;
};

class Triangle final : public Propagator {
public:
    Triangle(VarId t, VarId a, VarId b) : t_(t), a_(a), b_(b) {}
    const char* cls() const override { return "triangle"; }

    bool propagate(Engine& e) override {
        CHECK(e.tighten_lb(t_, e.dom(a_).lb + e.dom(b_).lb));
        CHECK(e.tighten_ub(t_, e.dom(a_).ub + e.dom(b_).ub));
        CHECK(e.tighten_lb(a_, e.dom(t_).lb - e.dom(b_).ub));
        CHECK(e.tighten_ub(a_, e.dom(t_).ub - e.dom(b_).lb));
        CHECK(e.tighten_lb(b_, e.dom(t_).lb - e.dom(a_).ub));
        CHECK(e.tighten_ub(b_, e.dom(t_).ub - e.dom(a_).lb));
        return true;
    }

private:
    VarId t_, a_, b_;
};

class NotEqual final : public Propagator {
public:
    NotEqual(VarId x, VarId y) : x_(x), y_(y) {}
    const char* cls() const override { return "not_equal"; }

    bool propagate(Engine& e) override {
        if (e.dom(x_).fixed()) CHECK(e.remove_value(y_, e.dom(x_).lb));
        if (e.dom(y_).fixed()) CHECK(e.remove_value(x_, e.dom(y_).lb));
        return true;
    }

private:
    VarId x_, y_;
};

class AbsDiff final : public Propagator {
public:
    AbsDiff(VarId d, VarId x, VarId y) : d_(d), x_(x), y_(y) {}
    const char* cls() const override { return "abs_diff"; }

    bool propagate(Engine& e) override {
        bool changed = true;
        while (changed) {
            changed = false;
            if (!shrink(e, d_, [&](int v) { return sup_d(e, v); }, changed)) return false;
            if (!shrink(e, x_, [&](int v) { return sup_xy(e, v, y_); }, changed)) return false;
            if (!shrink(e, y_, [&](int v) { return sup_xy(e, v, x_); }, changed)) return false;
        }
        return true;
    }

private:
    bool sup_d(Engine& e, int dv) const {
        const DomainState& x = e.dom(x_);
        const DomainState& y = e.dom(y_);
        for (int xv = x.lb; xv <= x.ub; ++xv)
            if ((xv - dv >= y.lb && xv - dv <= y.ub) || (xv + dv >= y.lb && xv + dv <= y.ub))
                return true;
        return false;
    }
    // support for this_var = v against other and d ranges
    bool sup_xy(Engine& e, int v, VarId other) const {
        const DomainState& o = e.dom(other);
        const DomainState& d = e.dom(d_);
        for (int ov = o.lb; ov <= o.ub; ++ov) {
            int diff = std::abs(v - ov);
            if (diff >= d.lb && diff <= d.ub) return true;
        }
        return false;
    }
    template <class Sup>
    bool shrink(Engine& e, VarId v, Sup sup, bool& changed) {
        while (!sup(e.dom(v).lb)) {
            if (e.tighten_lb(v, e.dom(v).lb + 1) == PruneResult::Conflict) return false;
            changed = true;
        }
        while (!sup(e.dom(v).ub)) {
            if (e.tighten_ub(v, e.dom(v).ub - 1) == PruneResult::Conflict) return false;
            changed = true;
        }
        return true;
    }

    VarId d_, x_, y_;
};

#undef CHECK

}  // namespace

int post_channel_interval(Engine& e, VarId a, VarId x, int l, int u) {
    int p = e.post(std::make_unique<ChannelInterval>(a, x, l, u));
    e.subscribe(p, a, EventKind::OnFixed);
    e.subscribe(p, x, EventKind::OnIntervalTouch, l, u);
    return p;
}

int post_channel_bound(Engine& e, VarId b, VarId x, int l) {
    int p = e.post(std::make_unique<ChannelBound>(b, x, l));
    e.subscribe(p, b, EventKind::OnFixed);
    e.subscribe(p, x, EventKind::OnBounds);
    return p;
}

int post_channel_conj(Engine& e, VarId a, VarId b_lo, VarId b_hi) {
    int p = e.post(std::make_unique<ChannelConj>(a, b_lo, b_hi));
    e.subscribe(p, a, EventKind::OnFixed);
    e.subscribe(p, b_lo, EventKind::OnFixed);
    e.subscribe(p, b_hi, EventKind::OnFixed);
    return p;
}

namespace {
int post_sum(Engine& e, std::vector<VarId> as, SumBool::Mode mode, int rhs, VarId n) {
    std::vector<VarId> copy = as;
    int p = e.post(std::make_unique<SumBool>(std::move(copy), mode, rhs, n));
    for (VarId a : as) e.subscribe(p, a, EventKind::OnFixed);
    if (n >= 0) e.subscribe(p, n, EventKind::OnBounds);
    return p;
}
}  // namespace

int post_sum_leq(Engine& e, std::vector<VarId> as, int cap) {
    return post_sum(e, std::move(as), SumBool::Mode::Leq, cap, -1);
}

int post_sum_eq(Engine& e, std::vector<VarId> as, int total) {
    return post_sum(e, std::move(as), SumBool::Mode::Eq, total, -1);
}

int post_sum_count(Engine& e, std::vector<VarId> as, VarId n) {
    return post_sum(e, std::move(as), SumBool::Mode::CountVar, 0, n);
}

int post_triangle(Engine& e, VarId n_tot, VarId n_left, VarId n_right) {
    int p = e.post(std::make_unique<Triangle>(n_tot, n_left, n_right));
    e.subscribe(p, n_tot, EventKind::OnBounds);
    e.subscribe(p, n_left, EventKind::OnBounds);
    e.subscribe(p, n_right, EventKind::OnBounds);
    return p;
}

int post_not_equal(Engine& e, VarId x, VarId y) {
    int p = e.post(std::make_unique<NotEqual>(x, y));
    e.subscribe(p, x, EventKind::OnFixed);
    e.subscribe(p, y, EventKind::OnFixed);
    return p;
}

int post_abs_diff(Engine& e, VarId diff, VarId x, VarId y) {
    int p = e.post(std::make_unique<AbsDiff>(diff, x, y));
    e.subscribe(p, diff, EventKind::OnBounds);
    e.subscribe(p, x, EventKind::OnBounds);
    e.subscribe(p, y, EventKind::OnBounds);
    return p;
}

}  // namespace halldec
