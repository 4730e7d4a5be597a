#pragma once

#include <vector>

#include "qsym/errors.hpp"

namespace qsym {

// Closed integer interval of chain sites. hi < lo encodes the empty interval
// (used for the support of scalar operators).
struct Interval {
    int lo = 0;
    int hi = -1;

    Interval() = default;
    Interval(int l, int h) : lo(l), hi(h) {}
    static Interval empty() { return Interval(0, -1); }

    bool is_empty() const { return hi < lo; }
    int size() const { return is_empty() ? 0 : hi - lo + 1; }
    bool contains(int s) const { return s >= lo && s <= hi; }
    bool contains(const Interval& o) const { return o.is_empty() || (o.lo >= lo && o.hi <= hi); }
    bool intersects(const Interval& o) const {
        return !is_empty() && !o.is_empty() && lo <= o.hi && o.lo <= hi;
    }
    Interval unite(const Interval& o) const {
        if (is_empty()) return o;
        if (o.is_empty()) return *this;
        return Interval(std::min(lo, o.lo), std::max(hi, o.hi));
    }
    Interval fatten(int r) const { return is_empty() ? *this : Interval(lo - r, hi + r); }
    Interval clip(const Interval& o) const {
        return Interval(std::max(lo, o.lo), std::min(hi, o.hi));
    }
    bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

// Finite chain with per-site local dimensions. Each site may carry several
// tensor factors (ancillas stacked by the upgrade constructions); the site
// dimension is the product, ordered left to right.
struct ChainSpec {
    int lo = 0;
    int hi = -1;
    std::vector<std::vector<int>> factors;  // factors[site - lo]
    long long dim_cap = 1 << 18;

    static ChainSpec uniform(int lo, int hi, int d) {
        ChainSpec c;
        c.lo = lo;
        c.hi = hi;
        c.factors.assign(static_cast<size_t>(hi - lo + 1), {d});
        return c;
    }

    Interval sites() const { return Interval(lo, hi); }
    int num_sites() const { return hi - lo + 1; }

    const std::vector<int>& site_factors(int s) const { return factors[static_cast<size_t>(s - lo)]; }

    int dim(int s) const {
        int d = 1;
        for (int f : site_factors(s)) d *= f;
        return d;
    }

    long long window_dim(const Interval& w) const {
        long long d = 1;
        for (int s = w.lo; s <= w.hi; ++s) {
            d *= dim(s);
            if (d > dim_cap) return d;
        }
        return d;
    }

    void check_window(const Interval& w) const {
        if (!sites().contains(w))
            throw PreconditionError("chain: window [" + std::to_string(w.lo) + "," +
                                    std::to_string(w.hi) + "] exceeds chain [" + std::to_string(lo) +
                                    "," + std::to_string(hi) + "]");
        if (window_dim(w) > dim_cap)
            throw CapExceededError("chain: window dimension exceeds cap");
    }

    std::vector<int> window_dims(const Interval& w) const {
        std::vector<int> d;
        for (int s = w.lo; s <= w.hi; ++s) d.push_back(dim(s));
        return d;
    }

    // New chain with an extra dimension-d factor appended at `site`.
    ChainSpec with_ancilla(int site, int d) const {
        ChainSpec c = *this;
        c.factors[static_cast<size_t>(site - lo)].push_back(d);
        return c;
    }
};

}  // namespace qsym
